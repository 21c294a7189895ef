#include "wseries/ratseries.hpp"

#include "wseries/errors.hpp"

namespace wseries {

RatSeries RatSeries::one(int order) {
    RatSeries s(order);
    s[0] = 1;
    return s;
}

RatSeries RatSeries::log1p(int order) {
    RatSeries s(order);
    int sign = 1;
    for (int n = 1; n <= order; ++n) {
        s[n] = mpq_class(sign, n);
        sign = -sign;
    }
    return s;
}

RatSeries RatSeries::expm1(int order) {
    RatSeries s(order);
    mpz_class fact = 1;
    for (int n = 1; n <= order; ++n) {
        fact *= n;
        s[n] = mpq_class(mpz_class(1), fact);
    }
    return s;
}

RatSeries RatSeries::expm1_minus_z(int order) {
    RatSeries s = expm1(order);
    if (order >= 1) s[1] = 0;
    return s;
}

RatSeries RatSeries::mul(const RatSeries& other) const {
    int order = this->order();
    RatSeries r(order);
    for (int i = 0; i <= order; ++i) {
        if ((*this)[i] == 0) continue;
        for (int j = 0; i + j <= order; ++j) {
            if (other[j] == 0) continue;
            r[i + j] += (*this)[i] * other[j];
        }
    }
    return r;
}

RatSeries RatSeries::pow(int m) const {
    RatSeries r = one(order());
    RatSeries base = *this;
    while (m > 0) {
        if (m & 1) r = r.mul(base);
        m >>= 1;
        if (m) base = base.mul(base);
    }
    return r;
}

RatSeries RatSeries::revert(const RatSeries& f) {
    const int order = f.order();
    if (f[0] != 0 || f[1] == 0)
        throw UsageError("revert requires f(0)=0 and f'(0)!=0");
    RatSeries g(order);
    g[1] = 1 / f[1];
    for (int k = 2; k <= order; ++k) {
        // coefficient of v^k in f(g) with g known below order k must vanish
        RatSeries gk = g; // g truncated below k (g[k..] still zero)
        RatSeries comp(order);
        RatSeries p = one(order);
        for (int j = 1; j <= k; ++j) {
            p = p.mul(gk);
            if (f[j] == 0) continue;
            for (int i = 0; i <= k; ++i) comp[i] += f[j] * p[i];
        }
        g[k] = -comp[k] / f[1];
    }
    return g;
}

} // namespace wseries
