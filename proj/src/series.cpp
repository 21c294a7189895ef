#include "wseries/series.hpp"

#include <functional>

#include "wseries/errors.hpp"

namespace wseries {

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

BigReal from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

void require_alpha_one(const SeriesVariables& vars, const char* which) {
    if (vars.alpha != BigReal(1L, vars.alpha.precision()))
        throw DomainError(std::string("series ") + which +
                          " requires alpha = 1 (use phi_via_w or 2a for general alpha)");
}

const BigReal& require_ltau(const SeriesVariables& vars, const char* which) {
    if (!vars.Ltau)
        throw DomainError(std::string("series ") + which +
                          " requires tau < 1 (Ltau undefined for this x, alpha)");
    return *vars.Ltau;
}

// Shared partial-sum loop: value = leading + scale * sum_{k=1}^{terms} term(k).
// Stops early once |term(k)| < tol (tol > 0); tail_estimate is the first
// omitted term when the table still covers it.
TruncatedEvaluation accumulate(const BigReal& leading, const BigReal& scale,
                               const std::function<BigReal(int)>& term, int N,
                               const BigReal& tol, mpfr_prec_t prec) {
    const mpfr_prec_t wp = leading.precision();
    const BigReal zero(0L, wp);
    TruncatedEvaluation out;
    out.last_term = zero.round_to(prec);
    out.tail_estimate = zero.round_to(prec);
    BigReal sum = zero;
    const bool use_tol = tol.sign() > 0;
    int k = 0;
    for (k = 1; k <= N; ++k) {
        BigReal t = term(k);
        BigReal mag = abs(t);
        sum += t;
        out.term_trace.push_back(mag.round_to(prec));
        out.terms_used = k;
        out.last_term = mag.round_to(prec);
        if (use_tol && mag < tol) {
            out.converged = true;
            break;
        }
    }
    int next = out.terms_used + 1;
    try {
        out.tail_estimate = abs(term(next)).round_to(prec);
    } catch (const CapacityError&) {
        out.tail_estimate = out.last_term;
    }
    out.correction = (scale * sum).round_to(prec);
    out.value = (leading + scale * sum).round_to(prec);
    return out;
}

} // namespace

const char* to_string(Series s) {
    switch (s) {
        case Series::S2a: return "2a";
        case Series::S2d: return "2d";
        case Series::S3a: return "3a";
        case Series::S4a: return "4a";
        case Series::S4c: return "4c";
    }
    return "?";
}

Series series_from_string(const std::string& name) {
    if (name == "2a") return Series::S2a;
    if (name == "2d") return Series::S2d;
    if (name == "3a") return Series::S3a;
    if (name == "4a") return Series::S4a;
    if (name == "4c") return Series::S4c;
    throw UsageError("unknown series selector: " + name);
}

SeriesVariables variables_from(const BigReal& x, const BigReal& alpha,
                               mpfr_prec_t precision) {
    const BigReal one(1L, precision);
    SeriesVariables v;
    v.precision_bits = precision;
    v.x = x.round_to(precision);
    v.alpha = alpha.round_to(precision);
    if (v.alpha.sign() <= 0)
        throw DomainError("variables_from: alpha must be positive");
    if (v.x <= one)
        throw DomainError("variables_from: L1 must be positive (x > 1 required)");
    v.L1 = ln(v.x);
    v.L2 = ln(v.L1);
    v.sigma = v.alpha / v.L1;
    v.tau = v.alpha * v.L2 / v.L1;
    v.zeta = one / (one + v.sigma);
    if (v.tau < one) {
        v.Ltau = log1p(-v.tau);
        v.eta = v.sigma / (one - v.tau);
    }
    return v;
}

TruncatedEvaluation eval_2a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables) {
    if (N < 0) throw UsageError("eval_2a: N must be nonnegative");
    const mpfr_prec_t wp = vars.precision_bits + kGuardBits;
    const BigReal alpha = vars.alpha.round_to(wp);
    const BigReal L1 = vars.L1.round_to(wp);
    const BigReal L2 = vars.L2.round_to(wp);
    const BigReal sigma = alpha / L1;

    std::vector<BigReal> l2_over_mfact{BigReal(1L, wp)}; // L2^m/m!
    auto term = [&](int n) {
        while (static_cast<int>(l2_over_mfact.size()) <= n) {
            int j = static_cast<int>(l2_over_mfact.size());
            l2_over_mfact.push_back(l2_over_mfact.back() * L2 /
                                    BigReal(static_cast<long>(j), wp));
        }
        BigReal inner(0L, wp);
        for (int m = 1; m <= n; ++m) {
            BigReal t = from_mpz(tables.cycle.value(n, n - m + 1), wp) * l2_over_mfact[static_cast<size_t>(m)];
            if ((n + m) & 1) inner -= t;
            else inner += t;
        }
        return pow_si(sigma, n) * inner;
    };
    return accumulate(L1 - alpha * L2, alpha, term, N, tol, vars.precision_bits);
}

TruncatedEvaluation eval_2d(const BigReal& sigma, const BigReal& tau, int N,
                            const BigReal& tol, const StirlingTables& tables) {
    if (N < 0) throw UsageError("eval_2d: N must be nonnegative");
    const mpfr_prec_t prec = sigma.precision() > tau.precision() ? sigma.precision()
                                                                 : tau.precision();
    const mpfr_prec_t wp = prec + kGuardBits;
    const BigReal s = sigma.round_to(wp);
    const BigReal t = tau.round_to(wp);

    std::vector<BigReal> tau_over_mfact{BigReal(1L, wp)}; // tau^m/m!
    auto term = [&](int k) {
        // total order k = l + m, m >= 1
        while (static_cast<int>(tau_over_mfact.size()) <= k) {
            int m = static_cast<int>(tau_over_mfact.size());
            tau_over_mfact.push_back(tau_over_mfact.back() * t /
                                     BigReal(static_cast<long>(m), wp));
        }
        BigReal acc(0L, wp);
        for (int m = 1; m <= k; ++m) {
            int l = k - m;
            BigReal piece = tau_over_mfact[static_cast<size_t>(m)] *
                            from_mpz(tables.cycle.value(k, l + 1), wp) * pow_si(s, l);
            if (l & 1) acc -= piece;
            else acc += piece;
        }
        return acc;
    };
    return accumulate(BigReal(0L, wp), BigReal(1L, wp), term, N, tol, prec);
}

TruncatedEvaluation eval_2d(const BigReal& sigma, const BigReal& tau, int N,
                            const StirlingTables& tables) {
    return eval_2d(sigma, tau, N, BigReal(0L, sigma.precision()), tables);
}

TruncatedEvaluation eval_3a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables) {
    if (N < 0) throw UsageError("eval_3a: N must be nonnegative");
    require_alpha_one(vars, "3a");
    const mpfr_prec_t wp = vars.precision_bits + kGuardBits;
    const BigReal L1 = vars.L1.round_to(wp);
    const BigReal L2 = vars.L2.round_to(wp);
    const BigReal tau = vars.tau.round_to(wp);
    const BigReal zeta = vars.zeta.round_to(wp);

    std::vector<BigReal> tau_over_mfact{BigReal(1L, wp)};
    auto term = [&](int m) {
        while (static_cast<int>(tau_over_mfact.size()) <= m) {
            int j = static_cast<int>(tau_over_mfact.size());
            tau_over_mfact.push_back(tau_over_mfact.back() * tau /
                                     BigReal(static_cast<long>(j), wp));
        }
        BigReal inner(0L, wp);
        BigReal zpow = pow_si(zeta, m); // zeta^{p+m} starting at p=0
        for (int p = 0; p <= m - 1; ++p) {
            BigReal piece = from_mpz(tables.assoc2.value(p + m - 1, p), wp) * zpow;
            if ((p + m - 1) & 1) inner -= piece;
            else inner += piece;
            zpow *= zeta;
        }
        return tau_over_mfact[static_cast<size_t>(m)] * inner;
    };
    return accumulate(L1 - L2, BigReal(1L, wp), term, N, tol, vars.precision_bits);
}

TruncatedEvaluation eval_4a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables) {
    if (N < 0) throw UsageError("eval_4a: N must be nonnegative");
    require_alpha_one(vars, "4a");
    const BigReal& ltau_in = require_ltau(vars, "4a");
    const mpfr_prec_t wp = vars.precision_bits + kGuardBits;
    const BigReal L1 = vars.L1.round_to(wp);
    const BigReal L2 = vars.L2.round_to(wp);
    const BigReal Ltau = ltau_in.round_to(wp);
    const BigReal eta = vars.eta->round_to(wp);

    std::vector<BigReal> ltau_over_mfact{BigReal(1L, wp)}; // Ltau^m/m!
    auto term = [&](int n) {
        while (static_cast<int>(ltau_over_mfact.size()) <= n) {
            int j = static_cast<int>(ltau_over_mfact.size());
            ltau_over_mfact.push_back(ltau_over_mfact.back() * Ltau /
                                      BigReal(static_cast<long>(j), wp));
        }
        BigReal inner(0L, wp);
        for (int m = 1; m <= n; ++m) {
            BigReal piece = from_mpz(tables.cycle.value(n, n - m + 1), wp) *
                            ltau_over_mfact[static_cast<size_t>(m)];
            if ((m + 1) & 1) inner -= piece;
            else inner += piece;
        }
        return pow_si(-eta, n) * inner;
    };
    return accumulate(L1 - L2 - Ltau, BigReal(-1L, wp), term, N, tol,
                      vars.precision_bits);
}

TruncatedEvaluation eval_4c(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables) {
    if (N < 0) throw UsageError("eval_4c: N must be nonnegative");
    require_alpha_one(vars, "4c");
    const BigReal& ltau_in = require_ltau(vars, "4c");
    const mpfr_prec_t wp = vars.precision_bits + kGuardBits;
    const BigReal L1 = vars.L1.round_to(wp);
    const BigReal L2 = vars.L2.round_to(wp);
    const BigReal Ltau = ltau_in.round_to(wp);
    const BigReal eta = vars.eta->round_to(wp);
    const BigReal inv1pe = BigReal(1L, wp) / (BigReal(1L, wp) + eta);
    const BigReal le = Ltau * eta;

    std::vector<BigReal> le_over_mfact{BigReal(1L, wp)}; // (Ltau eta)^m/m!
    auto term = [&](int m) {
        while (static_cast<int>(le_over_mfact.size()) <= m) {
            int j = static_cast<int>(le_over_mfact.size());
            le_over_mfact.push_back(le_over_mfact.back() * le /
                                    BigReal(static_cast<long>(j), wp));
        }
        BigReal inner(0L, wp);
        BigReal ipow = pow_si(inv1pe, m); // (1+eta)^{-(p+m)} starting at p=0
        for (int p = 0; p <= m - 1; ++p) {
            BigReal piece = from_mpz(tables.assoc2.value(p + m - 1, p), wp) * ipow;
            if ((p + m - 1) & 1) inner -= piece;
            else inner += piece;
            ipow *= inv1pe;
        }
        return le_over_mfact[static_cast<size_t>(m)] * inner;
    };
    return accumulate(L1 - L2 - Ltau, BigReal(1L, wp), term, N, tol,
                      vars.precision_bits);
}

TruncatedEvaluation eval_series(Series s, const SeriesVariables& vars, int N,
                                const BigReal& tol, const StirlingTables& tables) {
    switch (s) {
        case Series::S2a: return eval_2a(vars, N, tol, tables);
        case Series::S2d: {
            TruncatedEvaluation w = eval_2d(vars.sigma, vars.tau, N, tol, tables);
            const mpfr_prec_t prec = vars.precision_bits;
            TruncatedEvaluation out = w;
            out.correction = (vars.alpha * w.correction).round_to(prec);
            out.value = (vars.L1 - vars.alpha * vars.L2 + vars.alpha * w.value)
                            .round_to(prec);
            return out;
        }
        case Series::S3a: return eval_3a(vars, N, tol, tables);
        case Series::S4a: return eval_4a(vars, N, tol, tables);
        case Series::S4c: return eval_4c(vars, N, tol, tables);
    }
    throw UsageError("eval_series: bad selector");
}

TruncatedEvaluation phi_via_w(const BigReal& x, const BigReal& alpha, int N,
                              Series method, const BigReal& tol,
                              const StirlingTables& tables, mpfr_prec_t precision) {
    if (method != Series::S3a && method != Series::S4c)
        throw UsageError("phi_via_w: method must be 3a or 4c");
    if (alpha.sign() <= 0) throw DomainError("phi_via_w: alpha must be positive");
    const mpfr_prec_t wp = precision + kGuardBits;
    BigReal xw = x.round_to(wp);
    BigReal aw = alpha.round_to(wp);
    if (xw.sign() <= 0) throw DomainError("phi_via_w: x must be positive");
    BigReal xt = (exp(ln(xw) / aw) / aw).round_to(precision);
    if (xt < BigReal(2L, precision))
        throw DomainError("phi_via_w: transformed argument x^{1/alpha}/alpha = " +
                          xt.to_string(12) + " is below the series domain [2, inf)");
    SeriesVariables vt = variables_from(xt, BigReal(1L, precision), precision);
    TruncatedEvaluation w = method == Series::S3a ? eval_3a(vt, N, tol, tables)
                                                  : eval_4c(vt, N, tol, tables);
    BigReal ap = alpha.round_to(precision);
    TruncatedEvaluation out = w;
    out.value = ap * w.value;
    out.correction = ap * w.correction;
    out.last_term = ap * w.last_term;
    out.tail_estimate = ap * w.tail_estimate;
    return out;
}

BigReal solve_w_sigma_tau(const BigReal& sigma, const BigReal& tau,
                          mpfr_prec_t precision) {
    if (sigma.sign() <= 0)
        throw DomainError("solve_w_sigma_tau: sigma must be positive");
    const mpfr_prec_t wp = precision + 48;
    const BigReal zero(0L, wp), one(1L, wp), two(2L, wp);
    const BigReal s = sigma.round_to(wp), t = tau.round_to(wp);
    if (t.is_zero()) return BigReal(0L, precision);

    auto h = [&](const BigReal& w) { return -expm1(-w) + s * w - t; };
    auto hp = [&](const BigReal& w) { return exp(-w) + s; };

    BigReal lo(wp), hi(wp);
    if (t > zero) {
        lo = zero;
        hi = one;
        while (h(hi) <= zero) hi *= two;
    } else {
        hi = zero;
        lo = -one;
        while (h(lo) >= zero) lo *= two;
    }
    for (int i = 0; i < 40; ++i) {
        BigReal mid = (lo + hi) / two;
        if (h(mid) < zero) lo = mid;
        else hi = mid;
    }
    BigReal w = (lo + hi) / two;
    const BigReal eps = BigReal::pow2(-(wp - 4), wp);
    for (int i = 0; i < 200; ++i) {
        BigReal hv = h(w);
        if (hv.is_zero()) break;
        BigReal d = hv / hp(w);
        BigReal w_next = w - d;
        if (w_next <= lo || w_next >= hi) w_next = (lo + hi) / two;
        if (hv < zero) lo = w;
        else hi = w;
        w = w_next;
        BigReal scale = abs(w) > one ? abs(w) : one;
        if (abs(d) <= eps * scale) break;
        if (i == 199)
            throw SolverError("solve_w_sigma_tau: no convergence, last |d|=" +
                              abs(d).to_string(6));
    }
    return w.round_to(precision);
}

BigReal identity_4d_residual(const BigReal& sigma, const BigReal& tau,
                             mpfr_prec_t precision) {
    const mpfr_prec_t wp = precision + 48;
    const BigReal one(1L, wp);
    const BigReal s = sigma.round_to(wp), t = tau.round_to(wp);
    if (t >= one) throw DomainError("identity_4d_residual: tau must be < 1");
    BigReal w1 = solve_w_sigma_tau(s, t, wp);
    BigReal lt = log1p(-t);
    BigReal s2 = s / (one - t);
    BigReal t2 = s * lt / (one - t);
    BigReal w2 = solve_w_sigma_tau(s2, t2, wp);
    return abs(w1 - (-lt + w2)).round_to(precision);
}

} // namespace wseries
