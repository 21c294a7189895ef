#pragma once

#include <gmpxx.h>

#include <vector>

namespace wseries {

/*
 * Truncated power series with exact rational coefficients, c[0..order].
 * All operations truncate at the common order. Used as the ground-truth
 * route for generating-function checks and series reversion.
 */
class RatSeries {
public:
    explicit RatSeries(int order) : c_(static_cast<size_t>(order) + 1, mpq_class(0)) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const mpq_class& operator[](int n) const { return c_[static_cast<size_t>(n)]; }
    mpq_class& operator[](int n) { return c_[static_cast<size_t>(n)]; }

    static RatSeries one(int order);
    // ln(1+z)
    static RatSeries log1p(int order);
    // e^z - 1
    static RatSeries expm1(int order);
    // e^z - 1 - z
    static RatSeries expm1_minus_z(int order);

    RatSeries mul(const RatSeries& other) const;
    RatSeries pow(int m) const;

    // Compositional inverse: given f with f[0]=0, f[1]!=0, returns g with
    // f(g(v)) = v + O(v^{order+1}).
    static RatSeries revert(const RatSeries& f);

private:
    std::vector<mpq_class> c_;
};

} // namespace wseries
