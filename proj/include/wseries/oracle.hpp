#pragma once

#include <vector>

#include "wseries/bigreal.hpp"

namespace wseries {

// Result of an iterative solve of y^alpha e^y = x.
struct SolveReport {
    BigReal root;
    int iterations = 0;
    BigReal residual;       // |y^alpha e^y - x| / x
    mpfr_prec_t precision_bits = 0;
};

// Principal-branch Lambert W: root of y e^y = x with y >= 0 for x >= 0.
SolveReport solve_w(const BigReal& x, mpfr_prec_t precision);

// Unique positive root of alpha ln y + y = ln x. For alpha < 0 the root on
// the branch y > -alpha, which exists iff x > e^{-alpha} (-alpha)^alpha.
SolveReport solve_phi(const BigReal& x, const BigReal& alpha, mpfr_prec_t precision);

// First k Taylor coefficients of W about x = e, computed by exact series
// reversion of y e^y about y = 1 (coefficients are rationals times e^{-j}).
std::vector<BigReal> taylor_coeffs_at_e(int k, mpfr_prec_t precision);

} // namespace wseries
