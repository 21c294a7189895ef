#include "wseries/oracle.hpp"

#include <sstream>

#include "wseries/errors.hpp"
#include "wseries/ratseries.hpp"

namespace wseries {

namespace {

constexpr mpfr_prec_t kGuardBits = 48;
constexpr int kMaxIterations = 200;

// g(y) = alpha ln y + y - lx, strictly increasing on the solved branch.
BigReal eval_g(const BigReal& y, const BigReal& alpha, const BigReal& lx) {
    return alpha * ln(y) + y - lx;
}

// Solves g(y) = 0 on (branch_lo, +inf) by bracketing bisection followed by
// Halley refinement, all at the precision of lx.
BigReal solve_log_form(const BigReal& lx, const BigReal& alpha,
                       const BigReal& branch_lo, int& iterations) {
    const mpfr_prec_t wp = lx.precision();
    const BigReal zero(0L, wp), one(1L, wp), two(2L, wp);

    // Bracket [lo, hi] with g(lo) < 0 <= g(hi).
    BigReal lo(wp), hi(wp);
    if (branch_lo.is_zero()) {
        hi = one;
        if (lx > zero) hi = lx + one;
        while (eval_g(hi, alpha, lx) < zero) hi *= two;
        lo = hi / two;
        while (eval_g(lo, alpha, lx) >= zero) lo /= two;
    } else {
        BigReal step = one / BigReal(1024L, wp);
        lo = branch_lo * (one + step);
        while (eval_g(lo, alpha, lx) >= zero) {
            step /= two;
            if (step < BigReal::pow2(-(wp - 8), wp))
                throw SolverError("solve_phi: cannot bracket root above branch point");
            lo = branch_lo * (one + step);
        }
        BigReal d = one;
        hi = branch_lo + d;
        while (eval_g(hi, alpha, lx) < zero) {
            d *= two;
            hi = branch_lo + d;
        }
    }

    iterations = 0;
    for (int i = 0; i < 40; ++i) {
        BigReal mid = (lo + hi) / two;
        if (eval_g(mid, alpha, lx) < zero) lo = mid;
        else hi = mid;
        ++iterations;
    }

    BigReal y = (lo + hi) / two;
    const BigReal eps = BigReal::pow2(-(wp - 4), wp);
    std::ostringstream trace;
    for (int i = 0; i < kMaxIterations; ++i) {
        BigReal g = eval_g(y, alpha, lx);
        ++iterations;
        if (g.is_zero()) return y;
        BigReal gp = alpha / y + one;
        BigReal gpp = -alpha / (y * y);
        BigReal newton = g / gp;
        BigReal denom = one - newton * gpp / (two * gp);
        BigReal d = newton / denom;
        BigReal y_next = y - d;
        // keep iterates inside the bracket; the violated edge is the best
        // known bound on that side, so project onto it rather than bisecting
        if (y_next <= lo) y_next = lo;
        else if (y_next >= hi) y_next = hi;
        if (g < zero) lo = y;
        else hi = y;
        trace << "|d|=" << abs(d).to_string(6) << " ";
        if (abs(d) <= eps * abs(y)) return y_next;
        y = y_next;
    }
    throw SolverError("root refinement did not converge after " +
                      std::to_string(kMaxIterations) + " iterations: " + trace.str());
}

SolveReport finish_report(const BigReal& y_wp, const BigReal& alpha,
                          const BigReal& lx, int iterations, mpfr_prec_t precision) {
    SolveReport rep;
    rep.root = y_wp.round_to(precision);
    rep.iterations = iterations;
    // residual of the rounded root: |y^a e^y / x - 1|
    BigReal yr = rep.root.round_to(lx.precision());
    rep.residual = abs(expm1(eval_g(yr, alpha, lx))).round_to(precision);
    rep.precision_bits = precision;
    return rep;
}

} // namespace

SolveReport solve_phi(const BigReal& x, const BigReal& alpha, mpfr_prec_t precision) {
    const mpfr_prec_t wp = precision + kGuardBits;
    const BigReal zero(0L, wp), one(1L, wp);
    BigReal xw = x.round_to(wp);
    BigReal aw = alpha.round_to(wp);
    if (xw <= zero) throw DomainError("solve_phi: x must be positive");
    BigReal lx = ln(xw);

    if (aw.is_zero()) {
        if (lx <= zero) throw DomainError("solve_phi: alpha=0 requires x > 1");
        SolveReport rep;
        rep.root = lx.round_to(precision);
        rep.iterations = 0;
        BigReal yr = rep.root.round_to(wp);
        rep.residual = abs(expm1(yr - lx)).round_to(precision);
        rep.precision_bits = precision;
        return rep;
    }

    BigReal branch_lo = zero;
    if (aw < zero) {
        BigReal na = -aw;
        // need ln x > alpha ln(-alpha) - alpha
        if (lx <= aw * ln(na) - aw)
            throw DomainError("solve_phi: alpha < 0 requires x > e^{-alpha}(-alpha)^alpha");
        branch_lo = na;
    }

    int iterations = 0;
    BigReal y = solve_log_form(lx, aw, branch_lo, iterations);
    return finish_report(y, aw, lx, iterations, precision);
}

SolveReport solve_w(const BigReal& x, mpfr_prec_t precision) {
    const mpfr_prec_t wp = precision + kGuardBits;
    BigReal xw = x.round_to(wp);
    if (xw.sign() < 0)
        throw DomainError("solve_w: x must be nonnegative (principal branch)");
    if (xw.is_zero()) {
        SolveReport rep;
        rep.root = BigReal(0L, precision);
        rep.iterations = 0;
        rep.residual = BigReal(0L, precision);
        rep.precision_bits = precision;
        return rep;
    }
    return solve_phi(x, BigReal(1L, precision), precision);
}

std::vector<BigReal> taylor_coeffs_at_e(int k, mpfr_prec_t precision) {
    if (k < 0 || k > 12) throw UsageError("taylor_coeffs_at_e: need 0 <= k <= 12");
    std::vector<BigReal> coeffs;
    if (k == 0) return coeffs;
    const mpfr_prec_t wp = precision + 32;

    // x(1+u) = e (1+u) e^u, so (x-e)/e = sum_{j>=1} ((j+1)/j!) u^j.
    // Reverting gives u as a rational series in v = (x-e)/e, and
    // W(e+h) = 1 + u(h/e), hence coefficient j is b_j e^{-j}.
    int order = k > 1 ? k - 1 : 1;
    RatSeries f(order);
    mpz_class fact = 1;
    for (int j = 1; j <= order; ++j) {
        fact *= j;
        f[j] = mpq_class(mpz_class(j + 1), fact);
        f[j].canonicalize();
    }
    RatSeries b = RatSeries::revert(f);

    coeffs.push_back(BigReal(1L, precision));
    BigReal einv = BigReal(1L, wp) / BigReal::e(wp);
    BigReal epow = BigReal(1L, wp);
    for (int j = 1; j < k; ++j) {
        epow *= einv;
        BigReal bj(wp);
        mpfr_set_q(bj.raw(), b[j].get_mpq_t(), MPFR_RNDN);
        coeffs.push_back((bj * epow).round_to(precision));
    }
    return coeffs;
}

} // namespace wseries
