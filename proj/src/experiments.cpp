#include "wseries/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "wseries/errors.hpp"
#include "wseries/oracle.hpp"

namespace wseries {

const char* to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::Converged: return "Converged";
        case VerdictKind::Stagnant: return "Stagnant";
        case VerdictKind::Diverging: return "Diverging";
    }
    return "?";
}

std::vector<BigReal> geometric_grid(const BigReal& lo, const BigReal& hi, int points) {
    if (points < 2) throw UsageError("geometric_grid: need at least 2 points");
    if (lo.sign() <= 0 || hi <= lo)
        throw UsageError("geometric_grid: need 0 < lo < hi");
    const mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
    BigReal ratio = exp(ln(hi.round_to(prec) / lo.round_to(prec)) /
                        BigReal(static_cast<long>(points - 1), prec));
    std::vector<BigReal> grid;
    grid.reserve(static_cast<size_t>(points));
    BigReal x = lo.round_to(prec);
    for (int i = 0; i < points - 1; ++i) {
        grid.push_back(x);
        x *= ratio;
    }
    grid.push_back(hi.round_to(prec));
    return grid;
}

namespace {

BigReal from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

VerdictKind classify(const TruncatedEvaluation& ev, int window) {
    if (ev.converged) return VerdictKind::Converged;
    const auto& tr = ev.term_trace;
    if (static_cast<int>(tr.size()) > window) {
        bool growing = true;
        for (size_t i = tr.size() - static_cast<size_t>(window); i < tr.size(); ++i) {
            if (!(tr[i] > tr[i - 1])) {
                growing = false;
                break;
            }
        }
        if (growing) return VerdictKind::Diverging;
    }
    return VerdictKind::Stagnant;
}

} // namespace

std::vector<ConvergenceVerdict> convergence_scan(
    Series series, const BigReal& alpha, const std::vector<BigReal>& x_grid,
    int max_terms, const BigReal& tol, const StirlingTables& tables,
    const ExperimentConfig& config) {
    std::vector<ConvergenceVerdict> out;
    out.reserve(x_grid.size());
    for (const BigReal& x : x_grid) {
        SeriesVariables vars = variables_from(x, alpha, config.precision);
        TruncatedEvaluation ev = eval_series(series, vars, max_terms, tol, tables);
        ConvergenceVerdict v;
        v.x = x.round_to(config.precision);
        v.alpha = alpha.round_to(config.precision);
        v.series = series;
        v.kind = classify(ev, config.divergence_window);
        v.terms = ev.terms_used;
        v.last_term_trace = ev.term_trace;
        v.final_value = ev.value;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<ErrorCurveRow> error_curve(Series series, int N,
                                       const std::vector<BigReal>& x_grid,
                                       mpfr_prec_t precision,
                                       const StirlingTables& tables) {
    const BigReal one(1L, precision);
    const BigReal no_tol(0L, precision);
    std::vector<ErrorCurveRow> out;
    out.reserve(x_grid.size());
    for (const BigReal& x : x_grid) {
        ErrorCurveRow row;
        row.x = x.round_to(precision);
        row.reference = solve_phi(x, one, precision + 32).root.round_to(precision);
        try {
            SeriesVariables vars = variables_from(x, one, precision);
            TruncatedEvaluation ev = eval_series(series, vars, N, no_tol, tables);
            row.approx = ev.value;
            row.terms = ev.terms_used;
            row.abs_err = abs(ev.value - row.reference);
            row.rel_err = *row.abs_err / abs(row.reference);
        } catch (const DomainError&) {
            row.domain_error = true;
        }
        out.push_back(std::move(row));
    }
    return out;
}

OrderFit order_fit(Series series, const std::vector<int>& N_range,
                   const BigReal& x_big, mpfr_prec_t precision,
                   const StirlingTables& tables) {
    if (N_range.size() < 3)
        throw UsageError("order_fit: need at least 3 truncation orders");
    const BigReal one(1L, precision);
    const BigReal no_tol(0L, precision);
    SeriesVariables vars = variables_from(x_big, one, precision);
    BigReal ref = solve_phi(x_big, one, precision + 32).root.round_to(precision);
    BigReal floor = BigReal::pow2(-(precision - 32), precision) * abs(ref);

    // grading factor per extra term
    BigReal grading = series == Series::S4c ? vars.L2 / (vars.L1 * vars.L1)
                                            : vars.L2 / vars.L1;
    if (grading.sign() <= 0)
        throw UsageError("order_fit: x_big must exceed e so the grading is positive");
    double lg = ln(grading).to_double();

    OrderFit fit;
    std::vector<double> ts, ys;
    for (int N : N_range) {
        TruncatedEvaluation ev = eval_series(series, vars, N, no_tol, tables);
        BigReal err = abs(ev.value - ref);
        if (err < floor) {
            fit.precision_limited = true;
            continue;
        }
        ts.push_back(static_cast<double>(N) * lg);
        ys.push_back(ln(err).to_double());
    }
    fit.points_used = static_cast<int>(ts.size());
    if (fit.points_used < 3)
        throw UsageError("order_fit: fewer than 3 usable points above the precision floor");
    double tbar = 0, ybar = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        tbar += ts[i];
        ybar += ys[i];
    }
    tbar /= static_cast<double>(ts.size());
    ybar /= static_cast<double>(ts.size());
    double num = 0, den = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - tbar) * (ys[i] - ybar);
        den += (ts[i] - tbar) * (ts[i] - tbar);
    }
    fit.slope = num / den;
    fit.intercept = ybar - fit.slope * tbar;
    return fit;
}

std::vector<BigReal> taylor_match_check(Series series, int N, mpfr_prec_t precision,
                                        const StirlingTables& tables) {
    if (N < 0) throw UsageError("taylor_match_check: N must be nonnegative");
    if (N > 8) throw UsageError("taylor_match_check: N must be <= 8");
    std::vector<BigReal> deviations;
    if (N == 0) return deviations;

    const int jmax = std::min(N, 6);
    std::vector<BigReal> exact = taylor_coeffs_at_e(jmax + 1, precision + 64);

    const BigReal h = BigReal::pow2(-static_cast<long>(precision / 4), precision);
    for (int j = 0; j <= jmax; ++j) {
        // cancellation in the j-th difference costs about j*precision/4 bits,
        // so evaluate the truncation at a boosted working precision
        const mpfr_prec_t wp =
            std::max<mpfr_prec_t>(precision, precision / 4 * (j + 2) + 64);
        const BigReal a = BigReal::e(wp);
        const BigReal no_tol(0L, wp);
        auto f = [&](const BigReal& x) {
            SeriesVariables vars = variables_from(x, BigReal(1L, wp), wp);
            return eval_series(series, vars, N, no_tol, tables).value;
        };
        auto diff = [&](const BigReal& step) {
            // central j-th difference: h^{-j} sum_i (-1)^i C(j,i) f(a+(j-2i)h/2)
            BigReal acc(0L, wp);
            for (int i = 0; i <= j; ++i) {
                BigReal xi = a + BigReal(static_cast<long>(j - 2 * i), wp) * step /
                                     BigReal(2L, wp);
                BigReal t = from_mpz(binomial(static_cast<unsigned long>(j),
                                              static_cast<unsigned long>(i)),
                                     wp) *
                            f(xi);
                if (i & 1) acc -= t;
                else acc += t;
            }
            return acc / pow_si(step, j);
        };
        BigReal cj(wp);
        if (j == 0) {
            cj = f(a);
        } else {
            BigReal hw = h.round_to(wp);
            BigReal d1 = diff(hw);
            BigReal d2 = diff(hw / BigReal(2L, wp));
            // Richardson: central differences have O(h^2) error
            cj = (BigReal(4L, wp) * d2 - d1) / BigReal(3L, wp);
            BigReal jfact(wp);
            mpfr_set_z(jfact.raw(), factorial(static_cast<unsigned long>(j)).get_mpz_t(),
                       MPFR_RNDN);
            cj /= jfact;
        }
        deviations.push_back(abs(cj - exact[static_cast<size_t>(j)].round_to(wp))
                                 .round_to(precision));
    }
    return deviations;
}

std::vector<ConvergenceVerdict> conjecture_probe(
    Series series, const std::vector<BigReal>& x_grid, int max_terms,
    const BigReal& tol, const StirlingTables& tables,
    const ExperimentConfig& config) {
    if (series != Series::S2a && series != Series::S4c)
        throw UsageError("conjecture_probe: series must be 2a or 4c");
    const BigReal one(1L, config.precision);
    const BigReal e = BigReal::e(config.precision);
    for (const BigReal& x : x_grid) {
        if (!(x > one) || !(x < e))
            throw UsageError("conjecture_probe: grid must lie strictly inside (1, e)");
    }
    return convergence_scan(series, one, x_grid, max_terms, tol, tables, config);
}

} // namespace wseries
