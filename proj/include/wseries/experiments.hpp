#pragma once

#include <optional>
#include <vector>

#include "wseries/bigreal.hpp"
#include "wseries/series.hpp"

namespace wseries {

enum class VerdictKind { Converged, Stagnant, Diverging };

const char* to_string(VerdictKind v);

struct ConvergenceVerdict {
    BigReal x;
    BigReal alpha;
    Series series = Series::S2a;
    VerdictKind kind = VerdictKind::Stagnant;
    int terms = 0;
    std::vector<BigReal> last_term_trace;
    BigReal final_value;
};

struct ErrorCurveRow {
    BigReal x;
    std::optional<BigReal> approx;
    BigReal reference;
    std::optional<BigReal> abs_err;
    std::optional<BigReal> rel_err;
    int terms = 0;
    bool domain_error = false;
};

struct ExperimentConfig {
    mpfr_prec_t precision = 200;
    int divergence_window = 10; // consecutive growing terms that mean "Diverging"
};

// lo * r^i spaced grid with exact endpoints.
std::vector<BigReal> geometric_grid(const BigReal& lo, const BigReal& hi, int points);

// Classifies each grid point by the partial-sum term trace of `series`.
std::vector<ConvergenceVerdict> convergence_scan(
    Series series, const BigReal& alpha, const std::vector<BigReal>& x_grid,
    int max_terms, const BigReal& tol, const StirlingTables& tables,
    const ExperimentConfig& config = {});

// N-term truncation vs oracle at each grid point (alpha = 1).
std::vector<ErrorCurveRow> error_curve(Series series, int N,
                                       const std::vector<BigReal>& x_grid,
                                       mpfr_prec_t precision,
                                       const StirlingTables& tables);

struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points_used = 0;
    bool precision_limited = false;
};

// Regresses log(abs_err) against N log(L2/L1) (2a/3a/4a) or N log(L2/L1^2)
// (4c) at a single large x; a slope near 1 confirms the claimed order.
OrderFit order_fit(Series series, const std::vector<int>& N_range,
                   const BigReal& x_big, mpfr_prec_t precision,
                   const StirlingTables& tables);

// Deviations of the N-term truncation's Taylor coefficients 0..min(N,6) at
// x = e (central differences with Richardson extrapolation) from the exact
// coefficients of W.
std::vector<BigReal> taylor_match_check(Series series, int N, mpfr_prec_t precision,
                                        const StirlingTables& tables);

// Informational convergence report below the proved domain, grid in (1, e).
std::vector<ConvergenceVerdict> conjecture_probe(
    Series series, const std::vector<BigReal>& x_grid, int max_terms,
    const BigReal& tol, const StirlingTables& tables,
    const ExperimentConfig& config = {});

} // namespace wseries
