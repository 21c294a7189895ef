#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wseries/bigreal.hpp"
#include "wseries/stirling.hpp"

namespace wseries {

enum class Series { S2a, S2d, S3a, S4a, S4c };

const char* to_string(Series s);
Series series_from_string(const std::string& name);

/*
 * Full variable set derived from (x, alpha) at a fixed precision:
 *   L1 = ln x, L2 = ln L1, sigma = alpha/L1, tau = alpha L2/L1,
 *   zeta = 1/(1+sigma), Ltau = ln(1-tau), eta = sigma/(1-tau).
 * Ltau and eta are absent when tau >= 1.
 */
struct SeriesVariables {
    BigReal x;
    BigReal alpha;
    BigReal L1;
    BigReal L2;
    BigReal sigma;
    BigReal tau;
    BigReal zeta;
    std::optional<BigReal> Ltau;
    std::optional<BigReal> eta;
    mpfr_prec_t precision_bits = 0;
};

SeriesVariables variables_from(const BigReal& x, const BigReal& alpha,
                               mpfr_prec_t precision);

// Value of an N-term partial sum plus convergence diagnostics.
struct TruncatedEvaluation {
    BigReal value;
    int terms_used = 0;
    BigReal last_term;      // magnitude of final included term
    BigReal tail_estimate;  // magnitude of first omitted term
    bool converged = false; // last_term fell below tolerance before terms ran out
    std::vector<BigReal> term_trace; // magnitudes of all included terms
    BigReal correction;     // sum of the series terms beyond the leading logs
};

// (2a): Phi_alpha(x) = L1 - alpha L2
//       + alpha sum_{n>=1} sigma^n sum_{m=1}^n (-1)^{n+m} [n, n-m+1] L2^m/m!
TruncatedEvaluation eval_2a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables);

// (2d): w = sum_{m>=1} tau^m/m! sum_{l>=0} (-1)^l [l+m, l+1] sigma^l,
// truncated by total order l+m <= N. Returns w itself.
TruncatedEvaluation eval_2d(const BigReal& sigma, const BigReal& tau, int N,
                            const StirlingTables& tables);
TruncatedEvaluation eval_2d(const BigReal& sigma, const BigReal& tau, int N,
                            const BigReal& tol, const StirlingTables& tables);

// (3a): W(x) = L1 - L2
//       + sum_{m>=1} tau^m/m! sum_{p=0}^{m-1} (-1)^{p+m-1} zeta^{p+m} {p+m-1, p}>=2
// Requires alpha = 1.
TruncatedEvaluation eval_3a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables);

// (4a): W(x) = L1 - L2 - Ltau
//       - sum_{n>=1} (-eta)^n sum_{m=1}^n (-1)^{m+1} [n, n-m+1] Ltau^m/m!
// Requires alpha = 1 and tau < 1.
TruncatedEvaluation eval_4a(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables);

// (4c): W(x) = L1 - L2 - Ltau
//       + sum_{m>=1} (Ltau eta)^m/m! sum_{p=0}^{m-1} (-1)^{p+m-1} {p+m-1, p}>=2
//         (1+eta)^{-(p+m)}
// Requires alpha = 1 and tau < 1.
TruncatedEvaluation eval_4c(const SeriesVariables& vars, int N, const BigReal& tol,
                            const StirlingTables& tables);

// Dispatch by selector; S2d is evaluated through the (2b) assembly
// L1 - alpha L2 + alpha w so all five selectors approximate Phi_alpha(x).
TruncatedEvaluation eval_series(Series s, const SeriesVariables& vars, int N,
                                const BigReal& tol, const StirlingTables& tables);

// Phi_alpha(x) = alpha W(x^{1/alpha}/alpha), W evaluated by series 3a or 4c.
TruncatedEvaluation phi_via_w(const BigReal& x, const BigReal& alpha, int N,
                              Series method, const BigReal& tol,
                              const StirlingTables& tables, mpfr_prec_t precision);

// Residual |w(sigma,tau) - (-ln(1-tau) + w(sigma/(1-tau), sigma ln(1-tau)/(1-tau)))|
// with both w values obtained by root-finding on 1 - e^{-w} + sigma w - tau = 0.
BigReal identity_4d_residual(const BigReal& sigma, const BigReal& tau,
                             mpfr_prec_t precision);

// Root of 1 - e^{-w} + sigma w - tau = 0 for sigma > 0 (unique; the defining
// relation (2c) behind every series). Exposed for tests.
BigReal solve_w_sigma_tau(const BigReal& sigma, const BigReal& tau,
                          mpfr_prec_t precision);

} // namespace wseries
