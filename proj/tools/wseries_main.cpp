#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wseries/csv.hpp"
#include "wseries/errors.hpp"
#include "wseries/experiments.hpp"
#include "wseries/oracle.hpp"
#include "wseries/series.hpp"
#include "wseries/stirling.hpp"
#include "wseries/xparse.hpp"

namespace {

using namespace wseries;

struct CommonOpts {
    long precision = 200;
    int digits = 30;
    std::string tol_expr; // empty -> 2^-(precision-16)
    std::string output;   // empty -> stdout

    mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(precision); }

    BigReal tol() const {
        if (tol_expr.empty()) return BigReal::pow2(-(precision - 16), prec());
        return parse_real_expr(tol_expr, prec());
    }

    void validate() const {
        if (precision < 64) throw UsageError("--precision must be at least 64");
        if (digits < 1 || digits > precision * 3 / 10)
            throw UsageError("--digits must be in [1, precision*0.3]");
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--precision", c.precision, "working precision in bits (default 200)");
    cmd->add_option("--digits", c.digits, "decimal digits for rendering (default 30)");
    cmd->add_option("--tol", c.tol_expr, "convergence tolerance (default 2^-(precision-16))");
    cmd->add_option("-o,--output", c.output, "output file (default: standard output)");
}

class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

StirlingTables& tables_for(int max_terms) {
    // 3a/4c index assoc2 up to 2N, so size the shared tables accordingly
    static int built_for = 0;
    static std::unique_ptr<StirlingTables> tables;
    int need = std::max(64, 2 * max_terms + 2);
    if (!tables || built_for < need) {
        tables = std::make_unique<StirlingTables>(need);
        built_for = need;
    }
    return *tables;
}

int cmd_eval(const CommonOpts& c, const std::string& series, const std::string& x_expr,
             const std::string& alpha_expr, int terms, bool check) {
    c.validate();
    OutputStream out(c.output);
    std::ostream& os = out.get();
    BigReal x = parse_real_expr(x_expr, c.prec());
    BigReal alpha = parse_real_expr(alpha_expr, c.prec());

    if (series == "oracle") {
        SolveReport rep = solve_phi(x, alpha, c.prec());
        os << "value = " << rep.root.to_string(c.digits) << "\n";
        os << "iterations = " << rep.iterations << "\n";
        os << "residual = " << rep.residual.to_string(6) << "\n";
        return 0;
    }

    Series s = series_from_string(series);
    StirlingTables& tables = tables_for(terms);
    SeriesVariables vars = variables_from(x, alpha, c.prec());
    TruncatedEvaluation ev = eval_series(s, vars, terms, c.tol(), tables);
    os << "value = " << ev.value.to_string(c.digits) << "\n";
    os << "terms_used = " << ev.terms_used << "\n";
    os << "converged = " << (ev.converged ? "true" : "false") << "\n";
    os << "last_term = " << ev.last_term.to_string(6) << "\n";
    os << "tail_estimate = " << ev.tail_estimate.to_string(6) << "\n";
    if (check) {
        SolveReport rep = solve_phi(x, alpha, c.prec() + 32);
        BigReal ref = rep.root.round_to(c.prec());
        os << "reference = " << ref.to_string(c.digits) << "\n";
        os << "abs_err = " << abs(ev.value - ref).to_string(6) << "\n";
    }
    return 0;
}

void emit_scan_csv(std::ostream& os, const std::vector<ConvergenceVerdict>& verdicts,
                   const CommonOpts& c) {
    write_csv_header(os);
    for (const auto& v : verdicts) {
        CsvRow row;
        row.x = v.x;
        row.alpha = v.alpha;
        row.series = to_string(v.series);
        row.terms = v.terms;
        row.value = v.final_value;
        BigReal ref = solve_phi(v.x, v.alpha, c.prec() + 32).root.round_to(c.prec());
        row.reference = ref;
        row.abs_err = abs(v.final_value - ref);
        row.rel_err = *row.abs_err / abs(ref);
        row.verdict = to_string(v.kind);
        write_csv_row(os, row, c.digits);
    }
}

int cmd_scan(const CommonOpts& c, const std::string& series, const std::string& alpha_expr,
             const std::string& x_min, const std::string& x_max, int points,
             int max_terms, bool conjecture) {
    c.validate();
    OutputStream out(c.output);
    Series s = series_from_string(series);
    BigReal alpha = parse_real_expr(alpha_expr, c.prec());
    BigReal lo = parse_real_expr(x_min, c.prec());
    BigReal hi = parse_real_expr(x_max, c.prec());
    const BigReal one(1L, c.prec());
    if (!(lo > one) || !(lo < hi))
        throw UsageError("--x-min must exceed 1 and be below --x-max");
    std::vector<BigReal> grid = geometric_grid(lo, hi, points);
    StirlingTables& tables = tables_for(max_terms);
    ExperimentConfig config;
    config.precision = c.prec();
    std::vector<ConvergenceVerdict> verdicts =
        conjecture ? conjecture_probe(s, grid, max_terms, c.tol(), tables, config)
                   : convergence_scan(s, alpha, grid, max_terms, c.tol(), tables, config);
    emit_scan_csv(out.get(), verdicts, c);
    return 0;
}

int cmd_error_curve(const CommonOpts& c, const std::string& series, int terms,
                    const std::string& x_min, const std::string& x_max, int points) {
    c.validate();
    OutputStream out(c.output);
    std::ostream& os = out.get();
    Series s = series_from_string(series);
    BigReal lo = parse_real_expr(x_min, c.prec());
    BigReal hi = parse_real_expr(x_max, c.prec());
    std::vector<BigReal> grid = geometric_grid(lo, hi, points);
    StirlingTables& tables = tables_for(terms);
    std::vector<ErrorCurveRow> rows = error_curve(s, terms, grid, c.prec(), tables);
    write_csv_header(os);
    for (const auto& r : rows) {
        CsvRow row;
        row.x = r.x;
        row.alpha = BigReal(1L, c.prec());
        row.series = series;
        row.terms = r.terms;
        row.value = r.approx;
        row.reference = r.reference;
        row.abs_err = r.abs_err;
        row.rel_err = r.rel_err;
        row.verdict = r.domain_error ? "domain_error" : "ok";
        write_csv_row(os, row, c.digits);
    }
    return 0;
}

int cmd_order_fit(const CommonOpts& c, const std::string& series, const std::string& x_expr,
                  int n_min, int n_max) {
    c.validate();
    OutputStream out(c.output);
    std::ostream& os = out.get();
    Series s = series_from_string(series);
    BigReal x = parse_real_expr(x_expr, c.prec());
    std::vector<int> Ns;
    for (int n = n_min; n <= n_max; ++n) Ns.push_back(n);
    StirlingTables& tables = tables_for(n_max);
    OrderFit fit = order_fit(s, Ns, x, c.prec(), tables);
    os << "series = " << series << "\n";
    os << "slope = " << fit.slope << "\n";
    os << "intercept = " << fit.intercept << "\n";
    os << "points_used = " << fit.points_used << "\n";
    os << "status = " << (fit.precision_limited ? "precision-limited" : "ok") << "\n";
    return 0;
}

int cmd_taylor_match(const CommonOpts& c, const std::string& series, int terms) {
    c.validate();
    OutputStream out(c.output);
    std::ostream& os = out.get();
    Series s = series_from_string(series);
    StirlingTables& tables = tables_for(std::max(terms, 8));
    std::vector<BigReal> devs = taylor_match_check(s, terms, c.prec(), tables);
    os << "coefficient,deviation\n";
    for (size_t j = 0; j < devs.size(); ++j)
        os << j << ',' << devs[j].to_string(c.digits) << "\n";
    return 0;
}

int cmd_stirling(const CommonOpts& c, const std::string& kind, int n, int m, int max_n) {
    OutputStream out(c.output);
    StirlingKind k;
    if (kind == "cycle") k = StirlingKind::Cycle;
    else if (kind == "subset") k = StirlingKind::Subset;
    else if (kind == "assoc2") k = StirlingKind::Assoc2;
    else throw UsageError("--kind must be cycle, subset or assoc2");
    StirlingTable table(k, std::max(max_n, n));
    out.get() << table.value(n, m).get_str() << "\n";
    return 0;
}

int cmd_identity(const CommonOpts& c, const std::string& which, int l_max,
                 int grid_points, long threshold_bits, const std::string& alpha_expr,
                 const std::string& x_expr) {
    c.validate();
    OutputStream out(c.output);
    std::ostream& os = out.get();
    if (which == "3c") {
        StirlingTables tables(std::max(64, 2 * l_max));
        bool all_ok = true;
        for (int l = 1; l <= l_max; ++l)
            for (int m = 1; m <= l; ++m)
                if (!identity_3c_check(tables, l, m)) {
                    os << "FAIL l=" << l << " m=" << m << "\n";
                    all_ok = false;
                }
        os << (all_ok ? "identity 3c holds" : "identity 3c FAILED") << " for all 1 <= m <= l <= "
           << l_max << "\n";
        return all_ok ? 0 : 1;
    }
    if (which == "4d") {
        BigReal threshold = BigReal::pow2(-threshold_bits, c.prec());
        bool all_ok = true;
        os << "sigma,tau,residual\n";
        for (int i = 1; i <= grid_points; ++i) {
            BigReal sigma = BigReal(static_cast<long>(i), c.prec()) /
                            BigReal(static_cast<long>(2 * grid_points), c.prec());
            for (int j = 0; j < grid_points; ++j) {
                BigReal tau = BigReal(static_cast<long>(9 * j), c.prec()) /
                              BigReal(static_cast<long>(10 * (grid_points - 1)), c.prec());
                BigReal res = identity_4d_residual(sigma, tau, c.prec());
                os << sigma.to_string(6) << ',' << tau.to_string(6) << ','
                   << res.to_string(6) << "\n";
                if (res > threshold) all_ok = false;
            }
        }
        return all_ok ? 0 : 1;
    }
    if (which == "reduction") {
        BigReal alpha = parse_real_expr(alpha_expr, c.prec());
        BigReal x = parse_real_expr(x_expr, c.prec());
        SolveReport phi = solve_phi(x, alpha, c.prec());
        const mpfr_prec_t wp = c.prec() + 32;
        BigReal xt = exp(ln(x.round_to(wp)) / alpha.round_to(wp)) / alpha.round_to(wp);
        BigReal via_w = (alpha.round_to(wp) * solve_w(xt, wp).root).round_to(c.prec());
        BigReal dev = abs(phi.root - via_w);
        os << "x,alpha,phi,alpha_times_w,deviation\n";
        os << x.to_string(c.digits) << ',' << alpha.to_string(c.digits) << ','
           << phi.root.to_string(c.digits) << ',' << via_w.to_string(c.digits) << ','
           << dev.to_string(6) << "\n";
        BigReal threshold = BigReal::pow2(-(c.precision - 24), c.prec()) * abs(phi.root);
        return dev <= threshold ? 0 : 1;
    }
    throw UsageError("--which must be 3c, 4d or reduction");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluation of the inverse of y^a e^y (Lambert W and its "
                 "generalization) by Stirling-number series"};
    app.require_subcommand(1);

    CommonOpts c_eval, c_scan, c_curve, c_fit, c_taylor, c_stir, c_ident;

    std::string series = "3a", x_expr, alpha_expr = "1", kind = "cycle", which = "3c";
    std::string x_min, x_max;
    int terms = 64, points = 50, max_terms = 64, n_min = 2, n_max = 10;
    int st_n = 0, st_m = 0, st_max_n = 64, l_max = 25, grid_points = 5;
    long threshold_bits = 180;
    bool check = false, conjecture = false;

    auto* eval = app.add_subcommand("eval", "evaluate one series (or the oracle) at x");
    eval->add_option("--series", series, "2a|2d|3a|4a|4c|oracle")->required();
    eval->add_option("--x", x_expr, "argument (expression, e.g. (2*e)^2)")->required();
    eval->add_option("--alpha", alpha_expr, "exponent alpha (default 1)");
    eval->add_option("--terms", terms, "maximum number of series terms (default 64)");
    eval->add_flag("--check", check, "also print the oracle reference and abs_err");
    add_common(eval, c_eval);

    auto* scan = app.add_subcommand("scan", "classify convergence over a geometric x grid");
    scan->add_option("--series", series)->required();
    scan->add_option("--alpha", alpha_expr);
    scan->add_option("--x-min", x_min)->required();
    scan->add_option("--x-max", x_max)->required();
    scan->add_option("--points", points);
    scan->add_option("--max-terms", max_terms);
    scan->add_flag("--conjecture", conjecture,
                   "probe below the proved domain (grid must lie in (1, e))");
    add_common(scan, c_scan);

    auto* curve = app.add_subcommand("error-curve", "N-term truncation error vs oracle");
    curve->add_option("--series", series)->required();
    curve->add_option("--terms", terms)->required();
    curve->add_option("--x-min", x_min)->required();
    curve->add_option("--x-max", x_max)->required();
    curve->add_option("--points", points);
    add_common(curve, c_curve);

    auto* fit = app.add_subcommand("order-fit", "fit the truncation-error order at large x");
    fit->add_option("--series", series)->required();
    fit->add_option("--x", x_expr)->required();
    fit->add_option("--n-min", n_min);
    fit->add_option("--n-max", n_max);
    add_common(fit, c_fit);

    auto* taylor = app.add_subcommand("taylor-match",
                                      "Taylor coefficients of the truncation at x=e vs W");
    taylor->add_option("--series", series)->required();
    taylor->add_option("--terms", terms)->required();
    add_common(taylor, c_taylor);

    auto* stir = app.add_subcommand("stirling", "exact Stirling-number lookup");
    stir->add_option("--kind", kind, "cycle|subset|assoc2")->required();
    stir->add_option("--n", st_n)->required();
    stir->add_option("--m", st_m)->required();
    stir->add_option("--max-n", st_max_n);
    add_common(stir, c_stir);

    auto* ident = app.add_subcommand("identity", "check identities 3c / 4d / the reduction");
    ident->add_option("--which", which, "3c|4d|reduction")->required();
    ident->add_option("--l-max", l_max);
    ident->add_option("--grid", grid_points);
    ident->add_option("--threshold-bits", threshold_bits);
    ident->add_option("--alpha", alpha_expr);
    ident->add_option("--x", x_expr);
    add_common(ident, c_ident);

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return cmd_eval(c_eval, series, x_expr, alpha_expr, terms, check);
        if (scan->parsed())
            return cmd_scan(c_scan, series, alpha_expr, x_min, x_max, points, max_terms,
                            conjecture);
        if (curve->parsed()) return cmd_error_curve(c_curve, series, terms, x_min, x_max, points);
        if (fit->parsed()) return cmd_order_fit(c_fit, series, x_expr, n_min, n_max);
        if (taylor->parsed()) return cmd_taylor_match(c_taylor, series, terms);
        if (stir->parsed()) return cmd_stirling(c_stir, kind, st_n, st_m, st_max_n);
        if (ident->parsed())
            return cmd_identity(c_ident, which, l_max, grid_points, threshold_bits,
                                alpha_expr, x_expr);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 4;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
