// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wseries/csv.hpp"
#include "wseries/errors.hpp"
#include "wseries/experiments.hpp"
#include "wseries/oracle.hpp"
#include "wseries/series.hpp"
#include "wseries/stirling.hpp"

using namespace wseries;

namespace {

const mpfr_prec_t P = 200;

const StirlingTables& tables() {
    static StirlingTables t(250);
    return t;
}

BigReal lit(const char* s) { return BigReal::from_string(s, P); }

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool()>& body) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::ostringstream line;
    line.precision(1);
    line << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " ["
         << std::fixed << secs << "s]" << note;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
}

bool csv_is_schema_valid(const std::string& text, size_t expected_rows) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) return false;
    size_t rows = 0;
    while (std::getline(is, line)) {
        size_t commas = 0;
        for (char c : line)
            if (c == ',') ++commas;
        if (commas != 8) return false;
        ++rows;
    }
    return rows == expected_rows;
}

} // namespace

int main() {
    criterion(1, "generating-function cross-check, all kinds, m<=12, n<=25", [] {
        using clock = std::chrono::steady_clock;
        auto t0 = clock::now();
        for (int m = 0; m <= 12; ++m) {
            if (!egf_check(tables().cycle, m, 25)) return false;
            if (!egf_check(tables().subset, m, 25)) return false;
            if (!egf_check(tables().assoc2, m, 25)) return false;
        }
        return std::chrono::duration<double>(clock::now() - t0).count() < 60.0;
    });

    criterion(2, "cycle-to-assoc2 identity exact for 1 <= m <= l <= 25", [] {
        for (int l = 1; l <= 25; ++l)
            for (int m = 1; m <= l; ++m)
                if (!identity_3c_check(tables(), l, m)) return false;
        return true;
    });

    criterion(3, "substitution identity residual < 2^-180 on a 5x5 grid", [] {
        BigReal bound = BigReal::pow2(-180, P);
        for (int i = 1; i <= 5; ++i) {
            BigReal sigma = BigReal(static_cast<long>(i), P) / BigReal(10L, P);
            for (int j = 0; j < 5; ++j) {
                BigReal tau = BigReal(static_cast<long>(9 * j), P) / BigReal(40L, P);
                if (!(identity_4d_residual(sigma, tau, P) < bound)) return false;
            }
        }
        return true;
    });

    criterion(4, "all four series exact at x=e for N in {1,5,20}", [] {
        auto v = variables_from(BigReal::e(P), BigReal(1L, P), P);
        for (int N : {1, 5, 20})
            for (Series s : {Series::S2a, Series::S3a, Series::S4a, Series::S4c}) {
                auto ev = eval_series(s, v, N, BigReal(0L, P), tables());
                if (!(ev.value == BigReal(1L, P))) return false;
                if (!ev.correction.is_zero()) return false;
            }
        return true;
    });

    criterion(5, "3a converges on 50 points of [2, e], 1e-20 vs oracle", [] {
        using clock = std::chrono::steady_clock;
        auto t0 = clock::now();
        auto grid = geometric_grid(BigReal(2L, P), BigReal::e(P), 50);
        auto verdicts = convergence_scan(Series::S3a, BigReal(1L, P), grid, 120,
                                         lit("1e-21"), tables());
        BigReal bound = lit("1e-20");
        for (const auto& v : verdicts) {
            if (v.kind != VerdictKind::Converged) return false;
            BigReal ref = solve_w(v.x, P).root;
            if (!(abs(v.final_value - ref) < bound)) return false;
        }
        return std::chrono::duration<double>(clock::now() - t0).count() < 60.0;
    });

    criterion(6, "2a at x=1.1(alpha e)^alpha reaches 1e-10 in 64 terms", [] {
        for (long a : {1L, 2L, 3L}) {
            BigReal alpha(a, P);
            BigReal x = lit("1.1") * pow_si(alpha * BigReal::e(P), static_cast<int>(a));
            auto verdicts = convergence_scan(Series::S2a, alpha, {x}, 64,
                                             lit("1e-12"), tables());
            if (verdicts[0].kind != VerdictKind::Converged) return false;
            BigReal ref = solve_phi(x, alpha, P).root;
            if (!(abs(verdicts[0].final_value - ref) < lit("1e-10"))) return false;
        }
        return true;
    });

    criterion(7, "at x=1e10, N=6: 4c beats both 2a and 3a", [] {
        auto v = variables_from(lit("1e10"), BigReal(1L, P), P);
        BigReal ref = solve_w(lit("1e10"), P).root;
        BigReal none(0L, P);
        auto rel = [&](Series s) {
            return abs(eval_series(s, v, 6, none, tables()).value - ref) / ref;
        };
        BigReal r4c = rel(Series::S4c);
        return r4c < rel(Series::S2a) && r4c < rel(Series::S3a);
    });

    criterion(8, "order-fit slopes in [0.8, 1.2] at x=1e40, N=2..10", [] {
        std::vector<int> Ns;
        for (int n = 2; n <= 10; ++n) Ns.push_back(n);
        for (Series s : {Series::S2a, Series::S3a, Series::S4c}) {
            auto fit = order_fit(s, Ns, lit("1e40"), P, tables());
            if (!(fit.slope > 0.8 && fit.slope < 1.2)) return false;
        }
        return true;
    });

    criterion(9, "3a error curve peaks strictly inside (e, 1e6]", [] {
        BigReal lo = BigReal::e(P) * (BigReal(1L, P) + BigReal::pow2(-20, P));
        auto grid = geometric_grid(lo, lit("1e6"), 40);
        auto rows = error_curve(Series::S3a, 10, grid, P, tables());
        size_t arg_max = 0;
        BigReal best(-1L, P);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].domain_error || !rows[i].abs_err) return false;
            if (*rows[i].abs_err > best) {
                best = *rows[i].abs_err;
                arg_max = i;
            }
        }
        if (arg_max == 0 || arg_max + 1 == rows.size()) return false;
        // both ends decay toward zero relative to the interior maximum
        BigReal floor_bound = BigReal::pow2(-(P - 32), P) * abs(rows.front().reference);
        if (!(*rows.front().abs_err < floor_bound + best / lit("1e3"))) return false;
        return *rows.back().abs_err < best / BigReal(10L, P);
    });

    criterion(10, "truncations of 3a/4c share W's Taylor data at e; 2a does not", [] {
        auto dev3a = taylor_match_check(Series::S3a, 4, 300, tables());
        auto dev4c = taylor_match_check(Series::S4c, 4, 300, tables());
        BigReal bound = BigReal::from_string("1e-15", 300);
        for (const auto* devs : {&dev3a, &dev4c}) {
            if (devs->size() < 2) return false;
            if (!((*devs)[0] < bound && (*devs)[1] < bound)) return false;
        }
        auto dev2a = taylor_match_check(Series::S2a, 4, 300, tables());
        return dev2a[1] > BigReal(1000L, 300) * dev3a[1];
    });

    criterion(11, "oracle residual contract on 1000 random x per precision", [] {
        std::mt19937_64 rng(20260823);
        std::uniform_real_distribution<double> expo(-40.0, 46.05);
        for (mpfr_prec_t prec : {mpfr_prec_t(64), mpfr_prec_t(200)}) {
            BigReal res_bound = BigReal::pow2(-(prec - 12), prec);
            BigReal agree_bound = BigReal::pow2(-(prec - 16), prec);
            for (int i = 0; i < 1000; ++i) {
                BigReal x = exp(BigReal(expo(rng), prec));
                auto rep = solve_w(x, prec);
                if (!(rep.residual <= res_bound)) return false;
                if (i % 20 == 0) {
                    BigReal phi = solve_phi(x, BigReal(1L, prec), prec).root;
                    if (!(abs(phi - rep.root) <= agree_bound * abs(rep.root)))
                        return false;
                }
            }
        }
        return true;
    });

    criterion(12, "conjecture probe below e runs and emits schema-valid csv", [] {
        auto grid = geometric_grid(lit("1.05"), lit("2.7"), 20);
        for (Series s : {Series::S2a, Series::S4c}) {
            auto verdicts = conjecture_probe(s, grid, 120, lit("1e-18"), tables());
            if (verdicts.size() != grid.size()) return false;
            std::ostringstream os;
            write_csv_header(os);
            for (const auto& v : verdicts) {
                CsvRow row;
                row.x = v.x;
                row.alpha = v.alpha;
                row.series = to_string(v.series);
                row.terms = v.terms;
                row.value = v.final_value;
                BigReal ref = solve_w(v.x, P).root;
                row.reference = ref;
                row.abs_err = abs(v.final_value - ref);
                row.rel_err = *row.abs_err / abs(ref);
                row.verdict = to_string(v.kind);
                write_csv_row(os, row, 30);
            }
            if (!csv_is_schema_valid(os.str(), grid.size())) return false;
        }
        return true;
    });

    if (failures != 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
