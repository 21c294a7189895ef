#include "wseries/stirling.hpp"

#include "wseries/errors.hpp"
#include "wseries/ratseries.hpp"

namespace wseries {

const char* to_string(StirlingKind kind) {
    switch (kind) {
        case StirlingKind::Cycle: return "cycle";
        case StirlingKind::Subset: return "subset";
        case StirlingKind::Assoc2: return "assoc2";
    }
    return "?";
}

BigCardinal binomial(unsigned long n, unsigned long k) {
    BigCardinal r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigCardinal factorial(unsigned long n) {
    BigCardinal r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

StirlingTable::StirlingTable(StirlingKind kind, int max_n)
    : kind_(kind), max_n_(max_n), zero_(0) {
    if (max_n < 0) throw UsageError("StirlingTable: max_n must be nonnegative");
    rows_.resize(static_cast<size_t>(max_n) + 1);
    rows_[0] = {BigCardinal(1)};
    for (int n = 1; n <= max_n; ++n) {
        auto& row = rows_[static_cast<size_t>(n)];
        row.assign(static_cast<size_t>(n) + 1, BigCardinal(0));
        const auto& prev = rows_[static_cast<size_t>(n - 1)];
        for (int m = 1; m <= n; ++m) {
            switch (kind_) {
                case StirlingKind::Cycle:
                    if (m <= n - 1) row[m] += (n - 1) * prev[m];
                    row[m] += prev[m - 1];
                    break;
                case StirlingKind::Subset:
                    if (m <= n - 1) row[m] += m * prev[m];
                    row[m] += prev[m - 1];
                    break;
                case StirlingKind::Assoc2:
                    if (m <= n - 1) row[m] += m * prev[m];
                    if (n >= 2 && m - 1 <= n - 2) {
                        const auto& prev2 = rows_[static_cast<size_t>(n - 2)];
                        row[m] += (n - 1) * prev2[m - 1];
                    }
                    break;
            }
        }
    }
}

const BigCardinal& StirlingTable::value(int n, int m) const {
    if (n < 0 || m < 0) throw UsageError("StirlingTable: negative index");
    if (n > max_n_)
        throw CapacityError(std::string("StirlingTable(") + to_string(kind_) +
                            "): n=" + std::to_string(n) + " exceeds max_n=" +
                            std::to_string(max_n_));
    if (m > n) return zero_;
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(m)];
}

bool egf_check(const StirlingTable& table, int m, int n_max) {
    if (m < 0 || n_max < m) throw UsageError("egf_check: need 0 <= m <= n_max");
    if (n_max > table.max_n())
        throw CapacityError("egf_check: n_max exceeds table bound " +
                            std::to_string(table.max_n()));
    RatSeries base(n_max);
    switch (table.kind()) {
        case StirlingKind::Cycle: base = RatSeries::log1p(n_max); break;
        case StirlingKind::Subset: base = RatSeries::expm1(n_max); break;
        case StirlingKind::Assoc2: base = RatSeries::expm1_minus_z(n_max); break;
    }
    RatSeries powered = base.pow(m);
    mpz_class mfact = factorial(static_cast<unsigned long>(m));
    mpz_class nfact = 1;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) nfact *= n;
        // coefficient of z^n equals s(n,m)/n! * m!, with sign (-1)^{n+m} for Cycle
        mpq_class expected(table.value(n, m));
        if (table.kind() == StirlingKind::Cycle && ((n + m) & 1)) expected = -expected;
        expected *= mfact;
        expected /= nfact;
        expected.canonicalize();
        if (powered[n] != expected) return false;
    }
    return true;
}

bool identity_3c_check(const StirlingTables& tables, int l, int m) {
    if (m < 1 || m > l) throw UsageError("identity_3c_check: need 1 <= m <= l");
    mpz_class rhs = 0;
    for (int p = 0; p <= l - m; ++p) {
        mpz_class term = tables.assoc2.value(p + l - m, p) *
                         binomial(static_cast<unsigned long>(p + l - 1),
                                  static_cast<unsigned long>(p + l - m));
        if ((p + l - m) & 1) rhs -= term;
        else rhs += term;
    }
    return rhs == tables.cycle.value(l, m);
}

} // namespace wseries
