#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wseries {

// Exact nonnegative integer of unbounded size.
using BigCardinal = mpz_class;

enum class StirlingKind { Cycle, Subset, Assoc2 };

const char* to_string(StirlingKind kind);

BigCardinal binomial(unsigned long n, unsigned long k);
BigCardinal factorial(unsigned long n);

/*
 * Memoized triangular table of one Stirling-number kind, built once by
 * recurrence and immutable afterwards. Entries are unsigned; the series
 * evaluators apply signs.
 *
 *   Cycle:  [n+1, m] = n [n, m] + [n, m-1]
 *   Subset: {n+1, m} = m {n, m} + {n, m-1}
 *   Assoc2: {n+1, m}>=2 = m {n, m}>=2 + n {n-1, m-1}>=2
 *
 * with [0,0] = {0,0} = 1 in every kind.
 */
class StirlingTable {
public:
    StirlingTable(StirlingKind kind, int max_n);

    StirlingKind kind() const { return kind_; }
    int max_n() const { return max_n_; }

    // Exact value for 0 <= m <= n <= max_n; zero when m > n.
    // Throws CapacityError when n exceeds max_n.
    const BigCardinal& value(int n, int m) const;

private:
    StirlingKind kind_;
    int max_n_;
    std::vector<std::vector<BigCardinal>> rows_;
    BigCardinal zero_;
};

// The three kinds bundled at a common bound.
struct StirlingTables {
    StirlingTable cycle;
    StirlingTable subset;
    StirlingTable assoc2;

    explicit StirlingTables(int max_n = 64)
        : cycle(StirlingKind::Cycle, max_n),
          subset(StirlingKind::Subset, max_n),
          assoc2(StirlingKind::Assoc2, max_n) {}
};

// Expands the defining generating function of `table.kind()` raised to the
// m-th power with exact rational coefficients and compares n!/m! times each
// coefficient (unsigned) against the table for all n <= n_max.
bool egf_check(const StirlingTable& table, int m, int n_max);

// Checks [l, m] = sum_{p=0}^{l-m} (-1)^{p+l-m} {p+l-m, p}>=2 C(p+l-1, p+l-m)
// in exact integer arithmetic.
bool identity_3c_check(const StirlingTables& tables, int l, int m);

} // namespace wseries
