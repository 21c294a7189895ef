#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wseries/errors.hpp"
#include "wseries/ratseries.hpp"
#include "wseries/stirling.hpp"

using namespace wseries;

namespace {

const StirlingTables& tables() {
    static StirlingTables t(64);
    return t;
}

// Bell numbers by the Bell triangle, independent of the subset recurrence.
std::vector<mpz_class> bell_numbers(int n_max) {
    std::vector<mpz_class> bells{1};
    std::vector<mpz_class> row{1};
    for (int n = 1; n <= n_max; ++n) {
        std::vector<mpz_class> next{row.back()};
        for (const mpz_class& v : row) next.push_back(next.back() + v);
        bells.push_back(next.front());
        row = std::move(next);
    }
    return bells;
}

} // namespace

TEST_CASE("cycle numbers match known values") {
    const auto& t = tables().cycle;
    for (int n : {0, 1, 3, 7, 20}) CHECK(t.value(n, n) == 1);
    CHECK(t.value(4, 2) == 11);
    CHECK(t.value(5, 1) == 24); // (n-1)!
    CHECK(t.value(6, 1) == 120);
    CHECK(t.value(3, 0) == 0);
}

TEST_CASE("subset numbers match known values") {
    const auto& t = tables().subset;
    CHECK(t.value(4, 2) == 7);
    for (int n : {0, 2, 9}) CHECK(t.value(n, n) == 1);
    CHECK(t.value(3, 0) == 0);
    CHECK(t.value(5, 2) == 15);
}

TEST_CASE("assoc2 numbers match known values") {
    const auto& t = tables().assoc2;
    CHECK(t.value(4, 2) == 3);
    CHECK(t.value(3, 2) == 0);
    CHECK(t.value(5, 2) == 10);
    CHECK(t.value(0, 0) == 1);
    CHECK(t.value(2, 1) == 1);
}

TEST_CASE("assoc2 vanishes exactly when n < 2m") {
    const auto& t = tables().assoc2;
    for (int n = 1; n <= 40; ++n)
        for (int m = 1; m <= n; ++m) {
            if (n < 2 * m) CHECK(t.value(n, m) == 0);
            else CHECK(t.value(n, m) > 0);
        }
}

TEST_CASE("cycle rows sum to n!, subset rows to Bell numbers") {
    auto bells = bell_numbers(64);
    for (int n = 0; n <= 64; ++n) {
        mpz_class cycle_sum = 0, subset_sum = 0;
        for (int m = 0; m <= n; ++m) {
            cycle_sum += tables().cycle.value(n, m);
            subset_sum += tables().subset.value(n, m);
        }
        CHECK(cycle_sum == factorial(static_cast<unsigned long>(n)));
        CHECK(subset_sum == bells[static_cast<size_t>(n)]);
    }
}

TEST_CASE("index beyond the table bound raises a capacity error naming it") {
    try {
        tables().cycle.value(65, 1);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("64") != std::string::npos);
    }
}

TEST_CASE("generating-function cross-check agrees with every table") {
    CHECK(egf_check(tables().cycle, 2, 10));
    CHECK(egf_check(tables().assoc2, 0, 5)); // (e^z-1-z)^0 = 1
    CHECK(egf_check(tables().subset, 3, 12));
    for (int m = 0; m <= 8; ++m) {
        CHECK(egf_check(tables().cycle, m, 20));
        CHECK(egf_check(tables().subset, m, 20));
        CHECK(egf_check(tables().assoc2, m, 20));
    }
}

TEST_CASE("identity 3c holds on exact integers") {
    CHECK(identity_3c_check(tables(), 4, 2));
    CHECK(identity_3c_check(tables(), 6, 3));
    for (int l = 1; l <= 12; ++l)
        for (int m = 1; m <= l; ++m) CHECK(identity_3c_check(tables(), l, m));
    // l = m: single p=0 term reduces to 1
    for (int l : {1, 5, 20}) CHECK(identity_3c_check(tables(), l, l));
}

TEST_CASE("identity 3c right side at (4,2) is 0 - 4 + 15") {
    mpz_class p0 = tables().assoc2.value(2, 0) * binomial(3, 2);
    mpz_class p1 = tables().assoc2.value(3, 1) * binomial(4, 3);
    mpz_class p2 = tables().assoc2.value(4, 2) * binomial(5, 4);
    CHECK(p0 == 0);
    CHECK(p1 == 4);
    CHECK(p2 == 15);
    CHECK(p0 - p1 + p2 == tables().cycle.value(4, 2));
}

TEST_CASE("rebuilding a table yields bit-identical entries") {
    StirlingTable a(StirlingKind::Assoc2, 40);
    StirlingTable b(StirlingKind::Assoc2, 40);
    for (int n = 0; n <= 40; ++n)
        for (int m = 0; m <= n; ++m) CHECK(a.value(n, m) == b.value(n, m));
}

TEST_CASE("rational series arithmetic inverts cleanly") {
    // revert(2u + u^2) and check round trip through composition
    RatSeries f(8);
    f[1] = 2;
    f[2] = 1;
    RatSeries g = RatSeries::revert(f);
    CHECK(g[1] == mpq_class(1, 2));
    // f(g(v)) = v
    RatSeries comp(8);
    RatSeries p = RatSeries::one(8);
    for (int j = 1; j <= 8; ++j) {
        p = p.mul(g);
        for (int i = 0; i <= 8; ++i) comp[i] += f[j] * p[i];
    }
    CHECK(comp[0] == 0);
    CHECK(comp[1] == 1);
    for (int i = 2; i <= 8; ++i) CHECK(comp[i] == 0);
}
