#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wseries/errors.hpp"
#include "wseries/oracle.hpp"

using namespace wseries;

TEST_CASE("solve_w at the trivial points") {
    auto zero = solve_w(BigReal(0L, 200), 200);
    CHECK(zero.root.is_zero());
    CHECK(zero.residual.is_zero());

    auto at_e = solve_w(BigReal::e(200), 200);
    CHECK(abs(at_e.root - BigReal(1L, 200)) < BigReal::pow2(-190, 200));
}

TEST_CASE("solve_w(2) to 20 digits with tight residual") {
    auto rep = solve_w(BigReal(2L, 200), 200);
    BigReal expected = BigReal::from_string("0.85260550201372549134", 200);
    CHECK(abs(rep.root - expected) < BigReal::from_string("1e-18", 200));
    CHECK(rep.residual < BigReal::pow2(-188, 200));
}

TEST_CASE("solve_w rejects negative arguments") {
    CHECK_THROWS_AS(solve_w(BigReal(-1L, 200), 200), DomainError);
}

TEST_CASE("solve_phi fixed points") {
    // 1^alpha e = e for any alpha
    for (long a : {1L, 2L, 7L}) {
        auto rep = solve_phi(BigReal::e(200), BigReal(a, 200), 200);
        CHECK(abs(rep.root - BigReal(1L, 200)) < BigReal::pow2(-188, 200));
    }
    // 2^2 e^2 = 4 e^2
    BigReal x = BigReal(4L, 200) * exp(BigReal(2L, 200));
    auto rep = solve_phi(x, BigReal(2L, 200), 200);
    CHECK(abs(rep.root - BigReal(2L, 200)) < BigReal::pow2(-188, 200));
}

TEST_CASE("solve_phi negative alpha stays on the y > -alpha branch") {
    // alpha=-1 requires x > e; use x = 2e
    BigReal x = BigReal(2L, 200) * BigReal::e(200);
    auto rep = solve_phi(x, BigReal(-1L, 200), 200);
    CHECK(rep.root > BigReal(1L, 200));
    CHECK(rep.residual < BigReal::pow2(-188, 200));
    // below the branch-point value e^{-alpha}(-alpha)^alpha = e there is no root
    BigReal below = BigReal::e(200) * (BigReal(1L, 200) - BigReal::pow2(-100, 200));
    CHECK_THROWS_AS(solve_phi(below, BigReal(-1L, 200), 200), DomainError);
    CHECK_THROWS_AS(solve_phi(BigReal(2L, 200), BigReal(-1L, 200), 200), DomainError);
}

TEST_CASE("residual contract on random arguments") {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> expo(-40.0, 46.0);
    for (mpfr_prec_t P : {mpfr_prec_t(64), mpfr_prec_t(200)}) {
        BigReal bound = BigReal::pow2(-(P - 12), P);
        for (int i = 0; i < 50; ++i) {
            BigReal x = exp(BigReal(expo(rng), P));
            auto rep = solve_w(x, P);
            CHECK(rep.residual <= bound);
        }
    }
}

TEST_CASE("doubling precision moves the root less than the old error bound") {
    for (const char* xs : {"2", "1e10", "0.25"}) {
        BigReal x = BigReal::from_string(xs, 420);
        BigReal lo = solve_w(x, 200).root;
        BigReal hi = solve_w(x, 400).root;
        CHECK(abs(lo - hi) < BigReal::pow2(-188, 420) * abs(hi));
    }
}

TEST_CASE("solve_w is strictly increasing on the sampled grid") {
    const char* grid[] = {"0.5", "1", "2", "2.718281828459045", "10", "1e3", "1e10"};
    BigReal prev(-1L, 200);
    for (const char* xs : grid) {
        BigReal root = solve_w(BigReal::from_string(xs, 200), 200).root;
        CHECK(root > prev);
        prev = root;
    }
}

TEST_CASE("solve_phi at alpha=1 agrees with solve_w") {
    for (const char* xs : {"0.7", "2", "3.1", "1e5", "1e20"}) {
        BigReal x = BigReal::from_string(xs, 200);
        BigReal a = solve_phi(x, BigReal(1L, 200), 200).root;
        BigReal b = solve_w(x, 200).root;
        CHECK(abs(a - b) <= BigReal::pow2(-184, 200) * abs(b));
    }
}

TEST_CASE("Taylor coefficients of W about e") {
    auto c = taylor_coeffs_at_e(4, 300);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == BigReal(1L, 300));
    BigReal e = BigReal::e(300);
    CHECK(abs(c[1] - BigReal(1L, 300) / (BigReal(2L, 300) * e)) < BigReal::pow2(-290, 300));
    // W'' (e)/2 = -3/(16 e^2)
    BigReal c2 = BigReal(-3L, 300) / (BigReal(16L, 300) * e * e);
    CHECK(abs(c[2] - c2) < BigReal::pow2(-290, 300));
}

TEST_CASE("central differences of solve_w reproduce coefficients 1 and 2") {
    const mpfr_prec_t P = 300;
    auto c = taylor_coeffs_at_e(3, P);
    BigReal e = BigReal::e(P);
    BigReal h = BigReal::pow2(-70, P);
    auto w = [&](const BigReal& x) { return solve_w(x, P).root; };
    BigReal two(2L, P);
    BigReal d1 = (w(e + h) - w(e - h)) / (two * h);
    BigReal d2 = (w(e + h) - two * w(e) + w(e - h)) / (h * h);
    BigReal digits20 = BigReal::from_string("1e-20", P);
    CHECK(abs(d1 - c[1]) < digits20);
    CHECK(abs(d2 / two - c[2]) < digits20);
}

TEST_CASE("solve_phi rejects nonpositive x") {
    CHECK_THROWS_AS(solve_phi(BigReal(0L, 200), BigReal(1L, 200), 200), DomainError);
}
