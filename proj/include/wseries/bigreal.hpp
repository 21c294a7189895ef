#pragma once

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "wseries/errors.hpp"

namespace wseries {

/*
 * Arbitrary-precision real number backed by MPFR. Each value carries its
 * own precision in bits; binary operations produce a result at the larger
 * of the two operand precisions, rounded to nearest.
 */
class BigReal {
public:
    explicit BigReal(mpfr_prec_t prec = 200) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigReal(double d, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigReal(long i, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal from_string(const std::string& s, mpfr_prec_t prec) {
        BigReal r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw UsageError("cannot parse number: " + s);
        return r;
    }
    static BigReal e(mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_ui(r.v_, 1, MPFR_RNDN);
        mpfr_exp(r.v_, r.v_, MPFR_RNDN);
        return r;
    }
    // 2^k, exact
    static BigReal pow2(long k, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_ui_2exp(r.v_, 1, k, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    BigReal round_to(mpfr_prec_t prec) const {
        BigReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(int digits = 20) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(common_prec(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(common_prec(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(common_prec(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(common_prec(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigReal operator-() const {
        BigReal r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
    BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
    BigReal& operator*=(const BigReal& b) { return *this = *this * b; }
    BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

    friend BigReal ln(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal exp(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal expm1(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_expm1(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal log1p(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal abs(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal sqrt(const BigReal& a) {
        BigReal r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal pow(const BigReal& a, const BigReal& b) {
        BigReal r(common_prec(a, b));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal pow_si(const BigReal& a, long k) {
        BigReal r(a.precision());
        mpfr_pow_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

private:
    static mpfr_prec_t common_prec(const BigReal& a, const BigReal& b) {
        mpfr_prec_t pa = mpfr_get_prec(a.v_), pb = mpfr_get_prec(b.v_);
        return pa > pb ? pa : pb;
    }

    mpfr_t v_;
};

} // namespace wseries
