#include "wseries/xparse.hpp"

#include <cctype>

#include "wseries/errors.hpp"

namespace wseries {

namespace {

class Parser {
public:
    Parser(const std::string& text, mpfr_prec_t prec) : s_(text), prec_(prec) {}

    BigReal parse() {
        BigReal v = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw UsageError("trailing characters in expression: '" + s_.substr(pos_) + "'");
        return v;
    }

private:
    BigReal expr() {
        BigReal v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                v += term();
            } else if (peek() == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    BigReal term() {
        BigReal v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                v *= factor();
            } else if (peek() == '/') {
                ++pos_;
                v /= factor();
            } else {
                return v;
            }
        }
    }

    BigReal factor() {
        BigReal base = unary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            BigReal expo = factor(); // right associative
            return pow(base, expo);
        }
        return base;
    }

    BigReal unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return primary();
    }

    BigReal primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            BigReal v = expr();
            skip_ws();
            if (peek() != ')') throw UsageError("expected ')' in expression");
            ++pos_;
            return v;
        }
        if (c == 'e' || c == 'E') {
            ++pos_;
            return BigReal::e(prec_);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        throw UsageError("unexpected character in expression: '" + std::string(1, c) + "'");
    }

    BigReal number() {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        // scientific exponent only when a digit follows, so "2*e" still works
        if (peek() == 'e' || peek() == 'E') {
            size_t save = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        return BigReal::from_string(s_.substr(start, pos_ - start), prec_);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    mpfr_prec_t prec_;
};

} // namespace

BigReal parse_real_expr(const std::string& text, mpfr_prec_t prec) {
    if (text.empty()) throw UsageError("empty expression");
    return Parser(text, prec).parse();
}

} // namespace wseries
