/** @file rational.hpp
 *
 *  Exact rational scalar backed by GMP. All formal computation in the
 *  library is carried out over this field; no operation ever rounds.
 */
#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

#include "qhyper/errors.hpp"

namespace qhyper {

/// Arbitrary-precision rational, always kept canonical: positive
/// denominator, gcd(|num|, den) = 1. Immutable value semantics.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}

    Rational(long num, long den) {
        if (den == 0) throw PoleError("rational with zero denominator");
        v_ = mpq_class(mpz_class(num), mpz_class(den));
        v_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    /// Parses "p", "-p", or "p/q". Throws Error on malformed input.
    static Rational parse(std::string_view text) {
        mpq_class q;
        if (text.empty() || q.set_str(std::string(text), 10) != 0)
            throw Error("cannot parse rational: '" + std::string(text) + "'");
        if (q.get_den() == 0) throw PoleError("rational with zero denominator");
        q.canonicalize();
        return Rational(std::move(q), already_canonical{});
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_nonnegative_integer() const { return is_integer() && sgn(v_) >= 0; }
    int sign() const { return sgn(v_); }

    /// Integer value; caller must check is_integer() and range first.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw Error("rational does not fit a machine integer: " + str());
        return v_.get_num().get_si();
    }

    double to_double() const { return v_.get_d(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    Rational operator-() const { return Rational(-v_, already_canonical{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw PoleError("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw PoleError("inverse of zero");
        return Rational(1 / v_, already_canonical{});
    }

    /// Integer power; negative exponents require a nonzero base.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) return inverse().pow(-e);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(mpq_class(num, den), already_canonical{});
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// Canonical rendering: "p" for integers, "p/q" otherwise.
    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_;
    }

  private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}

    mpq_class v_;
};

/// Carrier for numeric verification mode. Everything numeric is
/// written against this alias (and generically against the scalar
/// type), so a wider floating type can be swapped in at one place.
using NumericScalar = double;

inline bool exactly_zero(const Rational& r) { return r.is_zero(); }
inline bool exactly_zero(double x) { return x == 0.0; }
inline bool exactly_one(const Rational& r) { return r.is_one(); }
inline bool exactly_one(double x) { return x == 1.0; }

inline std::string scalar_str(const Rational& r) { return r.str(); }

/// Decimal rendering with 17 significant digits (round-trips a double).
inline std::string scalar_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace qhyper
