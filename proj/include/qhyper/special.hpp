/** @file special.hpp
 *
 *  Scalar special functions used throughout: rising factorials
 *  (Pochhammer symbols), q-shifted factorials and generalized binomial
 *  coefficients, each supporting negative indices.
 *
 *  Generic over the scalar type so the same definitions serve exact
 *  (Rational) and numeric (double) evaluation.
 */
#pragma once

#include <string>

#include "qhyper/errors.hpp"
#include "qhyper/rational.hpp"

namespace qhyper {

/// Scalar integer power usable for both Rational and double.
inline Rational power(const Rational& b, long e) { return b.pow(e); }
inline double power(double b, long e) {
    if (e < 0) {
        if (b == 0.0) throw PoleError("zero raised to a negative power");
        return 1.0 / power(b, -e);
    }
    double r = 1.0;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

/// n! as a scalar; n must be nonnegative.
template <typename S>
S factorial(long n) {
    S r(1);
    for (long i = 2; i <= n; ++i) r *= S(i);
    return r;
}

/// Reciprocal factorial 1/n! with the reciprocal-Gamma convention:
/// exactly zero for negative integer n.
template <typename S>
S reciprocal_factorial(long n) {
    if (n < 0) return S(0);
    return S(1) / factorial<S>(n);
}

/// n(n-1)/2, the exponent in Euler's expansion and the q-power prefactors.
inline long choose2(long n) { return n * (n - 1) / 2; }

/// (a)_k = a(a+1)...(a+k-1) for k>0, (a)_0 = 1, (a)_k = 1/(a+k)_{-k} for k<0.
/// Throws PoleError when the negative-index case divides by a zero factor.
template <typename S>
S pochhammer(const S& a, long k) {
    if (k >= 0) {
        S r(1);
        for (long i = 0; i < k; ++i) r *= a + S(i);
        return r;
    }
    S r(1);
    for (long i = 0; i < -k; ++i) {
        S factor = a + S(k + i);
        if (exactly_zero(factor))
            throw PoleError("pochhammer with negative index hit a zero factor",
                            "(" + scalar_str(a) + ")+(" + std::to_string(k + i) + ")");
        r *= factor;
    }
    return S(1) / r;
}

/// q must stay away from 0 and +-1, the only rational roots of unity;
/// they break every (q;q)_n denominator.
template <typename S>
void check_q_base(const S& q) {
    if (exactly_zero(q) || exactly_one(q) || exactly_one(S(0) - q))
        throw InvalidBase("q must avoid 0, 1 and -1; got q = " + scalar_str(q));
}

/// (a;q)_n with the three-case definition:
///   prod_{i=0}^{n-1} (1-aq^i) for n>0, 1 for n=0,
///   prod_{i=0}^{-n-1} (1-aq^{n+i})^{-1} for n<0.
template <typename S>
S q_pochhammer(const S& a, const S& q, long n) {
    check_q_base(q);
    if (n >= 0) {
        S r(1);
        S aq = a;
        for (long i = 0; i < n; ++i) {
            r *= S(1) - aq;
            aq *= q;
        }
        return r;
    }
    S r(1);
    S aq = a * power(q, n);
    for (long i = 0; i < -n; ++i) {
        S factor = S(1) - aq;
        if (exactly_zero(factor))
            throw PoleError("q-pochhammer with negative index hit a zero factor",
                            "1-(" + scalar_str(a) + ")*q^(" + std::to_string(n + i) + ")");
        r *= factor;
        aq *= q;
    }
    return S(1) / r;
}

/// binom(a, k) = a(a-1)...(a-k+1)/k!, k >= 0; a may be any scalar.
template <typename S>
S gen_binomial(const S& a, long k) {
    if (k < 0) throw Error("gen_binomial requires k >= 0");
    S num(1);
    for (long i = 0; i < k; ++i) num *= a - S(i);
    return num / factorial<S>(k);
}

}  // namespace qhyper
