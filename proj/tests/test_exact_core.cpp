#include "catch_amalgamated.hpp"

#include <gmpxx.h>

#include "qhyper/rational.hpp"
#include "qhyper/special.hpp"
#include "qhyper/verify.hpp"

using namespace qhyper;

namespace {

bool canonical(const Rational& r) {
    if (r.den() <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return r.is_zero() ? r.den() == 1 : g == 1;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(3, -6) == Rational(-1, 2));
    REQUIRE((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    REQUIRE(Rational::parse("-22/33") == Rational(-2, 3));
    REQUIRE(Rational(7).str() == "7");
    REQUIRE(Rational(-3, 9).str() == "-1/3");
    REQUIRE_THROWS_AS(Rational(1, 0), PoleError);
    REQUIRE_THROWS_AS(Rational(1) / Rational(0), PoleError);

    SampleRng rng(7);
    for (int i = 0; i < 300; ++i) {
        Rational a(rng.range(-80, 80), rng.range(1, 60));
        Rational b(rng.range(-80, 80), rng.range(1, 60));
        REQUIRE(canonical(a + b));
        REQUIRE(canonical(a - b));
        REQUIRE(canonical(a * b));
        if (!b.is_zero()) {
            Rational q = a / b;
            REQUIRE(canonical(q));
            REQUIRE(q * b == a);
        }
    }
}

TEST_CASE("pochhammer three-case definition") {
    REQUIRE(pochhammer(Rational(3, 2), 0) == Rational(1));
    REQUIRE(pochhammer(Rational(2), 3) == Rational(24));
    REQUIRE(pochhammer(Rational(5), -2) == Rational(1, 12));
    REQUIRE_THROWS_AS(pochhammer(Rational(3), -3), PoleError);

    // double flavour agrees on safe inputs
    REQUIRE(pochhammer(2.0, 3) == 24.0);
    REQUIRE(pochhammer(5.0, -2) == Catch::Approx(1.0 / 12.0));
}

TEST_CASE("pochhammer functional equations") {
    SampleRng rng(11);
    for (int i = 0; i < 120; ++i) {
        Rational a = rng.noninteger();
        long k = rng.range(0, 6), m = rng.range(0, 6);
        REQUIRE(pochhammer(a, k + m) == pochhammer(a, k) * pochhammer(a + Rational(k), m));
    }
    for (int i = 0; i < 120; ++i) {
        Rational a = rng.noninteger();  // non-integer a never hits a zero factor
        long k = rng.range(-6, 6);
        REQUIRE(pochhammer(a, k) * pochhammer(a + Rational(k), -k) == Rational(1));
    }
}

TEST_CASE("q-shifted factorial three-case definition") {
    REQUIRE(q_pochhammer(Rational(7), Rational(1, 3), 0) == Rational(1));
    REQUIRE(q_pochhammer(Rational(1, 2), Rational(1, 2), 2) == Rational(3, 8));
    REQUIRE(q_pochhammer(Rational(2), Rational(1, 2), -1) == Rational(-1, 3));
    REQUIRE_THROWS_AS(q_pochhammer(Rational(1, 2), Rational(1, 2), -1), PoleError);
    REQUIRE_THROWS_AS(q_pochhammer(Rational(2), Rational(1), 1), InvalidBase);
    REQUIRE_THROWS_AS(q_pochhammer(Rational(2), Rational(-1), 1), InvalidBase);
    REQUIRE_THROWS_AS(q_pochhammer(Rational(2), Rational(0), 1), InvalidBase);
}

TEST_CASE("q-pochhammer functional equations") {
    SampleRng rng(13);
    for (int i = 0; i < 120; ++i) {
        Rational a = rng.nonzero();
        const Rational& q = q_rotation()[static_cast<size_t>(i) % q_rotation().size()];
        long n = rng.range(0, 5), m = rng.range(0, 5);
        REQUIRE(q_pochhammer(a, q, n + m) ==
                q_pochhammer(a, q, n) * q_pochhammer(a * power(q, n), q, m));
    }

    // negative index agrees with the reciprocal-shift form
    // (a;q)_{-n} = 1/(a q^{-n};q)_n, used as a cross-check only
    for (int i = 0; i < 120; ++i) {
        const Rational& q = q_rotation()[static_cast<size_t>(i) % q_rotation().size()];
        Rational a = rng.nonzero();
        long n = rng.range(1, 5);
        if (equals_q_power(a, q, -10, 10)) continue;
        REQUIRE(q_pochhammer(a, q, -n) ==
                Rational(1) / q_pochhammer(a * power(q, -n), q, n));
    }
}

TEST_CASE("generalized binomial coefficients") {
    REQUIRE(gen_binomial(Rational(17, 5), 0) == Rational(1));
    REQUIRE(gen_binomial(Rational(-3, 7), 0) == Rational(1));
    REQUIRE(gen_binomial(Rational(1, 2), 2) == Rational(-1, 8));
    REQUIRE(gen_binomial(Rational(3), 5) == Rational(0));

    SampleRng rng(17);
    for (int i = 0; i < 150; ++i) {
        Rational a(rng.range(-40, 40), rng.range(1, 30));
        long k = rng.range(0, 8);
        REQUIRE(gen_binomial(a, k) ==
                pochhammer(a - Rational(k) + Rational(1), k) / factorial<Rational>(k));
    }
}

TEST_CASE("reciprocal factorial convention") {
    REQUIRE(reciprocal_factorial<Rational>(-1) == Rational(0));
    REQUIRE(reciprocal_factorial<Rational>(-5) == Rational(0));
    REQUIRE(reciprocal_factorial<Rational>(0) == Rational(1));
    REQUIRE(reciprocal_factorial<Rational>(4) == Rational(1, 24));
}
