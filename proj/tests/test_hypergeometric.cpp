#include "catch_amalgamated.hpp"

#include "qhyper/hypergeometric.hpp"
#include "qhyper/identities.hpp"
#include "qhyper/verify.hpp"

using namespace qhyper;

namespace {
const std::vector<std::string> X1{"x"};
}

TEST_CASE("ordinary rFs, scalar argument") {
    SECTION("zero upper parameter gives 1") {
        REQUIRE(hyp_f<Rational>({Rational(5, 7), Rational(0)}, {Rational(2, 3)},
                                Rational(9, 10)) == Rational(1));
    }
    SECTION("terminating 2F1 at unit argument") {
        REQUIRE(hyp_f<Rational>({Rational(1), Rational(-1)}, {Rational(2)}, Rational(1)) ==
                Rational(1, 2));
        REQUIRE(vand_rhs(Rational(1), Rational(2), 1) == Rational(1, 2));
    }
    SECTION("exact mode refuses non-terminating series") {
        REQUIRE_THROWS_AS(
            hyp_f<Rational>({Rational(1, 2)}, {Rational(1, 3)}, Rational(1, 2), 64),
            NonTerminating);
    }
    SECTION("lower pole before termination") {
        REQUIRE_THROWS_AS(
            hyp_f<Rational>({Rational(1), Rational(-5)}, {Rational(-2)}, Rational(1)),
            PoleError);
    }
}

TEST_CASE("ordinary rFs, series argument") {
    auto x = SeriesQ::variable(X1, 3, 0);
    auto s = hyp_f<Rational>({Rational(1), Rational(1)}, {Rational(2)}, x);
    REQUIRE(s.coefficient(MultiIndex{0}) == Rational(1));
    REQUIRE(s.coefficient(MultiIndex{1}) == Rational(1, 2));
    REQUIRE(s.coefficient(MultiIndex{2}) == Rational(1, 3));
    REQUIRE(s.coefficient(MultiIndex{3}) == Rational(1, 4));

    SECTION("constant term of any admissible evaluation is 1") {
        auto g = x * Rational(2) - x * x;
        auto v = hyp_f<Rational>({Rational(2, 5), Rational(7, 3)}, {Rational(1, 6)}, g);
        REQUIRE(v.constant_term() == Rational(1));
    }
    SECTION("a zero upper parameter kills everything past the constant term") {
        auto g = x * Rational(5) + x * x * Rational(1, 3);
        REQUIRE(hyp_f<Rational>({Rational(4, 9), Rational(0)}, {Rational(3, 8)}, g) ==
                SeriesQ::constant(X1, 3, Rational(1)));
    }
    SECTION("nonzero constant term requires termination") {
        auto one = SeriesQ::constant(X1, 3, Rational(1));
        REQUIRE_THROWS_AS(
            hyp_f<Rational>({Rational(1, 2)}, {Rational(8, 3)}, one + x),
            NonzeroConstantTerm);
        // terminating: fine even at constant argument
        REQUIRE(hyp_f<Rational>({Rational(-2), Rational(1, 2)}, {Rational(8, 3)}, one + x)
                    .constant_term() ==
                hyp_f<Rational>({Rational(-2), Rational(1, 2)}, {Rational(8, 3)}, Rational(1)));
    }
}

TEST_CASE("Euler's 2F1 transformation as truncated series") {
    SampleRng rng(23);
    for (int i = 0; i < 6; ++i) {
        Rational a = rng.noninteger(9, 9), b = rng.noninteger(9, 9), c = rng.noninteger(9, 9);
        REQUIRE(euler_2f1_lhs_series(a, b, c, 6) == euler_2f1_rhs_series(a, b, c, 6));
    }
}

TEST_CASE("basic series, scalar argument") {
    Rational q(1, 2);
    SECTION("unit upper parameter gives 1") {
        REQUIRE(basic_hyp_phi<Rational>({Rational(3, 4), Rational(1)}, {Rational(1, 6)}, q,
                                        Rational(2, 5)) == Rational(1));
    }
    SECTION("q-Chu-Vandermonde instance, three-term sum") {
        Rational a(1, 3), c(5, 7);
        Rational lhs = basic_hyp_phi<Rational>({a, power(q, -2)}, {c}, q, q);
        REQUIRE(lhs == a * a * q_pochhammer(c / a, q, 2) / q_pochhammer(c, q, 2));
    }
    SECTION("exact mode refuses non-terminating series") {
        REQUIRE_THROWS_AS(
            basic_hyp_phi<Rational>({Rational(1, 3)}, {Rational(1, 5)}, q, q, 64),
            NonTerminating);
    }
}

TEST_CASE("q-shifted factorial of a series") {
    Rational q(1, 3), beta(2, 7);
    const std::vector<std::string> XYV{"x", "y"};
    auto y = SeriesQ::variable(XYV, 2, 1);
    SECTION("empty product") {
        REQUIRE(qpoch_series(y, q, 0) == SeriesQ::constant(XYV, 2, Rational(1)));
    }
    SECTION("two factors expanded") {
        auto s = qpoch_series(y * beta, q, 2);
        REQUIRE(s.coefficient(MultiIndex{0, 0}) == Rational(1));
        REQUIRE(s.coefficient(MultiIndex{0, 1}) == -beta * (Rational(1) + q));
        REQUIRE(s.coefficient(MultiIndex{0, 2}) == beta * beta * q);
    }
    SECTION("product splitting") {
        SampleRng rng(29);
        for (int i = 0; i < 10; ++i) {
            auto u = y * Rational(rng.range(-5, 5), rng.range(1, 5)) +
                     SeriesQ::variable(XYV, 2, 0) * Rational(rng.range(-5, 5), rng.range(1, 5));
            long n = rng.range(0, 3), m = rng.range(0, 3);
            REQUIRE(qpoch_series(u, q, n) * qpoch_series(u * power(q, n), q, m) ==
                    qpoch_series(u, q, n + m));
        }
    }
}

TEST_CASE("very-well-poised 8phi7") {
    Rational q(1, 2);
    SECTION("series argument with zero constant term has unit constant term") {
        auto x = SeriesQ::variable(X1, 3, 0);
        std::array<Rational, 5> lat{Rational(1, 3), Rational(1, 5), Rational(2, 7),
                                    Rational(3, 5), Rational(5, 9)};
        auto v = vwp_8phi7(Rational(1, 6), lat, q, x * Rational(1, 4));
        REQUIRE(v.constant_term() == Rational(1));
    }
    SECTION("transformation holds exactly on terminating instances") {
        Rational a(1, 5), b(1, 2), c(1, 3), d(1, 7), f(2, 3);
        Rational lhs = bailey_lhs(a, b, c, d, f, q, 3);
        Rational rhs = bailey_rhs(a, b, c, d, f, q, 3);
        REQUIRE(lhs == rhs);
        REQUIRE(lhs == Rational::parse("13860307/30464357"));
    }
    SECTION("lateral q^{-N} terminates at depth N exactly") {
        Rational a(1, 5), b(1, 2), c(1, 3), d(1, 7), f(2, 3);
        // a cap of N+1 terms must already produce the full value
        Rational e = power(q, -4);
        std::array<Rational, 5> lat{b, c, d, e, f};
        Rational arg = a * a * q * q / (b * c * d * e * f);
        REQUIRE(vwp_8phi7(a, lat, q, arg, 5) == vwp_8phi7(a, lat, q, arg));
    }
    SECTION("unit a-parameter is rejected") {
        std::array<Rational, 5> lat{Rational(1, 3), Rational(1, 5), Rational(2, 7),
                                    Rational(3, 5), Rational(5, 9)};
        REQUIRE_THROWS_AS(vwp_8phi7(Rational(1), lat, q, Rational(1, 9)), PoleError);
    }
}

TEST_CASE("formal 8phi7 with series parameters reproduces the triple sum") {
    // prefactored very-well-poised form of the analytic derivation,
    // checked coefficientwise against the plain triple sum
    SampleRng rng(37);
    for (int i = 0; i < 2; ++i) {
        GGRParameters p{rng.nonzero(5, 7), rng.nonzero(5, 7), rng.nonzero(5, 7),
                        q_rotation()[static_cast<size_t>(i)]};
        if (!q_power_free(p.alpha * p.beta, *p.q) || !q_power_free(p.gamma, *p.q)) {
            --i;
            continue;
        }
        auto lhs = xyz_series_from(
            [&](long X, long Y, long Z) { return ggrq1_lhs_coefficient(p, X, Y, Z); }, 4);
        REQUIRE(eq8phi7_rhs_series(p, 4) == lhs);
    }
}

TEST_CASE("bilateral 1psi1") {
    SECTION("b = q reduces to the q-binomial theorem") {
        double a = 1.5, q = 0.5, z = 0.6;
        double sum = bilateral_1psi1(a, q, q, z, 1e-12);
        double product = q_pochhammer_inf(a * z, q) / q_pochhammer_inf(z, q);
        REQUIRE(std::abs(sum - product) < 1e-10);
        // negative-n terms vanish, so the full product form agrees too
        REQUIRE(std::abs(sum - ramanujan_1psi1_product(a, q, q, z)) < 1e-10);
    }
    SECTION("interior point") {
        double sum = bilateral_1psi1(2.0, 0.25, 0.5, 0.5, 1e-12);
        double product = ramanujan_1psi1_product(2.0, 0.25, 0.5, 0.5);
        REQUIRE(std::abs(sum - product) <= 1e-10 * std::max(1.0, std::abs(sum)));
    }
    SECTION("annulus violations are rejected") {
        REQUIRE_THROWS_AS(bilateral_1psi1(2.0, 0.25, 0.5, 1.5, 1e-12), OutOfAnnulus);
        REQUIRE_THROWS_AS(bilateral_1psi1(2.0, 1.9, 0.5, 0.5, 1e-12), OutOfAnnulus);
        REQUIRE_THROWS_AS(bilateral_1psi1(2.0, 0.25, 1.5, 0.5, 1e-12), InvalidBase);
    }
}
