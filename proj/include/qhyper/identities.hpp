/** @file identities.hpp
 *
 *  Side builders for the identity catalogue. Each identity gets
 *  independently-built sides wherever possible: closed coefficient
 *  formulas, constrained multiple-sum brute force, series-ring
 *  composition, numeric evaluation.
 */
#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qhyper/errors.hpp"
#include "qhyper/hypergeometric.hpp"
#include "qhyper/parameters.hpp"
#include "qhyper/rational.hpp"
#include "qhyper/series.hpp"
#include "qhyper/special.hpp"

namespace qhyper {

using SeriesQ = TruncatedSeries<Rational>;

inline const std::vector<std::string>& xyz_vars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}

/// Assembles a series in x,y,z from a per-monomial coefficient rule.
template <typename F>
SeriesQ xyz_series_from(F&& coefficient, int order) {
    SeriesQ s(xyz_vars(), order);
    for (int X = 0; X <= order; ++X)
        for (int Y = 0; Y + X <= order; ++Y)
            for (int Z = 0; Z + X + Y <= order; ++Z)
                s.set(MultiIndex{X, Y, Z}, coefficient(X, Y, Z));
    return s;
}

// ---------------------------------------------------------------------------
// Classical triple-sum identity
// ---------------------------------------------------------------------------

/// Coefficient of x^X y^Y z^Z in the triple-sum side:
/// (alpha)_X (beta)_Y (1-gamma)_Z (gamma)_{X+Y-Z} /
/// (X! Y! Z! (alpha+beta)_{X+Y-Z}).
inline Rational ggr_lhs_coefficient(const GGRParameters& p, long X, long Y, long Z) {
    return pochhammer(p.alpha, X) * pochhammer(p.beta, Y) *
           pochhammer(Rational(1) - p.gamma, Z) * pochhammer(p.gamma, X + Y - Z) /
           (factorial<Rational>(X) * factorial<Rational>(Y) * factorial<Rational>(Z) *
            pochhammer(p.alpha + p.beta, X + Y - Z));
}

enum class GgrVariant { ggr1, ggr2 };

/// Coefficient of x^X y^Y z^Z in the single-sum side, written as the
/// constrained six-fold sum over the expansion indices of the
/// prefactors and the 2F1. Finite because the binomial binom(n,m)
/// vanishes for m > n and the monomial constraints pin three indices.
inline Rational ggr_multiple_sum_coefficient(GgrVariant v, const GGRParameters& p,
                                             long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational sum(0);
    if (v == GgrVariant::ggr1) {
        // constraints: i+l+n-m = X, j+m = Y, k+l = Z
        for (long j = 0; j <= Y; ++j) {
            long m = Y - j;
            for (long k = 0; k <= Z; ++k) {
                long l = Z - k;
                for (long n = m; n <= X + m - l; ++n) {
                    long i = X - l - n + m;
                    Rational t = (i + j + k + l + m) % 2 ? Rational(-1) : Rational(1);
                    t *= pochhammer(be, n) * pochhammer(al + be - ga, n) /
                         (factorial<Rational>(n) * pochhammer(al + be, n));
                    t *= gen_binomial(be - ga, i) * gen_binomial(Rational(0) - be - Rational(n), j) *
                         gen_binomial(al + be + Rational(n - 1), k) *
                         gen_binomial(ga - al - be - Rational(n), l) *
                         gen_binomial(Rational(n), m);
                    sum += t;
                }
            }
        }
        return sum;
    }
    // constraints: i+l+m = X, j+n-m = Y, j+k+l = Z
    for (long i = 0; i <= X; ++i)
        for (long l = 0; l <= X - i; ++l) {
            long m = X - i - l;
            for (long j = 0; j <= Z - l; ++j) {
                long k = Z - j - l;
                long n = Y - j + m;
                if (n < 0 || k < 0) continue;
                Rational t = (i + j + k + l + m) % 2 ? Rational(-1) : Rational(1);
                t *= pochhammer(be, n) * pochhammer(ga, n) /
                     (factorial<Rational>(n) * pochhammer(al + be, n));
                t *= gen_binomial(Rational(0) - ga - Rational(n), i) *
                     gen_binomial(Rational(0) - be - Rational(n), j) *
                     gen_binomial(al + be + Rational(n - 1), k) *
                     gen_binomial(ga - al, l) * gen_binomial(Rational(n), m);
                sum += t;
            }
        }
    return sum;
}

inline SeriesQ ggr0_series(const GGRParameters& p, int order) {
    return xyz_series_from(
        [&](long X, long Y, long Z) { return ggr_lhs_coefficient(p, X, Y, Z); }, order);
}

/// (1-z)^{a+b-1} (1-xz)^{g-a-b} (1-x)^{b-g} (1-y)^{-b}
///   * 2F1[b, a+b-g; a+b; (x-y)(1-z)/((1-y)(1-xz))]
inline SeriesQ ggr1_series(const GGRParameters& p, int order) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    auto one = SeriesQ::constant(xyz_vars(), order, Rational(1));
    auto x = SeriesQ::variable(xyz_vars(), order, 0);
    auto y = SeriesQ::variable(xyz_vars(), order, 1);
    auto z = SeriesQ::variable(xyz_vars(), order, 2);
    SeriesQ pre = series_pow(one - z, al + be - Rational(1)) *
                  series_pow(one - x * z, ga - al - be) *
                  series_pow(one - x, be - ga) * series_pow(one - y, Rational(0) - be);
    SeriesQ g = (x - y) * (one - z) * series_invert((one - y) * (one - x * z));
    return pre * hyp_f<Rational>({be, al + be - ga}, {al + be}, g);
}

/// (1-z)^{a+b-1} (1-xz)^{g-a} (1-x)^{-g} (1-yz)^{-b}
///   * 2F1[b, g; a+b; (y-x)(1-z)/((1-x)(1-yz))]
inline SeriesQ ggr2_series(const GGRParameters& p, int order) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    auto one = SeriesQ::constant(xyz_vars(), order, Rational(1));
    auto x = SeriesQ::variable(xyz_vars(), order, 0);
    auto y = SeriesQ::variable(xyz_vars(), order, 1);
    auto z = SeriesQ::variable(xyz_vars(), order, 2);
    SeriesQ pre = series_pow(one - z, al + be - Rational(1)) *
                  series_pow(one - x * z, ga - al) *
                  series_pow(one - x, Rational(0) - ga) *
                  series_pow(one - y * z, Rational(0) - be);
    SeriesQ g = (y - x) * (one - z) * series_invert((one - x) * (one - y * z));
    return pre * hyp_f<Rational>({be, ga}, {al + be}, g);
}

// ---------------------------------------------------------------------------
// Proof-replay stage values for the two classical reduction chains.
//
// Stages follow the classical derivation: (1) the constrained multiple
// sum, (2) the double sum with an inner terminating 2F1, (3) the single
// sum, (4) the final 3F2 (directly and via the Pfaff-Saalschutz closed
// form), (5) the compact coefficient. Displays whose 1/(J)! prefactor
// meets an integer lower 2F1 parameter 1+J are evaluated with both
// merged into the single factor 1/(J+l)!, zero for negative argument;
// the separate factors are individually ill-defined at J < 0.
// ---------------------------------------------------------------------------

/// sum_{l=0}^{M} (A)_l (-M)_l / l! * 1/(J+l)!  (reciprocal-Gamma convention)
inline Rational f21_with_merged_factorial(const Rational& A, long M, long J) {
    Rational s(0);
    for (long l = 0; l <= M; ++l) {
        Rational rf = reciprocal_factorial<Rational>(J + l);
        if (rf.is_zero()) continue;
        s += pochhammer(A, l) * pochhammer(Rational(-M), l) / factorial<Rational>(l) * rf;
    }
    return s;
}

inline Rational ggr1_stage2(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational sum(0);
    for (long i = 0; i <= X + Z; ++i)
        for (long k = 0; k <= Z; ++k) {
            Rational pre = reciprocal_factorial<Rational>(k + X - Z - i) *
                           reciprocal_factorial<Rational>(Z - k);
            if (pre.is_zero()) continue;
            Rational t = (Y + Z) % 2 ? Rational(-1) : Rational(1);
            t *= pochhammer(be, k + X + Y - Z - i) * pochhammer(al + be - ga, k + X + Y - Z - i) *
                 pochhammer(ga - be, i);
            t /= factorial<Rational>(i) * factorial<Rational>(k) * factorial<Rational>(Y);
            t *= pre * pochhammer(Rational(1) - al - be + ga + Rational(i - X - Y), Z - k) /
                 pochhammer(al + be, X + Y - Z - i);
            t *= hyp_f<Rational>({Rational(1) - al - be + Rational(i - X - Y + Z), Rational(-Y)},
                                 {Rational(1) - al - be + ga + Rational(i - X - Y)}, Rational(1));
            sum += t;
        }
    return sum;
}

inline Rational ggr1_stage3(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational sum(0);
    for (long i = 0; i <= X; ++i) {
        Rational t = pochhammer(be, X + Y - Z - i) * pochhammer(al + be - ga, X - i) *
                     pochhammer(ga - be, i);
        t /= factorial<Rational>(i) * factorial<Rational>(Y) * factorial<Rational>(Z);
        t *= pochhammer(ga - Rational(Z), Y) / pochhammer(al + be, X + Y - Z - i);
        t *= f21_with_merged_factorial(be + Rational(X + Y - Z - i), Z, X - Z - i);
        sum += t;
    }
    return sum;
}

inline Rational ggr1_stage4(const GGRParameters& p, long X, long Y, long Z, bool closed) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational pre = pochhammer(be, X + Y - Z) * pochhammer(al + be - ga, X) *
                   pochhammer(Rational(1) - be - Rational(Y), Z) *
                   pochhammer(ga - Rational(Z), Y) /
                   (factorial<Rational>(X) * factorial<Rational>(Y) * factorial<Rational>(Z) *
                    pochhammer(al + be, X + Y - Z));
    Rational a = Rational(1) - al - be - Rational(X + Y - Z);
    Rational b = ga - be;
    Rational c = Rational(1) - be - Rational(X + Y - Z);
    Rational d = Rational(1) - al - be + ga - Rational(X);
    if (closed)
        return pre * pochhammer(c - a, X) * pochhammer(c - b, X) /
               (pochhammer(c, X) * pochhammer(c - a - b, X));
    return pre * hyp_f<Rational>({a, b, Rational(-X)}, {c, d}, Rational(1));
}

inline Rational ggr2_stage2(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational sum(0);
    for (long i = 0; i <= X; ++i)
        for (long l = 0; l <= Z; ++l) {
            Rational pre = reciprocal_factorial<Rational>(X - i - l) *
                           reciprocal_factorial<Rational>(Z - l);
            if (pre.is_zero()) continue;
            Rational t = (X + l + i) % 2 ? Rational(-1) : Rational(1);
            t *= pochhammer(be, X + Y - i - l) * pochhammer(al - ga, l) *
                 pochhammer(ga, X + Y - Z);
            t /= factorial<Rational>(i) * factorial<Rational>(l);
            t *= pre / pochhammer(al + be, X + Y - Z - i);
            t *= f21_with_merged_factorial(ga + Rational(X + Y - Z), Z - l, Y + l - Z);
            sum += t;
        }
    return sum;
}

inline Rational ggr2_stage3(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational sum(0);
    long lmax = std::min(X, Z);
    for (long l = 0; l <= lmax; ++l) {
        Rational t = (X + l) % 2 ? Rational(-1) : Rational(1);
        t *= pochhammer(be, X + Y - l) * pochhammer(al - ga, l) * pochhammer(ga, X + Y - Z) *
             pochhammer(Rational(1) - ga + Rational(l - X), Z - l);
        t /= factorial<Rational>(l) * factorial<Rational>(X - l) * factorial<Rational>(Y) *
             factorial<Rational>(Z - l) * pochhammer(al + be, X + Y - Z);
        t *= hyp_f<Rational>({Rational(1) - al - be - Rational(X + Y - Z), Rational(l - X)},
                             {Rational(1) - be + Rational(l - X - Y)}, Rational(1));
        sum += t;
    }
    return sum;
}

inline Rational ggr2_stage4(const GGRParameters& p, long X, long Y, long Z, bool closed) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma;
    Rational pre = (X % 2 ? Rational(-1) : Rational(1)) * pochhammer(be, X + Y) *
                   pochhammer(ga, X + Y - Z) *
                   pochhammer(Rational(1) - ga - Rational(X), Z) *
                   pochhammer(al - Rational(Z), X) /
                   (factorial<Rational>(X) * factorial<Rational>(Y) * factorial<Rational>(Z) *
                    pochhammer(al + be, X + Y - Z) *
                    pochhammer(Rational(1) - be - Rational(X + Y), X));
    Rational a = al - ga;
    Rational c = Rational(1) - ga - Rational(X);
    Rational d = al - Rational(Z);
    if (closed)
        return pre * pochhammer(c - a, X) * pochhammer(c + Rational(Z), X) /
               (pochhammer(c, X) * pochhammer(c - a + Rational(Z), X));
    return pre * hyp_f<Rational>({a, Rational(-Z), Rational(-X)}, {c, d}, Rational(1));
}

// ---------------------------------------------------------------------------
// q-analogue coefficients
// ---------------------------------------------------------------------------

/// Triple-sum coefficient of the first formal q-analogue, including its
/// q- and parameter-power prefactor.
inline Rational ggrq_lhs_coefficient(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma, &q = *p.q;
    Rational t = power(q, -choose2(Y) - choose2(Z)) * power(al, -Z) * power(be, X - Z) *
                 power(ga, 2 * Z - X - Y);
    t *= q_pochhammer(al, q, X) * q_pochhammer(be, q, Y) * q_pochhammer(q / ga, q, Z) *
         q_pochhammer(ga, q, X + Y - Z);
    t /= q_pochhammer(q, q, X) * q_pochhammer(q, q, Y) * q_pochhammer(q, q, Z) *
         q_pochhammer(al * be, q, X + Y - Z);
    return t;
}

/// Plain triple-sum coefficient shared by the second formal q-analogue
/// and all analytic q-analogues.
inline Rational ggrq1_lhs_coefficient(const GGRParameters& p, long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma, &q = *p.q;
    return q_pochhammer(al, q, X) * q_pochhammer(be, q, Y) * q_pochhammer(q / ga, q, Z) *
           q_pochhammer(ga, q, X + Y - Z) /
           (q_pochhammer(q, q, X) * q_pochhammer(q, q, Y) * q_pochhammer(q, q, Z) *
            q_pochhammer(al * be, q, X + Y - Z));
}

enum class QVariant { ggrq, ggrq1 };

/// Exact finite sum over all six indices matching the monomial
/// constraints; the factor (q^{-n};q)_m annihilates m > n, which makes
/// the index set finite.
inline Rational ggrq_rhs_coefficient_bruteforce(QVariant v, const GGRParameters& p,
                                                long X, long Y, long Z) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma, &q = *p.q;
    Rational sum(0);
    if (v == QVariant::ggrq) {
        // monomial x^{i+l+n-m} y^{j+m} z^{k+l}
        for (long j = 0; j <= Y; ++j) {
            long m = Y - j;
            for (long k = 0; k <= Z; ++k) {
                long l = Z - k;
                for (long n = m; n <= X + m - l; ++n) {
                    long i = X - l - n + m;
                    Rational t = power(q, m * n - k * l - j * m - l * n - choose2(j) -
                                              choose2(k) - choose2(l) - choose2(m));
                    t *= power(al, -l) * power(be, i - l) * power(ga, -i - j + k + l);
                    t *= q_pochhammer(be, q, n) * q_pochhammer(al * be / ga, q, n) /
                         (q_pochhammer(al * be, q, n) * q_pochhammer(q, q, n));
                    t *= q_pochhammer(ga / be, q, i) * q_pochhammer(be * power(q, n), q, j) *
                         q_pochhammer(power(q, 1 - n) / (al * be), q, k) *
                         q_pochhammer(al * be * power(q, n) / ga, q, l) *
                         q_pochhammer(power(q, -n), q, m);
                    t /= q_pochhammer(q, q, i) * q_pochhammer(q, q, j) * q_pochhammer(q, q, k) *
                         q_pochhammer(q, q, l) * q_pochhammer(q, q, m);
                    sum += t;
                }
            }
        }
        return sum;
    }
    // monomial x^{i+l+m} y^{j+n-m} z^{j+k+l}
    for (long i = 0; i <= X; ++i)
        for (long l = 0; l <= X - i; ++l) {
            long m = X - i - l;
            for (long j = 0; j <= Z - l; ++j) {
                long k = Z - j - l;
                long n = Y - j + m;
                if (n < 0 || k < 0) continue;
                if (m > n) continue;  // (q^{-n};q)_m = 0
                Rational t = power(q, k * n - i * n + m);
                t *= power(al, k) * power(be, k - i - m) * power(ga, -k);
                t *= q_pochhammer(be, q, n) * q_pochhammer(ga, q, n) /
                     (q_pochhammer(al * be, q, n) * q_pochhammer(q, q, n));
                t *= q_pochhammer(ga * power(q, n), q, i) * q_pochhammer(be * power(q, n), q, j) *
                     q_pochhammer(power(q, 1 - n) / (al * be), q, k) *
                     q_pochhammer(al / ga, q, l) * q_pochhammer(power(q, -n), q, m);
                t /= q_pochhammer(q, q, i) * q_pochhammer(q, q, j) * q_pochhammer(q, q, k) *
                     q_pochhammer(q, q, l) * q_pochhammer(q, q, m);
                sum += t;
            }
        }
    return sum;
}

// ---------------------------------------------------------------------------
// Formal right-hand sides built in the series ring
// ---------------------------------------------------------------------------

/// Infinite q-product quotient prod (num_i;q)_inf / prod (den_i;q)_inf,
/// all arguments series with zero constant term.
inline SeriesQ qprod_quotient(const std::vector<SeriesQ>& num, const std::vector<SeriesQ>& den,
                              const Rational& q) {
    SeriesQ r = SeriesQ::constant(num.at(0).vars(), num.at(0).order(), Rational(1));
    for (const auto& u : num) r = r * q_product_inf(u, q);
    for (const auto& u : den) r = r * series_invert(q_product_inf(u, q));
    return r;
}

/// Compact q-analogue right side: four infinite-product quotients times
/// a balanced 4phi3 with argument q. The two parameters carrying 1/x
/// are paired into the polynomial quotient
/// prod_i (x - beta y q^i) / (x - beta q^{1+i}), which is a genuine
/// power series; every l-th term then has minimum total degree l.
inline SeriesQ ggrq2_rhs_series(const GGRParameters& p, int order) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma, &q = *p.q;
    auto one = SeriesQ::constant(xyz_vars(), order, Rational(1));
    auto x = SeriesQ::variable(xyz_vars(), order, 0);
    auto y = SeriesQ::variable(xyz_vars(), order, 1);
    auto z = SeriesQ::variable(xyz_vars(), order, 2);

    SeriesQ pref = qprod_quotient(
        {x * (ga / be), z * (q / ga), x * z * (al / ga), y * z * be},
        {x * (Rational(1) / be), z * (al * be / ga), x * z, y * z}, q);

    SeriesQ u1 = z * (al * be / ga);  // upper alpha*beta*z/gamma
    SeriesQ u2 = y * z * be;          // lower beta*y*z
    SeriesQ sum(xyz_vars(), order);
    for (long l = 0;; ++l) {
        Rational scal = q_pochhammer(be, q, l) * q_pochhammer(ga, q, l) /
                        (q_pochhammer(q, q, l) * q_pochhammer(al * be, q, l)) * power(q, l);
        SeriesQ term = qpoch_series(u1, q, l) * series_invert(qpoch_series(u2, q, l)) * scal;
        for (long i = 0; i < l; ++i) {
            term = term * (x - y * (be * power(q, i)));
            term = term * series_invert(x - one * (be * power(q, i + 1)));
        }
        sum = sum + term;
        if (term.low_degree() > order) break;
    }
    return pref * sum;
}

/// The very-well-poised form of the analytic derivation, before the
/// final transformation: prefactor times an 8phi7 whose a-parameter is
/// the series alpha*beta*y/q. Used as a formal cross-check of the
/// series 8phi7 evaluator.
inline SeriesQ eq8phi7_rhs_series(const GGRParameters& p, int order) {
    const Rational &al = p.alpha, &be = p.beta, &ga = p.gamma, &q = *p.q;
    auto one = SeriesQ::constant(xyz_vars(), order, Rational(1));
    auto x = SeriesQ::variable(xyz_vars(), order, 0);
    auto y = SeriesQ::variable(xyz_vars(), order, 1);
    auto z = SeriesQ::variable(xyz_vars(), order, 2);

    SeriesQ pref = qprod_quotient(
        {x * al, y * be, y * ga, z * (q / ga), y * z * (al * be / ga)},
        {x, y, y * (al * be), z * (al * be / ga), y * z}, q);

    SeriesQ a = y * (al * be / q);
    std::array<VwpLateral<Rational>, 5> lateral{
        VwpLateral<Rational>{one * al, -1},
        VwpLateral<Rational>{y, -1},
        VwpLateral<Rational>{one * ga, 2},        // gamma / z
        VwpLateral<Rational>{one * (al * be / ga), -1},
        VwpLateral<Rational>{y * be, 0},          // beta y / x
    };
    std::array<SeriesQ, 5> lower{y * be, one * (al * be), y * z * (al * be / ga), y * ga, x * al};
    return pref * vwp_8phi7_series(a, lateral, lower, q, x * z);
}

// ---------------------------------------------------------------------------
// Numeric evaluators for the analytic q-analogues
// ---------------------------------------------------------------------------

/// Adaptive numeric triple sum shared by all analytic q-analogues.
inline double ggrq_triple_sum_numeric(double al, double be, double ga, double q, double x,
                                      double y, double z, double tol = 1e-12,
                                      int max_shell = 600) {
    double sum = 0.0;
    int quiet = 0;
    for (int s = 0; s <= max_shell; ++s) {
        double shell = 0.0;
        for (int j = 0; j <= s; ++j)
            for (int k = 0; k + j <= s; ++k) {
                int m = s - j - k;
                double t = q_pochhammer(al, q, j) * q_pochhammer(be, q, k) *
                           q_pochhammer(q / ga, q, m) * q_pochhammer(ga, q, j + k - m) /
                           (q_pochhammer(q, q, j) * q_pochhammer(q, q, k) *
                            q_pochhammer(q, q, m) * q_pochhammer(al * be, q, j + k - m));
                shell += t * power(x, j) * power(y, k) * power(z, m);
            }
        sum += shell;
        quiet = (shell == 0.0 || std::abs(shell) <= tol * std::abs(sum)) ? quiet + 1 : 0;
        if (quiet >= 3) return sum;
    }
    throw NonConvergent("triple sum did not converge at this point");
}

/// Right side of the first analytic q-analogue; valid when
/// max(|x|,|y|,|ab/g|) < min(1, 1/|z|) and |gx/b| < 1.
inline double ggrq3_rhs_numeric(double al, double be, double ga, double q, double x, double y,
                                double z, double tol = 1e-12) {
    double ptol = tol / 10.0;
    double pref = q_pochhammer_inf(ga * x / be, q, ptol) / q_pochhammer_inf(x, q, ptol) *
                  q_pochhammer_inf(be * y, q, ptol) / q_pochhammer_inf(y, q, ptol) *
                  q_pochhammer_inf(q * z / ga, q, ptol) /
                  q_pochhammer_inf(al * be * z / ga, q, ptol) *
                  q_pochhammer_inf(al * be * x * z / ga, q, ptol) /
                  q_pochhammer_inf(x * z, q, ptol) *
                  q_pochhammer_inf(be * y * z, q, ptol) *
                  q_pochhammer_inf(al * be * y * z / ga, q, ptol) /
                  (q_pochhammer_inf(y * z, q, ptol) *
                   q_pochhammer_inf(al * be * be * y * z / ga, q, ptol));
    double a = al * be * be * y * z / (ga * q);
    std::array<double, 5> lat{al * be * z / ga, be * y * z / ga, be, al * be / ga, be * y / x};
    return pref * vwp_8phi7(a, lat, q, ga * x / be);
}

/// Right side of the second analytic q-analogue.
inline double ggrq4_rhs_numeric(double al, double be, double ga, double q, double x, double y,
                                double z, double tol = 1e-12) {
    double ptol = tol / 10.0;
    double pref = q_pochhammer_inf(ga * x, q, ptol) / q_pochhammer_inf(x, q, ptol) *
                  q_pochhammer_inf(q * z / ga, q, ptol) /
                  q_pochhammer_inf(al * be * z / ga, q, ptol) *
                  q_pochhammer_inf(al * x * z / ga, q, ptol) / q_pochhammer_inf(x * z, q, ptol) *
                  q_pochhammer_inf(be * y * z, q, ptol) / q_pochhammer_inf(y * z, q, ptol) *
                  q_pochhammer_inf(be * y, q, ptol) * q_pochhammer_inf(ga * y, q, ptol) /
                  (q_pochhammer_inf(be * ga * y, q, ptol) * q_pochhammer_inf(y, q, ptol));
    double a = be * ga * y / q;
    std::array<double, 5> lat{ga, be, ga * y / al, be * y / x, ga / z};
    return pref * vwp_8phi7(a, lat, q, al * x * z / ga);
}

/// First term of the two-term analytic form; identical to the compact
/// q-analogue's right side read analytically (the expression the
/// formal identity shares but analysis rejects).
inline double ggrq5_term1_numeric(double al, double be, double ga, double q, double x, double y,
                                  double z, double tol = 1e-12) {
    double ptol = tol / 10.0;
    double pref = q_pochhammer_inf(ga * x / be, q, ptol) * q_pochhammer_inf(q * z / ga, q, ptol) *
                  q_pochhammer_inf(al * x * z / ga, q, ptol) *
                  q_pochhammer_inf(be * y * z, q, ptol) /
                  (q_pochhammer_inf(x / be, q, ptol) *
                   q_pochhammer_inf(al * be * z / ga, q, ptol) *
                   q_pochhammer_inf(x * z, q, ptol) * q_pochhammer_inf(y * z, q, ptol));
    return pref * basic_hyp_phi<double>({be, ga, al * be * z / ga, be * y / x},
                                        {al * be, be * y * z, q * be / x}, q, q);
}

/// Second term of the two-term analytic form: exactly the defect of the
/// compact expression.
inline double ggrq5_term2_numeric(double al, double be, double ga, double q, double x, double y,
                                  double z, double tol = 1e-12) {
    double ptol = tol / 10.0;
    double pref = q_pochhammer_inf(q * z / ga, q, ptol) * q_pochhammer_inf(be, q, ptol) *
                  q_pochhammer_inf(ga, q, ptol) * q_pochhammer_inf(be * y / x, q, ptol) *
                  q_pochhammer_inf(al * x, q, ptol) * q_pochhammer_inf(x * y * z, q, ptol) /
                  (q_pochhammer_inf(x, q, ptol) * q_pochhammer_inf(y, q, ptol) *
                   q_pochhammer_inf(x * z, q, ptol) * q_pochhammer_inf(y * z, q, ptol) *
                   q_pochhammer_inf(al * be, q, ptol) * q_pochhammer_inf(be / x, q, ptol));
    return pref * basic_hyp_phi<double>({x, y, ga * x / be, al * x * z / ga},
                                        {al * x, x * y * z, q * x / be}, q, q);
}

// ---------------------------------------------------------------------------
// Summation lemmas (exact, indexed by the termination depth)
// ---------------------------------------------------------------------------

inline Rational vand_lhs(const Rational& a, const Rational& c, long N) {
    return hyp_f<Rational>({a, Rational(-N)}, {c}, Rational(1));
}
inline Rational vand_rhs(const Rational& a, const Rational& c, long N) {
    return pochhammer(c - a, N) / pochhammer(c, N);
}

inline Rational pfaff_lhs(const Rational& a, const Rational& b, const Rational& c, long N) {
    return hyp_f<Rational>({a, b, Rational(-N)},
                           {c, Rational(1) + a + b - c - Rational(N)}, Rational(1));
}
inline Rational pfaff_rhs(const Rational& a, const Rational& b, const Rational& c, long N) {
    return pochhammer(c - a, N) * pochhammer(c - b, N) /
           (pochhammer(c, N) * pochhammer(c - a - b, N));
}

inline Rational qvand_lhs(const Rational& a, const Rational& c, const Rational& q, long N) {
    return basic_hyp_phi<Rational>({a, power(q, -N)}, {c}, q, q);
}
inline Rational qvand_rhs(const Rational& a, const Rational& c, const Rational& q, long N) {
    return power(a, N) * q_pochhammer(c / a, q, N) / q_pochhammer(c, q, N);
}

inline Rational qpfaff_lhs(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& q, long N) {
    return basic_hyp_phi<Rational>({a, b, power(q, -N)},
                                   {c, a * b * power(q, 1 - N) / c}, q, q);
}
inline Rational qpfaff_rhs(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& q, long N) {
    return q_pochhammer(c / a, q, N) * q_pochhammer(c / b, q, N) /
           (q_pochhammer(c, q, N) * q_pochhammer(c / (a * b), q, N));
}

/// Very-well-poised transformation, terminating instance e = q^{-N}.
/// Both sides are exact rationals; the infinite-product prefactor
/// collapses to the finite ratio below when e = q^{-N}.
inline Rational bailey_lhs(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d, const Rational& f, const Rational& q, long N) {
    Rational e = power(q, -N);
    std::array<Rational, 5> lat{b, c, d, e, f};
    Rational arg = a * a * q * q / (b * c * d * e * f);
    return vwp_8phi7(a, lat, q, arg);
}
inline Rational bailey_rhs(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d, const Rational& f, const Rational& q, long N) {
    Rational e = power(q, -N);
    Rational bcd = b * c * d;
    Rational pref = q_pochhammer(a * q, q, N) * q_pochhammer(a * a * q * q / (bcd * f), q, N) /
                    (q_pochhammer(a * q / f, q, N) * q_pochhammer(a * a * q * q / bcd, q, N));
    std::array<Rational, 5> lat{a * q / (c * d), a * q / (b * d), a * q / (b * c), e, f};
    Rational arg = a * q / (e * f);
    return pref * vwp_8phi7(a * a * q / bcd, lat, q, arg);
}

// ---------------------------------------------------------------------------
// q-binomial theorem and the classical 2F1 transformation
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& z_var() {
    static const std::vector<std::string> v{"z"};
    return v;
}

inline SeriesQ qbin_sum_series(const Rational& a, const Rational& q, int order) {
    auto z = SeriesQ::variable(z_var(), order, 0);
    return series_compose<Rational>(
        [&](long l) { return q_pochhammer(a, q, l) / q_pochhammer(q, q, l); }, z);
}
inline SeriesQ qbin_product_series(const Rational& a, const Rational& q, int order) {
    auto z = SeriesQ::variable(z_var(), order, 0);
    return q_product_inf(z * a, q) * series_invert(q_product_inf(z, q));
}
inline double qbin_sum_numeric(double a, double q, double z) {
    return basic_hyp_phi<double>({a}, {}, q, z);
}
inline double qbin_product_numeric(double a, double q, double z, double tol = 1e-12) {
    return q_pochhammer_inf(a * z, q, tol / 10.0) / q_pochhammer_inf(z, q, tol / 10.0);
}

inline SeriesQ euler_2f1_lhs_series(const Rational& a, const Rational& b, const Rational& c,
                                    int order) {
    auto z = SeriesQ::variable(z_var(), order, 0);
    return hyp_f<Rational>({a, b}, {c}, z);
}
inline SeriesQ euler_2f1_rhs_series(const Rational& a, const Rational& b, const Rational& c,
                                    int order) {
    auto one = SeriesQ::constant(z_var(), order, Rational(1));
    auto z = SeriesQ::variable(z_var(), order, 0);
    SeriesQ arg = (-z) * series_invert(one - z);
    return series_pow(one - z, Rational(0) - a) * hyp_f<Rational>({a, c - b}, {c}, arg);
}

// ---------------------------------------------------------------------------
// Andrews's identity (n-variable)
// ---------------------------------------------------------------------------

inline std::vector<std::string> andrews_vars(int n) {
    std::vector<std::string> v;
    for (int j = 1; j <= n; ++j) v.push_back("x" + std::to_string(j));
    return v;
}

/// Left side as printed: unambiguous n-fold sum.
inline SeriesQ andrews_lhs_series(const Rational& a, const Rational& c,
                                  const std::vector<Rational>& bs, const Rational& q,
                                  int order) {
    int n = static_cast<int>(bs.size());
    SeriesQ s(andrews_vars(n), order);
    std::vector<int> k(static_cast<size_t>(n), 0);
    // enumerate all exponent tuples of total degree <= order
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n) {
            long K = 0;
            for (int e : k) K += e;
            Rational t = q_pochhammer(a, q, K) / q_pochhammer(c, q, K);
            for (int j = 0; j < n; ++j)
                t *= q_pochhammer(bs[static_cast<size_t>(j)], q, k[static_cast<size_t>(j)]) /
                     q_pochhammer(q, q, k[static_cast<size_t>(j)]);
            s.set(MultiIndex(std::vector<int>(k)), t);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            k[static_cast<size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
    };
    rec(0, order);
    return s;
}

/// Validated right-side reading: prefactor (a;q)_inf/(c;q)_inf *
/// prod_j (b_j x_j;q)_inf/(x_j;q)_inf times
/// phi[c/a, x_1..x_n; b_1 x_1..b_n x_n; q, a]. Exact evaluation needs
/// the terminating line c = a q^{-M}, where (a;q)_inf/(c;q)_inf
/// collapses to 1/(c;q)_M and the phi stops at depth M.
inline SeriesQ andrews_rhs_series(const Rational& a, const Rational& c,
                                  const std::vector<Rational>& bs, const Rational& q,
                                  int order) {
    int n = static_cast<int>(bs.size());
    if (a.is_zero()) throw OutOfDomain("a must be nonzero");
    long M = -1;
    Rational r = c / a;
    Rational probe = r;
    for (long m = 0; m <= 64; ++m) {
        if (probe.is_one()) { M = m; break; }
        probe = probe * q;
    }
    if (M < 0)
        throw OutOfDomain("exact evaluation requires c = a q^{-M} for some M in 0..64");
    auto vars = andrews_vars(n);
    SeriesQ pref = SeriesQ::constant(vars, order, Rational(1) / q_pochhammer(c, q, M));
    std::vector<PhiValue<Rational>> upper{power(q, -M)};
    std::vector<PhiValue<Rational>> lower;
    for (int j = 0; j < n; ++j) {
        auto xj = SeriesQ::variable(vars, order, static_cast<size_t>(j));
        pref = pref * q_product_inf(xj * bs[static_cast<size_t>(j)], q) *
               series_invert(q_product_inf(xj, q));
        upper.emplace_back(xj);
        lower.emplace_back(xj * bs[static_cast<size_t>(j)]);
    }
    return pref * basic_hyp_phi<Rational>(upper, lower, q, a, vars, order);
}

/// Candidate right-side readings of the printed display, used to settle
/// which reading reproduces the left side (numeric comparison).
enum class AndrewsReading {
    validated,         // c->a, d->c, a_j->b_j in the printed symbols
    printed_d_as_q,    // undefined d read as q, a_j read as a
    printed_d_as_c,    // undefined d read as c, a_j read as a
};

inline double andrews_lhs_numeric(double a, double c, const std::vector<double>& bs,
                                  const std::vector<double>& xs, double q, double tol = 1e-12,
                                  int max_shell = 400) {
    int n = static_cast<int>(bs.size());
    double sum = 0.0;
    int quiet = 0;
    std::vector<int> k(static_cast<size_t>(n), 0);
    for (int s = 0; s <= max_shell; ++s) {
        double shell = 0.0;
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos == n - 1) {
                k[static_cast<size_t>(pos)] = remaining;
                long K = s;
                double t = q_pochhammer(a, q, K) / q_pochhammer(c, q, K);
                for (int j = 0; j < n; ++j)
                    t *= q_pochhammer(bs[static_cast<size_t>(j)], q, k[static_cast<size_t>(j)]) /
                         q_pochhammer(q, q, k[static_cast<size_t>(j)]) *
                         power(xs[static_cast<size_t>(j)], k[static_cast<size_t>(j)]);
                shell += t;
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                k[static_cast<size_t>(pos)] = e;
                rec(pos + 1, remaining - e);
            }
        };
        rec(0, s);
        sum += shell;
        quiet = (shell == 0.0 || std::abs(shell) <= tol * std::abs(sum)) ? quiet + 1 : 0;
        if (quiet >= 3) return sum;
    }
    throw NonConvergent("n-fold sum did not converge");
}

inline double andrews_rhs_numeric(double a, double c, const std::vector<double>& bs,
                                  const std::vector<double>& xs, double q,
                                  AndrewsReading reading, double tol = 1e-12) {
    int n = static_cast<int>(bs.size());
    double ptol = tol / 10.0;
    double pref;
    std::vector<double> upper, lower;
    double arg;
    switch (reading) {
        case AndrewsReading::validated:
            pref = q_pochhammer_inf(a, q, ptol) / q_pochhammer_inf(c, q, ptol);
            upper = {c / a};
            arg = a;
            for (int j = 0; j < n; ++j) {
                pref *= q_pochhammer_inf(bs[static_cast<size_t>(j)] * xs[static_cast<size_t>(j)], q, ptol) /
                        q_pochhammer_inf(xs[static_cast<size_t>(j)], q, ptol);
                upper.push_back(xs[static_cast<size_t>(j)]);
                lower.push_back(bs[static_cast<size_t>(j)] * xs[static_cast<size_t>(j)]);
            }
            break;
        case AndrewsReading::printed_d_as_q:
        case AndrewsReading::printed_d_as_c: {
            double d = reading == AndrewsReading::printed_d_as_q ? q : c;
            pref = q_pochhammer_inf(c, q, ptol) / q_pochhammer_inf(d, q, ptol);
            upper = {d / c};
            arg = c;
            for (int j = 0; j < n; ++j) {
                pref *= q_pochhammer_inf(a * xs[static_cast<size_t>(j)], q, ptol) /
                        q_pochhammer_inf(xs[static_cast<size_t>(j)], q, ptol);
                upper.push_back(xs[static_cast<size_t>(j)]);
                lower.push_back(a * xs[static_cast<size_t>(j)]);
            }
            break;
        }
        default:
            throw Error("unknown reading");
    }
    return pref * basic_hyp_phi<double>(upper, lower, q, arg);
}

}  // namespace qhyper
