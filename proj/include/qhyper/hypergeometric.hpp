/** @file hypergeometric.hpp
 *
 *  Evaluators for ordinary rFs and basic r+1_phi_r series, a
 *  square-root-free very-well-poised 8phi7, and the numeric bilateral
 *  1psi1 sum. Exact evaluation demands termination; numeric evaluation
 *  is adaptive.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <variant>
#include <vector>

#include "qhyper/errors.hpp"
#include "qhyper/rational.hpp"
#include "qhyper/series.hpp"
#include "qhyper/special.hpp"

namespace qhyper {

inline constexpr long kDefaultMaxTerms = 4096;

namespace detail {

inline std::optional<long> termination_depth(const Rational& a) {
    if (a.is_integer() && a.sign() <= 0) return -a.to_long();
    return std::nullopt;
}
inline std::optional<long> termination_depth(double a) {
    double r = std::nearbyint(a);
    if (a == r && a <= 0.0) return static_cast<long>(-r);
    return std::nullopt;
}

/// Smallest termination depth among the upper parameters, if any.
template <typename S>
std::optional<long> min_termination(const std::vector<S>& upper) {
    std::optional<long> best;
    for (const S& a : upper) {
        auto d = termination_depth(a);
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

inline bool numerically_negligible(double term, double sum) {
    return std::abs(term) <= 1e-17 * (std::abs(sum) + 1.0);
}

}  // namespace detail

/// Ordinary rFs at a scalar argument. Exact scalars require a
/// terminating upper parameter; doubles may instead converge
/// adaptively. PoleError if a lower parameter produces a zero factor
/// before termination.
template <typename S>
S hyp_f(const std::vector<S>& upper, const std::vector<S>& lower, const S& z,
        long max_terms = kDefaultMaxTerms) {
    auto stop = detail::min_termination(upper);
    S sum(0), term(1);
    int quiet = 0;
    for (long l = 0; l < max_terms; ++l) {
        sum += term;
        if (stop && l == *stop) return sum;
        if constexpr (std::is_same_v<S, double>) {
            if (!stop) {
                quiet = detail::numerically_negligible(term, sum) ? quiet + 1 : 0;
                if (quiet >= 3) return sum;
            }
        }
        S num(1);
        for (const S& a : upper) num *= a + S(l);
        if (exactly_zero(num)) return sum;  // terminated by an upper factor
        S den(l + 1);
        for (const S& b : lower) {
            S f = b + S(l);
            if (exactly_zero(f))
                throw PoleError("lower parameter pole in rFs",
                                "(" + scalar_str(b) + ")+" + std::to_string(l));
            den *= f;
        }
        term = term * num / den * z;
    }
    if constexpr (std::is_same_v<S, double>) throw NonConvergent("rFs failed to converge");
    throw NonTerminating("rFs with no terminating upper parameter in exact mode");
}

/// rFs with a series argument, expanded to the argument's truncation
/// order. The argument must have zero constant term unless the series
/// terminates.
template <typename S>
TruncatedSeries<S> hyp_f(const std::vector<S>& upper, const std::vector<S>& lower,
                         const TruncatedSeries<S>& g) {
    auto stop = detail::min_termination(upper);
    if (!exactly_zero(g.constant_term()) && !stop)
        throw NonzeroConstantTerm(
            "series argument of rFs needs zero constant term or a terminating "
            "upper parameter");
    auto rule = [&](long l) -> S {
        S num(1);
        for (const S& a : upper) num *= pochhammer(a, l);
        if (exactly_zero(num)) return S(0);
        S den = factorial<S>(l);
        for (const S& b : lower) den *= pochhammer(b, l);
        if (exactly_zero(den)) throw PoleError("lower parameter pole in rFs");
        return num / den;
    };
    if (exactly_zero(g.constant_term()))
        return series_compose<S>(rule, g);
    TruncatedSeries<S> sum(g.vars(), g.order());
    TruncatedSeries<S> gpow = TruncatedSeries<S>::constant(g.vars(), g.order(), S(1));
    for (long l = 0; l <= *stop; ++l) {
        sum = sum + gpow * rule(l);
        if (l < *stop) gpow = gpow * g;
    }
    return sum;
}

/// Basic r+1_phi_r at a scalar argument (no compensating (-1)^n q-power
/// factor; only the balanced-count case occurs here).
template <typename S>
S basic_hyp_phi(const std::vector<S>& upper, const std::vector<S>& lower, const S& q,
                const S& z, long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    S sum(0), term(1);
    S ql(1);  // q^l
    int quiet = 0;
    for (long l = 0; l < max_terms; ++l) {
        sum += term;
        if constexpr (std::is_same_v<S, double>) {
            quiet = detail::numerically_negligible(term, sum) ? quiet + 1 : 0;
            if (quiet >= 3) return sum;
        }
        S num(1);
        for (const S& a : upper) num *= S(1) - a * ql;
        if (exactly_zero(num)) return sum;  // terminated by an upper factor
        S den = S(1) - ql * q;
        for (const S& b : lower) {
            S f = S(1) - b * ql;
            if (exactly_zero(f))
                throw PoleError("lower parameter pole in basic series",
                                "1-(" + scalar_str(b) + ")*q^" + std::to_string(l));
            den *= f;
        }
        term = term * num / den * z;
        ql *= q;
    }
    if constexpr (std::is_same_v<S, double>)
        throw NonConvergent("basic series failed to converge");
    throw NonTerminating("basic series with no terminating upper parameter in exact mode");
}

/// Finite q-shifted factorial (u;q)_n of a series-valued argument.
template <typename S>
TruncatedSeries<S> qpoch_series(const TruncatedSeries<S>& u, const S& q, long n) {
    return q_product(u, q, n);
}

/// Rising factorial of a series-valued argument.
template <typename S>
TruncatedSeries<S> pochhammer_series(const TruncatedSeries<S>& a, long k) {
    auto r = TruncatedSeries<S>::constant(a.vars(), a.order(), S(1));
    if (k >= 0) {
        for (long i = 0; i < k; ++i) r = r * (a + S(i));
        return r;
    }
    for (long i = 0; i < -k; ++i) r = r * series_invert(a + S(k + i));
    return r;
}

/// Basic series with scalar parameters and a series argument; the
/// argument needs zero constant term unless an upper parameter is a
/// negative q-power (which is detected through the vanishing term).
template <typename S>
TruncatedSeries<S> basic_hyp_phi(const std::vector<S>& upper, const std::vector<S>& lower,
                                 const S& q, const TruncatedSeries<S>& g,
                                 long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    TruncatedSeries<S> sum(g.vars(), g.order());
    TruncatedSeries<S> gpow = TruncatedSeries<S>::constant(g.vars(), g.order(), S(1));
    bool zero_const = exactly_zero(g.constant_term());
    S coef(1);
    S ql(1);
    for (long l = 0; l < max_terms; ++l) {
        sum = sum + gpow * coef;
        if (zero_const && gpow.low_degree() >= g.order()) return sum;
        S num(1);
        for (const S& a : upper) num *= S(1) - a * ql;
        if (exactly_zero(num)) return sum;
        S den = S(1) - ql * q;
        for (const S& b : lower) {
            S f = S(1) - b * ql;
            if (exactly_zero(f)) throw PoleError("lower parameter pole in basic series");
            den *= f;
        }
        coef = coef * num / den;
        ql *= q;
        gpow = gpow * g;
    }
    throw NonTerminating("basic series with series argument did not terminate");
}

/// Very-well-poised series with scalar parameters and a series-valued
/// argument of zero constant term (or a terminating lateral).
template <typename S>
TruncatedSeries<S> vwp_8phi7(const S& a, const std::array<S, 5>& lateral, const S& q,
                             const TruncatedSeries<S>& g, long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    if (exactly_one(a)) throw PoleError("very-well-poised series requires 1-a invertible");
    TruncatedSeries<S> sum(g.vars(), g.order());
    TruncatedSeries<S> gpow = TruncatedSeries<S>::constant(g.vars(), g.order(), S(1));
    bool zero_const = exactly_zero(g.constant_term());
    S coef(1);
    S ql(1), q2l(1);
    for (long l = 0; l < max_terms; ++l) {
        sum = sum + gpow * (coef * (S(1) - a * q2l) / (S(1) - a));
        if (zero_const && gpow.low_degree() >= g.order()) return sum;
        S num = S(1) - a * ql;
        for (const S& p : lateral) num *= S(1) - p * ql;
        if (exactly_zero(num)) return sum;
        S den = S(1) - ql * q;
        for (const S& p : lateral) {
            if (exactly_zero(p)) throw PoleError("zero lateral parameter");
            S f = S(1) - (a * q / p) * ql;
            if (exactly_zero(f)) throw PoleError("lower parameter pole in 8phi7");
            den *= f;
        }
        coef = coef * num / den;
        ql *= q;
        q2l *= q * q;
        gpow = gpow * g;
    }
    throw NonTerminating("8phi7 with series argument did not terminate");
}

/// Parameter of a basic series in formal mode: a scalar or a series.
template <typename S>
using PhiValue = std::variant<S, TruncatedSeries<S>>;

/// Basic r+1_phi_r with scalar or series-valued parameters and a scalar
/// argument, as a series of the given shape. The sum must terminate
/// through a scalar upper parameter of the form q^{-N}.
template <typename S>
TruncatedSeries<S> basic_hyp_phi(const std::vector<PhiValue<S>>& upper,
                                 const std::vector<PhiValue<S>>& lower, const S& q,
                                 const S& z, const std::vector<std::string>& vars,
                                 int order, long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    auto one = TruncatedSeries<S>::constant(vars, order, S(1));
    TruncatedSeries<S> sum(vars, order);
    TruncatedSeries<S> term = one;
    S ql(1);
    for (long l = 0; l < max_terms; ++l) {
        sum = sum + term;
        // factor pass: scalar upper factors first so termination wins
        S scalar_num(1);
        bool terminated = false;
        for (const auto& a : upper)
            if (const S* s = std::get_if<S>(&a)) {
                scalar_num *= S(1) - *s * ql;
                if (exactly_zero(scalar_num)) { terminated = true; break; }
            }
        if (terminated) return sum;
        term = term * scalar_num;
        for (const auto& a : upper)
            if (const auto* sv = std::get_if<TruncatedSeries<S>>(&a))
                term = term * (one - *sv * ql);
        S scalar_den = S(1) - ql * q;
        for (const auto& b : lower) {
            if (const S* s = std::get_if<S>(&b)) {
                S f = S(1) - *s * ql;
                if (exactly_zero(f)) throw PoleError("lower parameter pole in basic series");
                scalar_den *= f;
            } else {
                term = term * series_invert(one - std::get<TruncatedSeries<S>>(b) * ql);
            }
        }
        term = term * (z / scalar_den);
        ql *= q;
        if (term.low_degree() > order) return sum;
    }
    throw NonTerminating("series-parameter basic series did not terminate");
}

/// Lateral parameter of the formal very-well-poised series: a power
/// series, optionally divided by one declared variable. The quotient
/// form pairs against powers of that variable taken from the argument.
template <typename S>
struct VwpLateral {
    TruncatedSeries<S> numer;
    int denom_var = -1;
};

/// Scalar very-well-poised 8phi7, square-root free: the l-th term
/// carries (1 - a q^{2l})/(1 - a) in place of the four +-sqrt(a)
/// parameter quotients. Lower parameters are derived as aq/p.
template <typename S>
S vwp_8phi7(const S& a, const std::array<S, 5>& lateral, const S& q, const S& z,
            long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    if (exactly_one(a)) throw PoleError("very-well-poised series requires 1-a invertible");
    for (const S& p : lateral)
        if (exactly_zero(p)) throw PoleError("zero lateral parameter");
    S sum(0), term(1);
    S ql(1), q2l(1);
    int quiet = 0;
    for (long l = 0; l < max_terms; ++l) {
        sum += term * ((S(1) - a * q2l) / (S(1) - a));
        if constexpr (std::is_same_v<S, double>) {
            quiet = detail::numerically_negligible(term, sum) ? quiet + 1 : 0;
            if (quiet >= 3) return sum;
        }
        S num = S(1) - a * ql;
        for (const S& p : lateral) num *= S(1) - p * ql;
        if (exactly_zero(num)) return sum;
        S den = S(1) - ql * q;
        for (const S& p : lateral) {
            S f = S(1) - (a * q / p) * ql;
            if (exactly_zero(f)) throw PoleError("lower parameter pole in 8phi7");
            den *= f;
        }
        term = term * num / den * z;
        ql *= q;
        q2l *= q * q;
    }
    if constexpr (std::is_same_v<S, double>)
        throw NonConvergent("8phi7 failed to converge");
    throw NonTerminating("8phi7 with no terminating parameter in exact mode");
}

/// Divides a series by one variable; every monomial must contain it.
template <typename S>
TruncatedSeries<S> divide_by_variable(const TruncatedSeries<S>& s, int var) {
    TruncatedSeries<S> r(s.vars(), s.order());
    for (const auto& [idx, c] : s.terms()) {
        if (idx.e[static_cast<size_t>(var)] < 1)
            throw Error("series is not divisible by " + s.vars()[static_cast<size_t>(var)]);
        MultiIndex m = idx;
        m.e[static_cast<size_t>(var)] -= 1;
        r.set(std::move(m), c);
    }
    return r;
}

/// Formal very-well-poised 8phi7 with series-valued parameters. The
/// five lower parameters are supplied explicitly in their cancelled
/// form; laterals written as numer/variable pair against one power of
/// that variable from the argument per depth, so each pairing
/// contributes prod_{i<l} (v - numer q^i) instead of a Laurent factor.
template <typename S>
TruncatedSeries<S> vwp_8phi7_series(const TruncatedSeries<S>& a,
                                    const std::array<VwpLateral<S>, 5>& lateral,
                                    const std::array<TruncatedSeries<S>, 5>& lower,
                                    const S& q, const TruncatedSeries<S>& arg,
                                    long max_terms = kDefaultMaxTerms) {
    check_q_base(q);
    if (!exactly_zero(a.constant_term()))
        throw PoleError("series-valued a must have zero constant term");
    const auto& vars = a.vars();
    int order = a.order();
    auto one = TruncatedSeries<S>::constant(vars, order, S(1));

    TruncatedSeries<S> arg_reduced = arg;
    for (const auto& p : lateral)
        if (p.denom_var >= 0) arg_reduced = divide_by_variable(arg_reduced, p.denom_var);

    TruncatedSeries<S> inv_one_minus_a = series_invert(one - a);
    TruncatedSeries<S> sum(vars, order);
    for (long l = 0; l < max_terms; ++l) {
        // (1 - a q^{2l})/(1 - a) * (a;q)_l / (q;q)_l
        TruncatedSeries<S> term =
            (one - a * power(q, 2 * l)) * inv_one_minus_a * qpoch_series(a, q, l);
        term = term * (S(1) / q_pochhammer(q, q, l));
        for (const auto& p : lateral) {
            if (p.denom_var < 0) {
                term = term * qpoch_series(p.numer, q, l);
            } else {
                auto v = TruncatedSeries<S>::variable(vars, order, static_cast<size_t>(p.denom_var));
                for (long i = 0; i < l; ++i) term = term * (v - p.numer * power(q, i));
            }
        }
        for (const auto& b : lower) term = term * series_invert(qpoch_series(b, q, l));
        term = term * series_pow(arg_reduced, l);
        sum = sum + term;
        if (term.low_degree() > order) return sum;
    }
    throw NonTerminating("formal 8phi7 terms did not leave the truncation range");
}

/// Numeric infinite q-product (u;q)_inf, truncated adaptively: factors
/// stop once |u q^M| < tol/10, which perturbs the result by 1+O(tol).
inline double q_pochhammer_inf(double u, double q, double tol = 1e-14) {
    if (std::abs(q) >= 1.0) throw InvalidBase("infinite q-product needs |q| < 1");
    double r = 1.0, uq = u;
    for (long i = 0; i < 1000000; ++i) {
        if (std::abs(uq) < tol / 10.0) return r;
        r *= 1.0 - uq;
        uq *= q;
    }
    throw NonConvergent("infinite q-product did not converge");
}

/// Bilateral 1psi1 sum over all integers n, evaluated numerically
/// inside the annulus |b/a| < |z| < 1. M grows symmetrically; the sum
/// converges once three consecutive rings are each below tol.
inline double bilateral_1psi1(double a, double b, double q, double z, double tol = 1e-12,
                              long max_rings = 100000) {
    if (!(std::abs(q) > 0.0 && std::abs(q) < 1.0))
        throw InvalidBase("1psi1 requires 0 < |q| < 1");
    if (a == 0.0 || !(std::abs(b / a) < std::abs(z) && std::abs(z) < 1.0))
        throw OutOfAnnulus("1psi1 requires |b/a| < |z| < 1");
    double sum = 1.0;  // n = 0 term
    double rp = 1.0;   // (a;q)_n/(b;q)_n at current positive n
    double rn = 1.0;   // same at current negative n
    double zp = 1.0, zn = 1.0;
    int quiet = 0;
    for (long m = 1; m <= max_rings; ++m) {
        double fb = 1.0 - b * std::pow(q, m - 1);
        if (fb == 0.0) throw PoleError("1psi1 positive-side pole");
        rp *= (1.0 - a * std::pow(q, m - 1)) / fb;
        zp *= z;
        double fa = 1.0 - a * std::pow(q, -m);
        if (fa == 0.0) throw PoleError("1psi1 negative-side pole");
        rn *= (1.0 - b * std::pow(q, -m)) / fa;
        zn /= z;
        double ring = rp * zp + rn * zn;
        sum += ring;
        quiet = (ring == 0.0 || std::abs(ring) <= tol * std::abs(sum)) ? quiet + 1 : 0;
        if (quiet >= 3) return sum;
    }
    throw NonConvergent("1psi1 ring cap reached");
}

/// Product side of the 1psi1 summation, for verification.
inline double ramanujan_1psi1_product(double a, double b, double q, double z,
                                      double tol = 1e-14) {
    return q_pochhammer_inf(q, q, tol) * q_pochhammer_inf(b / a, q, tol) *
           q_pochhammer_inf(a * z, q, tol) * q_pochhammer_inf(q / (a * z), q, tol) /
           (q_pochhammer_inf(b, q, tol) * q_pochhammer_inf(q / a, q, tol) *
            q_pochhammer_inf(z, q, tol) * q_pochhammer_inf(b / (a * z), q, tol));
}

}  // namespace qhyper
