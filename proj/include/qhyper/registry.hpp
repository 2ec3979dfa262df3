/** @file registry.hpp
 *
 *  Maps stable identity names to their descriptors: side builders,
 *  validity mode, machine-checkable admissibility predicates and a
 *  catalogue anchor. The registry is immutable after construction.
 */
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qhyper/identities.hpp"
#include "qhyper/parameters.hpp"

namespace qhyper {

enum class IdentityMode { formal, numeric, both };

inline const char* mode_str(IdentityMode m) {
    switch (m) {
        case IdentityMode::formal: return "formal";
        case IdentityMode::numeric: return "numeric";
        default: return "both";
    }
}

struct FormalSide {
    std::string name;
    std::function<SeriesQ(const ParameterAssignment&, int order)> build;
};

/// Scalar identity family indexed by the termination depth n.
struct ScalarSide {
    std::string name;
    std::function<Rational(const ParameterAssignment&, long n)> eval;
};

struct NumericSide {
    std::string name;
    std::function<double(const ParameterAssignment&, double tol)> eval;
};

struct IdentityDescriptor {
    std::string id;
    IdentityMode mode = IdentityMode::formal;
    std::string anchor;
    std::string constraints;
    std::function<bool(const ParameterAssignment&)> admissible;
    std::vector<FormalSide> formal_sides;
    std::vector<ScalarSide> scalar_sides;
    std::vector<NumericSide> numeric_sides;
    int default_order = 6;
    /// Numeric comparison is registered as an expected failure whose
    /// defect must equal the documented correction term.
    bool numeric_expected_fail = false;
};

// --- admissibility helpers -------------------------------------------------

inline bool nonintegral(const Rational& r) { return !r.is_integer(); }

/// True when v equals q^e for some exponent e in [lo, hi].
inline bool equals_q_power(const Rational& v, const Rational& q, int lo, int hi) {
    if (v.is_zero()) return false;
    for (int e = lo; e <= hi; ++e)
        if (v == power(q, static_cast<long>(e))) return true;
    return false;
}

/// Nonzero and clear of every q-power reachable at working depths.
inline bool q_power_free(const Rational& v, const Rational& q) {
    return !v.is_zero() && !equals_q_power(v, q, -40, 40);
}

inline bool abs_below(const Rational& v, const Rational& bound) {
    return v.abs() < bound;
}

namespace detail {

inline double point_coord(const ParameterAssignment& p, const char* name) {
    return p.at_double(name);
}

inline GGRParameters ggrp(const ParameterAssignment& p) { return GGRParameters::from(p); }

inline bool ggr_admissible(const ParameterAssignment& p) {
    if (!p.has("alpha") || !p.has("beta") || !p.has("gamma")) return false;
    const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma");
    return nonintegral(al) && nonintegral(be) && nonintegral(ga) && nonintegral(al + be) &&
           nonintegral(al + be - ga) && nonintegral(ga - be) && nonintegral(al - ga);
}

inline bool ggrq_formal_admissible(const ParameterAssignment& p) {
    if (!p.has("alpha") || !p.has("beta") || !p.has("gamma") || !p.has("q")) return false;
    const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma"), &q = p.at("q");
    if (q.is_zero() || q.is_one() || (-q).is_one()) return false;
    return !al.is_zero() && !be.is_zero() && q_power_free(al * be, q) && q_power_free(ga, q);
}

inline bool has_point(const ParameterAssignment& p) {
    return p.has("x") && p.has("y") && p.has("z");
}

inline Rational max_abs(const Rational& a, const Rational& b, const Rational& c) {
    Rational m = a.abs();
    if (b.abs() > m) m = b.abs();
    if (c.abs() > m) m = c.abs();
    return m;
}

/// Quoted convergence domain of the first analytic q-analogue:
/// max(|x|,|y|,|ab/g|) < min(1, 1/|z|) and |gx/b| < 1.
inline bool ggrq3_domain(const ParameterAssignment& p) {
    const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma");
    const Rational &x = p.at("x"), &y = p.at("y"), &z = p.at("z");
    Rational m = max_abs(x, y, al * be / ga);
    return m < Rational(1) && m * z.abs() < Rational(1) &&
           (ga * x / be).abs() < Rational(1);
}

inline bool ggrq_numeric_base(const ParameterAssignment& p) {
    if (!ggrq_formal_admissible(p) || !has_point(p)) return false;
    const Rational& q = p.at("q");
    return q > Rational(0) && q < Rational(1);
}

}  // namespace detail

const std::map<std::string, IdentityDescriptor>& identity_registry();

inline const IdentityDescriptor& find_identity(const std::string& id) {
    const auto& reg = identity_registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw UnknownIdentity("no identity registered under '" + id + "'");
    return it->second;
}

inline const std::map<std::string, IdentityDescriptor>& identity_registry() {
    static const std::map<std::string, IdentityDescriptor> reg = [] {
        std::map<std::string, IdentityDescriptor> r;
        using PA = ParameterAssignment;

        {
            IdentityDescriptor d;
            d.id = "ggr";
            d.mode = IdentityMode::formal;
            d.anchor = "Gelfand-Graev-Retakh triple-sum = single-sum identity; the two "
                       "single-sum variants are related by Euler's 2F1 transformation";
            d.constraints = "alpha, beta, gamma, alpha+beta, alpha+beta-gamma, gamma-beta, "
                            "alpha-gamma all non-integral";
            d.admissible = detail::ggr_admissible;
            d.default_order = 8;
            d.formal_sides = {
                {"GGR0", [](const PA& p, int N) { return ggr0_series(detail::ggrp(p), N); }},
                {"GGR1", [](const PA& p, int N) { return ggr1_series(detail::ggrp(p), N); }},
                {"GGR2", [](const PA& p, int N) { return ggr2_series(detail::ggrp(p), N); }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq";
            d.mode = IdentityMode::formal;
            d.anchor = "first formal q-analogue: prefactored triple sum vs constrained "
                       "six-fold sum (formal power series only; analytically divergent)";
            d.constraints = "alpha, beta nonzero; alpha*beta and gamma clear of q-powers";
            d.admissible = detail::ggrq_formal_admissible;
            d.default_order = 6;
            d.formal_sides = {
                {"lhs",
                 [](const PA& p, int N) {
                     auto g = detail::ggrp(p);
                     return xyz_series_from(
                         [&](long X, long Y, long Z) { return ggrq_lhs_coefficient(g, X, Y, Z); },
                         N);
                 }},
                {"rhs",
                 [](const PA& p, int N) {
                     auto g = detail::ggrp(p);
                     return xyz_series_from(
                         [&](long X, long Y, long Z) {
                             return ggrq_rhs_coefficient_bruteforce(QVariant::ggrq, g, X, Y, Z);
                         },
                         N);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq1";
            d.mode = IdentityMode::formal;
            d.anchor = "second formal q-analogue: plain triple sum vs constrained six-fold "
                       "sum (formal power series only; right side never converges)";
            d.constraints = "alpha, beta nonzero; alpha*beta and gamma clear of q-powers";
            d.admissible = detail::ggrq_formal_admissible;
            d.default_order = 6;
            d.formal_sides = {
                {"lhs",
                 [](const PA& p, int N) {
                     auto g = detail::ggrp(p);
                     return xyz_series_from(
                         [&](long X, long Y, long Z) { return ggrq1_lhs_coefficient(g, X, Y, Z); },
                         N);
                 }},
                {"rhs",
                 [](const PA& p, int N) {
                     auto g = detail::ggrp(p);
                     return xyz_series_from(
                         [&](long X, long Y, long Z) {
                             return ggrq_rhs_coefficient_bruteforce(QVariant::ggrq1, g, X, Y, Z);
                         },
                         N);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq2";
            d.mode = IdentityMode::both;
            d.anchor = "compact q-analogue: balanced 4phi3 form; true as a formal power "
                       "series, false analytically (a second term is missing)";
            d.constraints = "formal: as ggrq1; numeric: nonzero small x,y,z with "
                            "max(|x|,|y|,|ab/g|)<1, that bound times |z| < 1, and "
                            "b, b/x, ax, by/x, qz/g clear of q-powers (the last four keep "
                            "the correction term away from its zero set)";
            d.admissible = [](const PA& p) {
                if (!detail::ggrq_formal_admissible(p)) return false;
                if (!detail::has_point(p)) return true;  // formal use
                const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma");
                const Rational &x = p.at("x"), &y = p.at("y"), &z = p.at("z");
                const Rational& q = p.at("q");
                Rational m = detail::max_abs(x, y, al * be / ga);
                return !x.is_zero() && !y.is_zero() && !z.is_zero() && m < Rational(1) &&
                       m * z.abs() < Rational(1) && q_power_free(be / x, q) &&
                       q_power_free(be, q) && q_power_free(al * x, q) &&
                       q_power_free(be * y / x, q) && q_power_free(q * z / ga, q) &&
                       q > Rational(0) && q < Rational(1);
            };
            d.default_order = 6;
            d.numeric_expected_fail = true;
            d.formal_sides = {
                {"lhs",
                 [](const PA& p, int N) {
                     auto g = detail::ggrp(p);
                     return xyz_series_from(
                         [&](long X, long Y, long Z) { return ggrq1_lhs_coefficient(g, X, Y, Z); },
                         N);
                 }},
                {"rhs", [](const PA& p, int N) { return ggrq2_rhs_series(detail::ggrp(p), N); }},
            };
            d.numeric_sides = {
                {"lhs",
                 [](const PA& p, double tol) {
                     return ggrq_triple_sum_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
                {"rhs",
                 [](const PA& p, double tol) {
                     return ggrq5_term1_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq3";
            d.mode = IdentityMode::numeric;
            d.anchor = "analytic q-analogue of the first equality: very-well-poised 8phi7 "
                       "form obtained through Ramanujan's 1psi1 summation";
            d.constraints = "max(|x|,|y|,|ab/g|) < min(1,1/|z|), |gx/b| < 1, x nonzero; "
                            "|a b^2 y z/(g q)| < 1";
            d.admissible = [](const PA& p) {
                if (!detail::ggrq_numeric_base(p)) return false;
                if (!detail::ggrq3_domain(p)) return false;
                const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma");
                const Rational &x = p.at("x"), &y = p.at("y"), &z = p.at("z");
                const Rational& q = p.at("q");
                return !x.is_zero() && !y.is_zero() && !z.is_zero() &&
                       abs_below(al * be * be * y * z / (ga * q), Rational(1));
            };
            d.numeric_sides = {
                {"lhs",
                 [](const PA& p, double tol) {
                     return ggrq_triple_sum_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
                {"rhs",
                 [](const PA& p, double tol) {
                     return ggrq3_rhs_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq4";
            d.mode = IdentityMode::numeric;
            d.anchor = "analytic q-analogue of the second equality: 8phi7 form with "
                       "argument a*x*z/g";
            d.constraints = "small nonzero x,y,z; |axz/g| < 1; |bgy/q| < 1; "
                            "max(|x|,|y|,|ab/g|) < min(1,1/|z|)";
            d.admissible = [](const PA& p) {
                if (!detail::ggrq_numeric_base(p)) return false;
                const Rational &al = p.at("alpha"), &be = p.at("beta"), &ga = p.at("gamma");
                const Rational &x = p.at("x"), &y = p.at("y"), &z = p.at("z");
                const Rational& q = p.at("q");
                Rational m = detail::max_abs(x, y, al * be / ga);
                return !x.is_zero() && !y.is_zero() && !z.is_zero() && m < Rational(1) &&
                       m * z.abs() < Rational(1) &&
                       abs_below(al * x * z / ga, Rational(1)) &&
                       abs_below(be * ga * y / q, Rational(1));
            };
            d.numeric_sides = {
                {"lhs",
                 [](const PA& p, double tol) {
                     return ggrq_triple_sum_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
                {"rhs",
                 [](const PA& p, double tol) {
                     return ggrq4_rhs_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "ggrq5";
            d.mode = IdentityMode::numeric;
            d.anchor = "two-term 4phi3 form of the analytic q-analogue; the first term is "
                       "the compact expression, the second is its analytic defect";
            d.constraints = "as the compact q-analogue's numeric domain";
            d.admissible = [](const PA& p) { return find_identity("ggrq2").admissible(p); };
            d.numeric_sides = {
                {"lhs",
                 [](const PA& p, double tol) {
                     return ggrq_triple_sum_numeric(
                         p.at_double("alpha"), p.at_double("beta"), p.at_double("gamma"),
                         p.at_double("q"), p.at_double("x"), p.at_double("y"), p.at_double("z"),
                         tol);
                 }},
                {"rhs",
                 [](const PA& p, double tol) {
                     double al = p.at_double("alpha"), be = p.at_double("beta"),
                            ga = p.at_double("gamma"), q = p.at_double("q"),
                            x = p.at_double("x"), y = p.at_double("y"), z = p.at_double("z");
                     return ggrq5_term1_numeric(al, be, ga, q, x, y, z, tol) +
                            ggrq5_term2_numeric(al, be, ga, q, x, y, z, tol);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "vand";
            d.mode = IdentityMode::formal;
            d.anchor = "Chu-Vandermonde summation (Slater (1.7.7); Appendix III.4)";
            d.constraints = "c non-integral";
            d.admissible = [](const PA& p) {
                return p.has("a") && p.has("c") && nonintegral(p.at("c"));
            };
            d.default_order = 8;
            d.scalar_sides = {
                {"series", [](const PA& p, long n) { return vand_lhs(p.at("a"), p.at("c"), n); }},
                {"closed", [](const PA& p, long n) { return vand_rhs(p.at("a"), p.at("c"), n); }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "pfaff";
            d.mode = IdentityMode::formal;
            d.anchor = "Pfaff-Saalschutz summation (Slater (2.3.1.3); Appendix III.2)";
            d.constraints = "c and c-a-b non-integral";
            d.admissible = [](const PA& p) {
                return p.has("a") && p.has("b") && p.has("c") && nonintegral(p.at("c")) &&
                       nonintegral(p.at("c") - p.at("a") - p.at("b"));
            };
            d.default_order = 6;
            d.scalar_sides = {
                {"series",
                 [](const PA& p, long n) { return pfaff_lhs(p.at("a"), p.at("b"), p.at("c"), n); }},
                {"closed",
                 [](const PA& p, long n) { return pfaff_rhs(p.at("a"), p.at("b"), p.at("c"), n); }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "qvand";
            d.mode = IdentityMode::formal;
            d.anchor = "q-Chu-Vandermonde summation (Gasper-Rahman (1.5.3); Appendix II.6)";
            d.constraints = "a nonzero; c clear of q-powers";
            d.admissible = [](const PA& p) {
                return p.has("a") && p.has("c") && p.has("q") && !p.at("a").is_zero() &&
                       q_power_free(p.at("c"), p.at("q"));
            };
            d.default_order = 6;
            d.scalar_sides = {
                {"series",
                 [](const PA& p, long n) {
                     return qvand_lhs(p.at("a"), p.at("c"), p.at("q"), n);
                 }},
                {"closed",
                 [](const PA& p, long n) {
                     return qvand_rhs(p.at("a"), p.at("c"), p.at("q"), n);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "qpfaff";
            d.mode = IdentityMode::formal;
            d.anchor = "q-Pfaff-Saalschutz summation (Gasper-Rahman (1.7.2); Appendix II.12)";
            d.constraints = "a, b nonzero; c and c/(ab) clear of q-powers";
            d.admissible = [](const PA& p) {
                return p.has("a") && p.has("b") && p.has("c") && p.has("q") &&
                       !p.at("a").is_zero() && !p.at("b").is_zero() &&
                       q_power_free(p.at("c"), p.at("q")) &&
                       q_power_free(p.at("c") / (p.at("a") * p.at("b")), p.at("q"));
            };
            d.default_order = 6;
            d.scalar_sides = {
                {"series",
                 [](const PA& p, long n) {
                     return qpfaff_lhs(p.at("a"), p.at("b"), p.at("c"), p.at("q"), n);
                 }},
                {"closed",
                 [](const PA& p, long n) {
                     return qpfaff_rhs(p.at("a"), p.at("b"), p.at("c"), p.at("q"), n);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "qbin";
            d.mode = IdentityMode::both;
            d.anchor = "q-binomial theorem (Gasper-Rahman (1.3.2); Appendix II.3)";
            d.constraints = "numeric: |z| < 1";
            d.admissible = [](const PA& p) {
                if (!p.has("a") || !p.has("q")) return false;
                if (p.has("z") && !(p.at("z").abs() < Rational(1))) return false;
                return true;
            };
            d.default_order = 8;
            d.formal_sides = {
                {"sum",
                 [](const PA& p, int N) { return qbin_sum_series(p.at("a"), p.at("q"), N); }},
                {"product",
                 [](const PA& p, int N) { return qbin_product_series(p.at("a"), p.at("q"), N); }},
            };
            d.numeric_sides = {
                {"sum",
                 [](const PA& p, double) {
                     return qbin_sum_numeric(p.at_double("a"), p.at_double("q"), p.at_double("z"));
                 }},
                {"product",
                 [](const PA& p, double tol) {
                     return qbin_product_numeric(p.at_double("a"), p.at_double("q"),
                                                 p.at_double("z"), tol);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "euler-2f1";
            d.mode = IdentityMode::formal;
            d.anchor = "Euler-Pfaff transformation of 2F1 (Slater (1.7.1.3))";
            d.constraints = "c non-integral";
            d.admissible = [](const PA& p) {
                return p.has("a") && p.has("b") && p.has("c") && nonintegral(p.at("c"));
            };
            d.default_order = 6;
            d.formal_sides = {
                {"lhs",
                 [](const PA& p, int N) {
                     return euler_2f1_lhs_series(p.at("a"), p.at("b"), p.at("c"), N);
                 }},
                {"rhs",
                 [](const PA& p, int N) {
                     return euler_2f1_rhs_series(p.at("a"), p.at("b"), p.at("c"), N);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "bailey";
            d.mode = IdentityMode::formal;
            d.anchor = "Bailey's very-well-poised 8phi7 transformation, terminating "
                       "instances e = q^{-N} (Gasper-Rahman (2.10.1); Appendix III.23)";
            d.constraints = "b,c,d,f nonzero; a, a/b, a/c, a/d, a/f, a^2/(bcd), a^2/(bcdf) "
                            "clear of q-powers";
            d.admissible = [](const PA& p) {
                for (const char* k : {"a", "b", "c", "d", "f", "q"})
                    if (!p.has(k)) return false;
                const Rational &a = p.at("a"), &b = p.at("b"), &c = p.at("c"), &dd = p.at("d"),
                               &f = p.at("f"), &q = p.at("q");
                if (b.is_zero() || c.is_zero() || dd.is_zero() || f.is_zero()) return false;
                return q_power_free(a, q) && q_power_free(a / b, q) && q_power_free(a / c, q) &&
                       q_power_free(a / dd, q) && q_power_free(a / f, q) &&
                       q_power_free(a * a / (b * c * dd), q) &&
                       q_power_free(a * a / (b * c * dd * f), q);
            };
            d.default_order = 6;
            d.scalar_sides = {
                {"lhs",
                 [](const PA& p, long n) {
                     return bailey_lhs(p.at("a"), p.at("b"), p.at("c"), p.at("d"), p.at("f"),
                                       p.at("q"), n);
                 }},
                {"rhs",
                 [](const PA& p, long n) {
                     return bailey_rhs(p.at("a"), p.at("b"), p.at("c"), p.at("d"), p.at("f"),
                                       p.at("q"), n);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "1psi1";
            d.mode = IdentityMode::numeric;
            d.anchor = "Ramanujan's 1psi1 summation (Gasper-Rahman Ex. 1.6(ii); Appendix "
                       "II.5); annulus |b/a| < |z| < 1";
            d.constraints = "0 < q < 1; |b/a| < |z| < 1; a clear of positive q-powers; "
                            "b and b/a clear of q^{-i}, i>=0; az clear of q-powers";
            d.admissible = [](const PA& p) {
                for (const char* k : {"a", "b", "q", "z"})
                    if (!p.has(k)) return false;
                const Rational &a = p.at("a"), &b = p.at("b"), &q = p.at("q"), &z = p.at("z");
                if (!(q > Rational(0) && q < Rational(1))) return false;
                if (a.is_zero() || z.is_zero()) return false;
                if (equals_q_power(a, q, 1, 40)) return false;        // negative-side pole
                if (equals_q_power(b, q, -40, 0)) return false;       // (b;q)_n denominator
                if (equals_q_power(b / a, q, -40, 0)) return false;   // product-side zero
                if (equals_q_power(a * z, q, -40, 40)) return false;  // (az;q) / (q/az;q) zero
                return (b / a).abs() < z.abs() && z.abs() < Rational(1);
            };
            d.numeric_sides = {
                {"sum",
                 [](const PA& p, double tol) {
                     return bilateral_1psi1(p.at_double("a"), p.at_double("b"), p.at_double("q"),
                                            p.at_double("z"), tol);
                 }},
                {"product",
                 [](const PA& p, double tol) {
                     return ramanujan_1psi1_product(p.at_double("a"), p.at_double("b"),
                                                    p.at_double("q"), p.at_double("z"),
                                                    tol / 10.0);
                 }},
            };
            r[d.id] = d;
        }
        {
            IdentityDescriptor d;
            d.id = "andrews";
            d.mode = IdentityMode::both;
            d.anchor = "Andrews's n-variable transformation of the basic Appell-type sum; "
                       "the right side uses the reading validated against the left-side "
                       "brute force (commonly printed forms leave two symbols undefined)";
            d.constraints = "n in 1..4; a nonzero; c clear of q-powers; exact mode needs "
                            "c = a q^{-M}; numeric mode needs |a| < 1 and |x_j| < 1";
            d.admissible = [](const PA& p) {
                if (!p.has("n") || !p.has("a") || !p.has("c") || !p.has("q")) return false;
                long n = p.at("n").to_long();
                if (n < 1 || n > 4) return false;
                for (long j = 1; j <= n; ++j)
                    if (!p.has("b" + std::to_string(j))) return false;
                return !p.at("a").is_zero() && q_power_free(p.at("c"), p.at("q"));
            };
            d.default_order = 4;
            auto collect = [](const PA& p, std::vector<Rational>& bs) {
                long n = p.at("n").to_long();
                for (long j = 1; j <= n; ++j) bs.push_back(p.at("b" + std::to_string(j)));
            };
            d.formal_sides = {
                {"lhs",
                 [collect](const PA& p, int N) {
                     std::vector<Rational> bs;
                     collect(p, bs);
                     return andrews_lhs_series(p.at("a"), p.at("c"), bs, p.at("q"), N);
                 }},
                {"rhs",
                 [collect](const PA& p, int N) {
                     std::vector<Rational> bs;
                     collect(p, bs);
                     return andrews_rhs_series(p.at("a"), p.at("c"), bs, p.at("q"), N);
                 }},
            };
            d.numeric_sides = {
                {"lhs",
                 [collect](const PA& p, double tol) {
                     std::vector<Rational> bs;
                     collect(p, bs);
                     std::vector<double> bd, xd;
                     for (auto& b : bs) bd.push_back(b.to_double());
                     for (size_t j = 1; j <= bs.size(); ++j)
                         xd.push_back(p.at_double("x" + std::to_string(j)));
                     return andrews_lhs_numeric(p.at_double("a"), p.at_double("c"), bd, xd,
                                                p.at_double("q"), tol);
                 }},
                {"rhs",
                 [collect](const PA& p, double tol) {
                     std::vector<Rational> bs;
                     collect(p, bs);
                     std::vector<double> bd, xd;
                     for (auto& b : bs) bd.push_back(b.to_double());
                     for (size_t j = 1; j <= bs.size(); ++j)
                         xd.push_back(p.at_double("x" + std::to_string(j)));
                     return andrews_rhs_numeric(p.at_double("a"), p.at_double("c"), bd, xd,
                                                p.at_double("q"), AndrewsReading::validated, tol);
                 }},
            };
            r[d.id] = d;
        }
        return r;
    }();
    return reg;
}

}  // namespace qhyper
