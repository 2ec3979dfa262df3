/** @file verify.hpp
 *
 *  Verification driver: seeded pole-avoiding parameter sampling, formal
 *  coefficient comparison, adaptive numeric comparison, the
 *  analytic-failure demonstration, proof-chain replay and the q->1
 *  trend check. Reports are reproducible from (identity, seed,
 *  settings); the canonical serialization omits wall-clock timing.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhyper/registry.hpp"

namespace qhyper {

// --- deterministic rng -----------------------------------------------------

/// splitmix64. Standard-library distributions are implementation
/// defined; reports must reproduce bit-for-bit from the seed.
class SampleRng {
  public:
    explicit SampleRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n)
    long below(long n) { return static_cast<long>(next() % static_cast<uint64_t>(n)); }

    /// Uniform in [lo, hi] inclusive
    long range(long lo, long hi) { return lo + below(hi - lo + 1); }

    /// Random nonzero rational with |num| <= max_num, 2 <= den <= max_den.
    Rational noninteger(long max_num = 50, long max_den = 50) {
        while (true) {
            long num = range(-max_num, max_num);
            long den = range(2, max_den);
            Rational r(num, den);
            if (!r.is_integer()) return r;
        }
    }

    Rational nonzero(long max_num = 20, long max_den = 20) {
        while (true) {
            long num = range(-max_num, max_num);
            if (num == 0) continue;
            return Rational(num, range(1, max_den));
        }
    }

    /// Small nonzero rational with |value| <= limit_num/limit_den scale,
    /// used for expansion-point coordinates.
    Rational small_point(long max_num = 3, long min_den = 10, long max_den = 40) {
        long num = range(1, max_num) * (below(2) == 0 ? 1 : -1);
        return Rational(num, range(min_den, max_den));
    }

  private:
    uint64_t state_;
};

inline const std::vector<Rational>& q_rotation() {
    static const std::vector<Rational> qs{Rational(1, 2), Rational(1, 3), Rational(2, 5),
                                          Rational(3, 7)};
    return qs;
}

// --- reports ---------------------------------------------------------------

enum class Verdict { pass, fail, expected_fail_confirmed };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "expected-fail-confirmed";
    }
}

struct Difference {
    std::string side;   // which comparison ("GGR1", "rhs", ...)
    std::string where;  // monomial, "n=3", or "point"
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string identity;
    std::string mode;  // formal | numeric | expected-fail
    ParameterAssignment params;
    int order = 0;
    double tol = 0.0;
    std::vector<Difference> differences;
    Verdict verdict = Verdict::fail;
    double seconds = 0.0;
    uint64_t seed = 0;
    int sample_index = -1;
    std::string note;

    bool passed() const { return verdict != Verdict::fail; }

    /// JSON form; exact scalars appear as "numerator/denominator",
    /// numeric scalars as decimals with 17 significant digits. Timing
    /// is optional so that the canonical form is reproducible
    /// bit-for-bit from the seed and settings.
    nlohmann::json to_json(bool include_timing = true) const {
        nlohmann::json j;
        j["identity"] = identity;
        j["mode"] = mode;
        nlohmann::json pj = nlohmann::json::object();
        for (const auto& [k, v] : params.values())
            pj[k] = v.num().get_str() + "/" + v.den().get_str();
        j["parameters"] = pj;
        if (mode == "formal")
            j["order"] = order;
        else
            j["tol"] = tol;
        nlohmann::json diffs = nlohmann::json::array();
        for (const auto& d : differences)
            diffs.push_back({{"side", d.side}, {"where", d.where}, {"lhs", d.lhs}, {"rhs", d.rhs}});
        j["differences"] = diffs;
        j["verdict"] = verdict_str(verdict);
        j["seed"] = seed;
        j["sample_index"] = sample_index;
        if (!note.empty()) j["note"] = note;
        if (include_timing) j["seconds"] = seconds;
        return j;
    }

    std::string canonical_json() const { return to_json(false).dump(); }

    std::string text() const {
        std::string out = identity + " [" + mode + "] " + verdict_str(verdict);
        out += "  params: " + params.str();
        if (mode == "formal")
            out += "  order=" + std::to_string(order);
        else
            out += "  tol=" + scalar_str(tol);
        if (!note.empty()) out += "\n  " + note;
        for (const auto& d : differences)
            out += "\n  mismatch " + d.side + " at " + d.where + ": " + d.lhs + " vs " + d.rhs;
        return out;
    }
};

// --- side access (External surface used by the CLI) ------------------------

inline SeriesQ build_formal_side(const std::string& id, const std::string& side,
                                 const ParameterAssignment& p, int order) {
    const auto& d = find_identity(id);
    for (const auto& s : d.formal_sides)
        if (s.name == side) return s.build(p, order);
    if (d.mode == IdentityMode::numeric)
        throw ModeViolation("identity '" + id + "' has no formal expansion");
    throw UnknownIdentity("identity '" + id + "' has no formal side '" + side + "'");
}

inline Rational eval_scalar_side(const std::string& id, const std::string& side,
                                 const ParameterAssignment& p, long n) {
    const auto& d = find_identity(id);
    for (const auto& s : d.scalar_sides)
        if (s.name == side) return s.eval(p, n);
    throw UnknownIdentity("identity '" + id + "' has no scalar side '" + side + "'");
}

inline double eval_numeric_side(const std::string& id, const std::string& side,
                                const ParameterAssignment& p, double tol) {
    const auto& d = find_identity(id);
    for (const auto& s : d.numeric_sides)
        if (s.name == side) return s.eval(p, tol);
    if (d.mode == IdentityMode::formal)
        throw ModeViolation("identity '" + id + "' admits no numeric evaluation");
    throw UnknownIdentity("identity '" + id + "' has no numeric side '" + side + "'");
}

// --- comparison helpers ----------------------------------------------------

/// All coefficient mismatches between two equally-shaped series.
inline std::vector<Difference> compare_series(const std::string& side_name, const SeriesQ& ref,
                                              const SeriesQ& other) {
    std::vector<Difference> out;
    SeriesQ delta = ref - other;
    for (const auto& [idx, c] : delta.terms()) {
        (void)c;
        std::string mon;
        for (size_t v = 0; v < idx.e.size(); ++v) {
            if (idx.e[v] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += ref.vars()[v];
            if (idx.e[v] != 1) mon += "^" + std::to_string(idx.e[v]);
        }
        if (mon.empty()) mon = "1";
        out.push_back({side_name, mon, ref.coefficient(idx).str(), other.coefficient(idx).str()});
    }
    return out;
}

/// Relative difference, falling back to absolute near zero.
inline double numeric_difference(double a, double b) {
    double diff = std::abs(a - b);
    double mag = std::max(std::abs(a), std::abs(b));
    return mag > 1e-8 ? diff / mag : diff;
}

// --- parameter sampling ----------------------------------------------------

/// Deterministic admissible samples for an identity. Rejection
/// sampling against the registered exclusion predicates; rationals stay
/// small (numerators and denominators bounded by 50).
inline std::vector<ParameterAssignment> sample_parameters(const std::string& id, uint64_t seed,
                                                          long count) {
    if (count < 1) throw Error("sample count must be >= 1");
    const auto& d = find_identity(id);
    SampleRng rng(seed);
    std::vector<ParameterAssignment> out;
    const long max_tries = 4000;
    for (long i = 0; i < count; ++i) {
        ParameterAssignment p;
        bool ok = false;
        for (long t = 0; t < max_tries; ++t) {
            p = ParameterAssignment{};
            const Rational& q = q_rotation()[static_cast<size_t>((i + t) %
                                                                 q_rotation().size())];
            if (id == "ggr") {
                p.set("alpha", rng.noninteger());
                p.set("beta", rng.noninteger());
                p.set("gamma", rng.noninteger());
            } else if (id == "ggrq" || id == "ggrq1") {
                p.set("alpha", rng.nonzero());
                p.set("beta", rng.nonzero());
                p.set("gamma", rng.nonzero());
                p.set("q", q);
            } else if (id == "ggrq2" || id == "ggrq3" || id == "ggrq4" || id == "ggrq5") {
                p.set("alpha", rng.nonzero(5, 9));
                p.set("beta", rng.nonzero(5, 9));
                p.set("gamma", rng.nonzero(5, 9));
                p.set("q", q);
                p.set("x", rng.small_point());
                p.set("y", rng.small_point());
                p.set("z", rng.small_point());
            } else if (id == "vand") {
                p.set("a", rng.noninteger());
                p.set("c", rng.noninteger());
            } else if (id == "pfaff" || id == "euler-2f1") {
                p.set("a", rng.noninteger());
                p.set("b", rng.noninteger());
                p.set("c", rng.noninteger());
            } else if (id == "qvand") {
                p.set("a", rng.nonzero());
                p.set("c", rng.nonzero());
                p.set("q", q);
            } else if (id == "qpfaff") {
                p.set("a", rng.nonzero());
                p.set("b", rng.nonzero());
                p.set("c", rng.nonzero());
                p.set("q", q);
            } else if (id == "qbin") {
                p.set("a", rng.nonzero());
                p.set("q", q);
                p.set("z", rng.small_point());
            } else if (id == "bailey") {
                p.set("a", rng.nonzero(9, 9));
                p.set("b", rng.nonzero(9, 9));
                p.set("c", rng.nonzero(9, 9));
                p.set("d", rng.nonzero(9, 9));
                p.set("f", rng.nonzero(9, 9));
                p.set("q", q);
            } else if (id == "1psi1") {
                p.set("q", q);
                Rational a = rng.nonzero(9, 9);
                Rational z(rng.range(1, 3) * (rng.below(2) == 0 ? 1 : -1), rng.range(4, 9));
                Rational w(rng.range(1, 3) * (rng.below(2) == 0 ? 1 : -1), rng.range(4, 9));
                p.set("a", a);
                p.set("z", z);
                p.set("b", a * z * w);  // |b/a| = |z||w| < |z|
            } else if (id == "andrews") {
                long n = 1 + i % 3;
                p.set("n", Rational(n));
                Rational a = rng.small_point(3, 4, 9);  // |a| < 1
                long M = i % 4;
                p.set("a", a);
                p.set("c", a * power(q, -M));
                p.set("q", q);
                for (long j = 1; j <= n; ++j) {
                    p.set("b" + std::to_string(j), rng.nonzero(9, 9));
                    p.set("x" + std::to_string(j), rng.small_point());
                }
            } else {
                throw UnknownIdentity("no sampling strategy for '" + id + "'");
            }
            if (d.admissible(p)) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw ConstraintUnsatisfiable("could not sample admissible parameters for '" + id +
                                          "' after bounded retries");
        out.push_back(p);
    }
    return out;
}

// --- verification ----------------------------------------------------------

inline VerificationReport verify_formal(const std::string& id, const ParameterAssignment& p,
                                        int order) {
    const auto& d = find_identity(id);
    if (d.mode == IdentityMode::numeric)
        throw ModeViolation("identity '" + id + "' is numeric-only");
    if (!d.admissible(p))
        throw OutOfDomain("parameters violate constraints of '" + id + "': " + d.constraints);
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = id;
    rep.mode = "formal";
    rep.params = p;
    rep.order = order;
    if (!d.formal_sides.empty()) {
        SeriesQ ref = d.formal_sides.front().build(p, order);
        for (size_t i = 1; i < d.formal_sides.size(); ++i) {
            SeriesQ other = d.formal_sides[i].build(p, order);
            auto diffs = compare_series(d.formal_sides[i].name, ref, other);
            rep.differences.insert(rep.differences.end(), diffs.begin(), diffs.end());
        }
    }
    for (long n = 0; n <= order && !d.scalar_sides.empty(); ++n) {
        Rational ref = d.scalar_sides.front().eval(p, n);
        for (size_t i = 1; i < d.scalar_sides.size(); ++i) {
            Rational other = d.scalar_sides[i].eval(p, n);
            if (ref != other)
                rep.differences.push_back({d.scalar_sides[i].name, "n=" + std::to_string(n),
                                           ref.str(), other.str()});
        }
    }
    rep.verdict = rep.differences.empty() ? Verdict::pass : Verdict::fail;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Demonstrates that the compact q-analogue is analytically false and
/// that the two-term form repairs it: computes L (triple sum), T1 (the
/// compact right side) and T2 (the correction term); confirmation
/// requires |L - T1| > 10 tol while |L - (T1+T2)| <= tol |L|.
inline VerificationReport falsify_analytic_ggrq2(const ParameterAssignment& p, double tol) {
    const auto& d = find_identity("ggrq2");
    if (!d.admissible(p) || !p.has("x"))
        throw OutOfDomain("point violates the numeric domain of the compact q-analogue");
    if (p.at("x").is_zero() && p.at("y").is_zero() && p.at("z").is_zero())
        throw OutOfDomain("degenerate point x=y=z=0 has zero defect");
    auto t0 = std::chrono::steady_clock::now();
    double al = p.at_double("alpha"), be = p.at_double("beta"), ga = p.at_double("gamma"),
           q = p.at_double("q"), x = p.at_double("x"), y = p.at_double("y"),
           z = p.at_double("z");
    double L = ggrq_triple_sum_numeric(al, be, ga, q, x, y, z, tol / 1000.0);
    double T1 = ggrq5_term1_numeric(al, be, ga, q, x, y, z, tol / 1000.0);
    double T2 = ggrq5_term2_numeric(al, be, ga, q, x, y, z, tol / 1000.0);
    VerificationReport rep;
    rep.identity = "ggrq2";
    rep.mode = "expected-fail";
    rep.params = p;
    rep.tol = tol;
    bool defect = std::abs(L - T1) > 10.0 * tol;
    bool repaired = std::abs(L - (T1 + T2)) <= tol * std::abs(L);
    rep.note = "L=" + scalar_str(L) + " T1=" + scalar_str(T1) + " T2=" + scalar_str(T2) +
               " |L-T1|=" + scalar_str(std::abs(L - T1)) +
               " |L-(T1+T2)|=" + scalar_str(std::abs(L - (T1 + T2)));
    if (defect && repaired) {
        rep.verdict = Verdict::expected_fail_confirmed;
    } else {
        rep.verdict = Verdict::fail;
        rep.differences.push_back({"rhs", "point", scalar_str(L), scalar_str(T1)});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline VerificationReport verify_numeric(const std::string& id, const ParameterAssignment& p,
                                         double tol) {
    const auto& d = find_identity(id);
    if (d.mode == IdentityMode::formal)
        throw ModeViolation("identity '" + id + "' is formal-only; " + d.anchor);
    if (d.numeric_expected_fail) return falsify_analytic_ggrq2(p, tol);
    if (!d.admissible(p))
        throw OutOfDomain("point violates constraints of '" + id + "': " + d.constraints);
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = id;
    rep.mode = "numeric";
    rep.params = p;
    rep.tol = tol;
    rep.note = "domain: " + d.constraints;
    // sides are evaluated well below the comparison tolerance; the
    // two-term form cancels by three to four orders of magnitude
    double eval_tol = tol / 1000.0;
    double ref = d.numeric_sides.front().eval(p, eval_tol);
    for (size_t i = 1; i < d.numeric_sides.size(); ++i) {
        double other = d.numeric_sides[i].eval(p, eval_tol);
        if (numeric_difference(ref, other) > tol)
            rep.differences.push_back(
                {d.numeric_sides[i].name, "point", scalar_str(ref), scalar_str(other)});
    }
    rep.verdict = rep.differences.empty() ? Verdict::pass : Verdict::fail;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// --- proof replay ----------------------------------------------------------

/// Five-stage exact replay of one classical reduction chain: the
/// constrained multiple sum, the double sum with its inner terminating
/// 2F1, the single sum, the final 3F2 evaluated directly and through
/// the Pfaff-Saalschutz closed form, and the compact coefficient.
struct ProofTrace {
    GgrVariant variant;
    long X = 0, Y = 0, Z = 0;
    ParameterAssignment params;
    std::vector<std::pair<std::string, Rational>> stages;
    std::vector<bool> stage_equal;  // vs the first stage value
    bool pass = false;

    std::string text() const {
        std::string out = std::string("replay ") +
                          (variant == GgrVariant::ggr1 ? "ggr1" : "ggr2") + " (X,Y,Z)=(" +
                          std::to_string(X) + "," + std::to_string(Y) + "," +
                          std::to_string(Z) + ") " + (pass ? "pass" : "FAIL");
        for (size_t i = 0; i < stages.size(); ++i) {
            out += "\n  " + stages[i].first + " = " + stages[i].second.str();
            if (!stage_equal[i]) out += "   <- differs";
        }
        return out;
    }
};

inline ProofTrace replay_proof(GgrVariant variant, const ParameterAssignment& p, long X, long Y,
                               long Z, long bound = 5) {
    if (X > bound || Y > bound || Z > bound || X < 0 || Y < 0 || Z < 0)
        throw Error("replay indices must lie in 0.." + std::to_string(bound));
    if (!find_identity("ggr").admissible(p))
        throw OutOfDomain("parameters violate the classical admissibility constraints");
    GGRParameters g = GGRParameters::from(p);
    ProofTrace tr;
    tr.variant = variant;
    tr.X = X;
    tr.Y = Y;
    tr.Z = Z;
    tr.params = p;
    if (variant == GgrVariant::ggr1) {
        tr.stages = {
            {"multiple_sum", ggr_multiple_sum_coefficient(GgrVariant::ggr1, g, X, Y, Z)},
            {"double_sum_2f1", ggr1_stage2(g, X, Y, Z)},
            {"single_sum_2f1", ggr1_stage3(g, X, Y, Z)},
            {"3f2_direct", ggr1_stage4(g, X, Y, Z, false)},
            {"3f2_closed", ggr1_stage4(g, X, Y, Z, true)},
            {"compact", ggr_lhs_coefficient(g, X, Y, Z)},
        };
    } else {
        tr.stages = {
            {"multiple_sum", ggr_multiple_sum_coefficient(GgrVariant::ggr2, g, X, Y, Z)},
            {"double_sum_2f1", ggr2_stage2(g, X, Y, Z)},
            {"single_sum_2f1", ggr2_stage3(g, X, Y, Z)},
            {"3f2_direct", ggr2_stage4(g, X, Y, Z, false)},
            {"3f2_closed", ggr2_stage4(g, X, Y, Z, true)},
            {"compact", ggr_lhs_coefficient(g, X, Y, Z)},
        };
    }
    tr.pass = true;
    for (const auto& [name, v] : tr.stages) {
        (void)name;
        bool eq = v == tr.stages.front().second;
        tr.stage_equal.push_back(eq);
        if (!eq) tr.pass = false;
    }
    return tr;
}

// --- q -> 1 limit trend ----------------------------------------------------

/// Numeric coefficient of the plain q-analogue triple sum at
/// (q^alpha, q^beta, q^gamma; q).
inline double ggrq1_lhs_coefficient_numeric(double alpha, double beta, double gamma, double q,
                                            long X, long Y, long Z) {
    double a = std::pow(q, alpha), b = std::pow(q, beta), g = std::pow(q, gamma);
    return q_pochhammer(a, q, X) * q_pochhammer(b, q, Y) * q_pochhammer(q / g, q, Z) *
           q_pochhammer(g, q, X + Y - Z) /
           (q_pochhammer(q, q, X) * q_pochhammer(q, q, Y) * q_pochhammer(q, q, Z) *
            q_pochhammer(a * b, q, X + Y - Z));
}

/// Trend decision: errors must decrease strictly along the sequence (or
/// sit at rounding level throughout) and end below the loose threshold.
inline bool q_limit_trend_pass(const std::vector<double>& errors,
                               double final_threshold = 1e-2) {
    bool monotone = true;
    for (size_t i = 0; i + 1 < errors.size(); ++i)
        if (!(errors[i] > errors[i + 1])) monotone = false;
    bool all_tiny = true;
    for (double e : errors)
        if (e > 1e-12) all_tiny = false;
    return (monotone || all_tiny) && errors.back() < final_threshold;
}

/// Trend restatement of the q->1 limit: with alpha -> q^alpha etc., the
/// q-coefficient must approach the classical one. Pass requires the
/// relative error to decrease strictly along the q sequence (or stay at
/// rounding level throughout) and the final error to fall below 1e-2.
inline VerificationReport q_limit_check(const ParameterAssignment& p, long X, long Y, long Z,
                                        const std::vector<double>& q_sequence = {0.9, 0.99,
                                                                                 0.999}) {
    for (size_t i = 0; i + 1 < q_sequence.size(); ++i)
        if (!(q_sequence[i] < q_sequence[i + 1] && q_sequence[i + 1] < 1.0))
            throw Error("q sequence must increase strictly toward 1 from below");
    auto t0 = std::chrono::steady_clock::now();
    GGRParameters g = GGRParameters::from(p);
    Rational classical = ggr_lhs_coefficient(g, X, Y, Z);
    double c0 = classical.to_double();
    VerificationReport rep;
    rep.identity = "ggr";
    rep.mode = "numeric";
    rep.params = p;
    rep.tol = 1e-2;
    std::vector<double> errors;
    for (double q : q_sequence) {
        double v = ggrq1_lhs_coefficient_numeric(p.at_double("alpha"), p.at_double("beta"),
                                                 p.at_double("gamma"), q, X, Y, Z);
        double err = c0 == 0.0 ? std::abs(v) : std::abs(v - c0) / std::abs(c0);
        errors.push_back(err);
    }
    rep.note = "classical=" + classical.str() + " errors:";
    for (double e : errors) rep.note += " " + scalar_str(e);
    if (q_limit_trend_pass(errors)) {
        rep.verdict = Verdict::pass;
    } else {
        rep.verdict = Verdict::fail;
        rep.differences.push_back({"q-limit",
                                   "(" + std::to_string(X) + "," + std::to_string(Y) + "," +
                                       std::to_string(Z) + ")",
                                   classical.str(), rep.note});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// --- catalogue export ------------------------------------------------------

inline nlohmann::json catalogue_json() {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [id, d] : identity_registry()) {
        nlohmann::json e;
        e["id"] = id;
        e["mode"] = mode_str(d.mode);
        std::vector<std::string> sides;
        for (const auto& s : d.formal_sides) sides.push_back(s.name);
        for (const auto& s : d.scalar_sides) sides.push_back(s.name);
        for (const auto& s : d.numeric_sides)
            if (std::find(sides.begin(), sides.end(), s.name) == sides.end())
                sides.push_back(s.name);
        e["sides"] = sides;
        e["constraints"] = d.constraints;
        e["anchor"] = d.anchor;
        e["default_order"] = d.default_order;
        if (d.numeric_expected_fail) e["numeric_expected_fail"] = true;
        arr.push_back(e);
    }
    return arr;
}

}  // namespace qhyper
