/** @file parameters.hpp
 *
 *  Bindings of identity symbols (alpha, beta, gamma, q, a, b, ... and
 *  the expansion variables x, y, z) to exact rational values. Numeric
 *  verification converts the same rational points to doubles, which
 *  keeps every run reproducible from its seed.
 */
#pragma once

#include <map>
#include <optional>
#include <string>

#include "qhyper/errors.hpp"
#include "qhyper/rational.hpp"

namespace qhyper {

class ParameterAssignment {
  public:
    ParameterAssignment() = default;
    ParameterAssignment(std::initializer_list<std::pair<const std::string, Rational>> init)
        : values_(init) {}

    bool has(const std::string& name) const { return values_.count(name) != 0; }

    const Rational& at(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end())
            throw UndeclaredSymbol("parameter '" + name + "' is not bound");
        return it->second;
    }

    double at_double(const std::string& name) const { return at(name).to_double(); }

    void set(const std::string& name, Rational value) { values_[name] = std::move(value); }

    const std::map<std::string, Rational>& values() const { return values_; }

    /// Deterministic rendering "a=1/3, b=2, ..." in name order.
    std::string str() const {
        std::string out;
        for (const auto& [k, v] : values_) {
            if (!out.empty()) out += ", ";
            out += k + "=" + v.str();
        }
        return out;
    }

  private:
    std::map<std::string, Rational> values_;
};

/// The (alpha, beta, gamma[, q]) parameter pack of the triple-sum
/// identity and its q-analogues.
struct GGRParameters {
    Rational alpha, beta, gamma;
    std::optional<Rational> q;

    static GGRParameters from(const ParameterAssignment& p) {
        GGRParameters g{p.at("alpha"), p.at("beta"), p.at("gamma"), std::nullopt};
        if (p.has("q")) g.q = p.at("q");
        return g;
    }
};

}  // namespace qhyper
