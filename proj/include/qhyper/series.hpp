/** @file series.hpp
 *
 *  Truncated multivariate formal power series over an exact or numeric
 *  scalar field. Truncation is by total degree: a series of order N
 *  stores coefficients for every monomial of total degree <= N and is
 *  exact in that range.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qhyper/errors.hpp"
#include "qhyper/rational.hpp"
#include "qhyper/special.hpp"

namespace qhyper {

/// Exponent tuple, one entry per series variable. Ordered by total
/// degree, then lexicographically, which is also the canonical
/// rendering order.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exps) : e(std::move(exps)) {}
    MultiIndex(std::initializer_list<int> exps) : e(exps) {}

    int total_degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e == b.e; }

    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return b.e < a.e;  // within a degree: decreasing power of the first variable
    }
};

template <typename S>
class TruncatedSeries {
  public:
    TruncatedSeries(std::vector<std::string> vars, int order)
        : vars_(std::move(vars)), order_(order) {}

    static TruncatedSeries constant(std::vector<std::string> vars, int order, S c) {
        TruncatedSeries s(std::move(vars), order);
        s.set(MultiIndex(std::vector<int>(s.vars_.size(), 0)), std::move(c));
        return s;
    }

    static TruncatedSeries variable(std::vector<std::string> vars, int order, size_t which) {
        TruncatedSeries s(std::move(vars), order);
        if (which >= s.vars_.size()) throw Error("variable index out of range");
        std::vector<int> e(s.vars_.size(), 0);
        if (order >= 1) {
            e[which] = 1;
            s.set(MultiIndex(std::move(e)), S(1));
        }
        return s;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    int order() const { return order_; }
    const std::map<MultiIndex, S>& terms() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    /// Stored coefficient or zero; OrderExceeded beyond the truncation order.
    S coefficient(const MultiIndex& idx) const {
        if (idx.e.size() != vars_.size())
            throw VariableMismatch("multi-index arity does not match series variables");
        if (idx.total_degree() > order_)
            throw OrderExceeded("requested coefficient of total degree " +
                                std::to_string(idx.total_degree()) +
                                " exceeds truncation order " + std::to_string(order_));
        auto it = coef_.find(idx);
        return it == coef_.end() ? S(0) : it->second;
    }

    S constant_term() const {
        auto it = coef_.find(MultiIndex(std::vector<int>(vars_.size(), 0)));
        return it == coef_.end() ? S(0) : it->second;
    }

    void set(MultiIndex idx, S value) {
        if (idx.total_degree() > order_) return;
        if (exactly_zero(value))
            coef_.erase(idx);
        else
            coef_[std::move(idx)] = std::move(value);
    }

    void add_to(const MultiIndex& idx, const S& value) {
        if (idx.total_degree() > order_) return;
        auto it = coef_.find(idx);
        if (it == coef_.end()) {
            if (!exactly_zero(value)) coef_.emplace(idx, value);
            return;
        }
        it->second += value;
        if (exactly_zero(it->second)) coef_.erase(it);
    }

    /// Smallest total degree carrying a nonzero coefficient; order()+1 when zero.
    int low_degree() const {
        return coef_.empty() ? order_ + 1 : coef_.begin()->first.total_degree();
    }

    TruncatedSeries truncated(int new_order) const {
        TruncatedSeries r(vars_, std::min(new_order, order_));
        for (const auto& [idx, c] : coef_)
            if (idx.total_degree() <= r.order_) r.coef_.emplace(idx, c);
        return r;
    }

    /// Equality demands matching orders and coefficients (exact kind only).
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.vars_ == b.vars_ && a.order_ == b.order_ && a.coef_ == b.coef_;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(vars_, order_);
        for (const auto& [idx, c] : coef_) r.coef_.emplace(idx, S(0) - c);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        check_shape(a, b);
        TruncatedSeries r(a.vars_, std::min(a.order_, b.order_));
        for (const auto& [idx, c] : a.coef_)
            if (idx.total_degree() <= r.order_) r.coef_.emplace(idx, c);
        for (const auto& [idx, c] : b.coef_) r.add_to(idx, c);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        check_shape(a, b);
        TruncatedSeries r(a.vars_, std::min(a.order_, b.order_));
        for (const auto& [ia, ca] : a.coef_) {
            int da = ia.total_degree();
            if (da > r.order_) break;
            for (const auto& [ib, cb] : b.coef_) {
                if (da + ib.total_degree() > r.order_) break;
                MultiIndex prod = ia;
                for (size_t v = 0; v < prod.e.size(); ++v) prod.e[v] += ib.e[v];
                r.add_to(prod, ca * cb);
            }
        }
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const S& c) {
        TruncatedSeries r(a.vars_, a.order_);
        if (exactly_zero(c)) return r;
        for (const auto& [idx, v] : a.coef_) r.coef_.emplace(idx, v * c);
        return r;
    }
    friend TruncatedSeries operator*(const S& c, const TruncatedSeries& a) { return a * c; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const S& c) {
        TruncatedSeries r = a;
        r.add_to(MultiIndex(std::vector<int>(a.vars_.size(), 0)), c);
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const S& c) { return a + (S(0) - c); }

    /// Canonical rendering: terms sorted by total degree then
    /// lexicographic exponents, rationals printed as "p/q".
    std::string str() const {
        if (coef_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [idx, c] : coef_) {
            std::string mon = monomial_str(idx);
            bool negative = scalar_negative(c);
            S mag = negative ? S(0) - c : c;
            if (first) {
                out += negative ? "-" : "";
                first = false;
            } else {
                out += negative ? " - " : " + ";
            }
            if (mon.empty()) {
                out += scalar_str(mag);
            } else if (exactly_one(mag)) {
                out += mon;
            } else {
                out += scalar_str(mag) + "*" + mon;
            }
        }
        return out;
    }

  private:
    static void check_shape(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.vars_ != b.vars_)
            throw VariableMismatch("series operands declare different variables");
    }

    static bool scalar_negative(const Rational& r) { return r.sign() < 0; }
    static bool scalar_negative(double x) { return x < 0.0; }

    std::string monomial_str(const MultiIndex& idx) const {
        std::string m;
        for (size_t v = 0; v < vars_.size(); ++v) {
            if (idx.e[v] == 0) continue;
            if (!m.empty()) m += "*";
            m += vars_[v];
            if (idx.e[v] != 1) m += "^" + std::to_string(idx.e[v]);
        }
        return m;
    }

    std::vector<std::string> vars_;
    int order_;
    std::map<MultiIndex, S> coef_;
};

/// Multiplicative inverse up to the truncation order; the constant term
/// must be nonzero. Computed as (1/c0) * sum_l u^l with u = 1 - a/c0.
template <typename S>
TruncatedSeries<S> series_invert(const TruncatedSeries<S>& a) {
    S c0 = a.constant_term();
    if (exactly_zero(c0))
        throw NotInvertible("series with zero constant term has no inverse");
    TruncatedSeries<S> u = TruncatedSeries<S>::constant(a.vars(), a.order(), S(1)) -
                           a * (S(1) / c0);
    TruncatedSeries<S> sum = TruncatedSeries<S>::constant(a.vars(), a.order(), S(1));
    TruncatedSeries<S> upow = u;
    for (int l = 1; l <= a.order() && !upow.is_zero(); ++l) {
        sum = sum + upow;
        upow = upow * u;
    }
    return sum * (S(1) / c0);
}

/// Nonnegative or negative integer power (negative requires invertibility).
template <typename S>
TruncatedSeries<S> series_pow(const TruncatedSeries<S>& a, long e) {
    if (e < 0) return series_pow(series_invert(a), -e);
    TruncatedSeries<S> r = TruncatedSeries<S>::constant(a.vars(), a.order(), S(1));
    for (long i = 0; i < e; ++i) r = r * a;
    return r;
}

/// Generalized power a^e for scalar exponent e. Integer e goes through
/// the integer path; otherwise the constant term must equal 1 and the
/// binomial series sum_k binom(e,k) (a-1)^k is used.
template <typename S>
TruncatedSeries<S> series_pow(const TruncatedSeries<S>& a, const S& e) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (e.is_integer()) return series_pow(a, e.to_long());
    } else {
        if (e == static_cast<long>(e)) return series_pow(a, static_cast<long>(e));
    }
    if (!exactly_one(a.constant_term()))
        throw UnsupportedBase(
            "fractional power requires a series with constant term 1");
    TruncatedSeries<S> u = a - S(1);
    TruncatedSeries<S> r = TruncatedSeries<S>::constant(a.vars(), a.order(), S(1));
    TruncatedSeries<S> upow = u;
    for (long k = 1; k <= a.order() && !upow.is_zero(); ++k) {
        r = r + upow * gen_binomial(e, k);
        upow = upow * u;
    }
    return r;
}

/// sum_{l=0}^{N} rule(l) * g^l for g with zero constant term. Only
/// l <= N contribute because deg(g^l) >= l.
template <typename S>
TruncatedSeries<S> series_compose(const std::function<S(long)>& rule,
                                  const TruncatedSeries<S>& g) {
    if (!exactly_zero(g.constant_term()))
        throw NonzeroConstantTerm("composition argument must have zero constant term");
    TruncatedSeries<S> r = TruncatedSeries<S>::constant(g.vars(), g.order(), rule(0));
    TruncatedSeries<S> gpow = g;
    for (long l = 1; l <= g.order() && !gpow.is_zero(); ++l) {
        r = r + gpow * rule(l);
        gpow = gpow * g;
    }
    return r;
}

/// Finite q-product (u;q)_n in the series ring: the literal product of
/// factors (1 - u q^i) for n >= 0, or the inverse product for n < 0.
template <typename S>
TruncatedSeries<S> q_product(const TruncatedSeries<S>& u, const S& q, long n) {
    check_q_base(q);
    TruncatedSeries<S> r = TruncatedSeries<S>::constant(u.vars(), u.order(), S(1));
    if (n >= 0) {
        S qi(1);
        for (long i = 0; i < n; ++i) {
            r = r * (TruncatedSeries<S>::constant(u.vars(), u.order(), S(1)) - u * qi);
            qi *= q;
        }
        return r;
    }
    S qi = power(q, n);
    for (long i = 0; i < -n; ++i) {
        TruncatedSeries<S> factor =
            TruncatedSeries<S>::constant(u.vars(), u.order(), S(1)) - u * qi;
        r = r * series_invert(factor);
        qi *= q;
    }
    return r;
}

/// Infinite q-product (u;q)_inf for u with zero constant term, via
/// Euler's expansion sum_k (-1)^k q^{k(k-1)/2} u^k / (q;q)_k. Every
/// factor of the literal product touches all degrees, so the expansion
/// is the defining form here.
template <typename S>
TruncatedSeries<S> q_product_inf(const TruncatedSeries<S>& u, const S& q) {
    check_q_base(q);
    if (!exactly_zero(u.constant_term()))
        throw NonzeroConstantTerm("infinite q-product needs zero constant term");
    TruncatedSeries<S> r = TruncatedSeries<S>::constant(u.vars(), u.order(), S(1));
    TruncatedSeries<S> upow = u;
    S qfac(1);  // (q;q)_k, updated incrementally
    S sign(1);
    for (long k = 1; k <= u.order() && !upow.is_zero(); ++k) {
        qfac *= S(1) - power(q, k);
        sign = S(0) - sign;
        r = r + upow * (sign * power(q, choose2(k)) / qfac);
        upow = upow * u;
    }
    return r;
}

}  // namespace qhyper
