/** @file dsl.hpp
 *
 *  A small expression language for series/identity comparisons beyond
 *  the registry. Grammar:
 *
 *    document   := decl* comparison
 *    decl       := "param" NAME ("=" signed-rational)? pred*
 *                | "var" NAME
 *                | "mode" ("formal" INT | "numeric" binding ("," binding)* "tol" NUMBER)
 *    pred       := "nonzero" | "noninteger"
 *    binding    := NAME "=" signed-rational
 *    comparison := expr "==" expr
 *    expr       := term (("+"|"-") term)*
 *    term       := factor (("*"|"/") factor)*
 *    factor     := "-" factor | atom ("^" atom)?
 *    atom       := RATIONAL | NAME | "(" expr ")" | call
 *    call       := NAME "(" args ")"        args split into ";" groups
 *
 *  Calls: pochhammer(e, k)  qpoch(e, n)  qprodinf(e)
 *         sum(index, lower, upper|auto, body)
 *         hyp(a1,..,ar; b1,..,bs; z)  qhyp(a...; b...; z)
 *         vwp8phi7(a; b,c,d,e,f; z)
 *  The base q is the reserved parameter name used by every q-call.
 */
#pragma once

#include <cctype>
#include <cstdlib>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "qhyper/hypergeometric.hpp"
#include "qhyper/parameters.hpp"
#include "qhyper/series.hpp"
#include "qhyper/verify.hpp"

namespace qhyper::dsl {

// --- AST -------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class NodeKind {
    rational,
    symbol,  // parameter or variable reference, resolved at evaluation
    negate,
    binary,  // + - * / ^
    pochhammer,
    qpoch,
    qprodinf,
    sum,
    hyp,
    qhyp,
    vwp8phi7,
};

struct Expr {
    NodeKind kind;
    int line = 0, column = 0;
    Rational literal;              // rational
    std::string name;              // symbol; sum index
    char op = 0;                   // binary
    bool auto_upper = false;       // sum
    std::vector<ExprPtr> children;
    std::vector<size_t> groups;    // hyp/qhyp/vwp: sizes of the ";" groups
};

inline bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind || a->op != b->op || a->name != b->name ||
        a->auto_upper != b->auto_upper || a->groups != b->groups ||
        a->children.size() != b->children.size())
        return false;
    if (a->kind == NodeKind::rational && a->literal != b->literal) return false;
    for (size_t i = 0; i < a->children.size(); ++i)
        if (!ast_equal(a->children[i], b->children[i])) return false;
    return true;
}

struct ComparisonDocument {
    std::vector<std::string> param_names;
    std::map<std::string, Rational> param_values;
    std::map<std::string, std::vector<std::string>> param_preds;
    std::vector<std::string> var_names;
    bool formal = true;
    int order = 6;
    double tol = 1e-10;
    std::map<std::string, Rational> point;  // numeric mode bindings
    ExprPtr lhs, rhs;
};

// --- lexer -------------------------------------------------------------------

namespace detail {

struct Token {
    enum Kind { name, number, punct, eq2, end } kind = end;
    std::string text;
    int line = 1, column = 1;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k, std::string t, int l, int c) {
        out.push_back({k, std::move(t), l, c});
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') { ++line; col = 1; ++i; continue; }
        if (ch == ' ' || ch == '\t' || ch == '\r') { ++col; ++i; continue; }
        if (ch == '#') {  // comment to end of line
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int tl = line, tc = col;
        if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_') {
            std::string t;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                t += src[i++];
                ++col;
            }
            push(Token::name, t, tl, tc);
            continue;
        }
        if (ch >= '0' && ch <= '9') {
            std::string t;
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '.' || src[i] == 'e' || src[i] == 'E' ||
                                      ((src[i] == '+' || src[i] == '-') && i > 0 &&
                                       (src[i - 1] == 'e' || src[i - 1] == 'E')))) {
                t += src[i++];
                ++col;
            }
            // attached denominator: 3/4 stays one token only when the slash
            // is immediately followed by digits and preceded by plain digits
            bool plain = t.find('.') == std::string::npos && t.find('e') == std::string::npos &&
                         t.find('E') == std::string::npos;
            if (plain && i < src.size() && src[i] == '/' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
                t += src[i++];
                ++col;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                    t += src[i++];
                    ++col;
                }
            }
            push(Token::number, t, tl, tc);
            continue;
        }
        if (ch == '=' && i + 1 < src.size() && src[i + 1] == '=') {
            push(Token::eq2, "==", tl, tc);
            i += 2;
            col += 2;
            continue;
        }
        if (std::string("+-*/^(),;=").find(ch) != std::string::npos) {
            push(Token::punct, std::string(1, ch), tl, tc);
            ++i;
            ++col;
            continue;
        }
        throw SyntaxError(tl, tc, "a token (got '" + std::string(1, ch) + "')");
    }
    push(Token::end, "", line, col);
    return out;
}

}  // namespace detail

// --- parser ------------------------------------------------------------------

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(detail::lex(src)) {}

    ComparisonDocument parse_document() {
        ComparisonDocument doc;
        while (peek().kind == detail::Token::name &&
               (peek().text == "param" || peek().text == "var" || peek().text == "mode"))
            parse_decl(doc);
        doc.lhs = parse_expr();
        if (peek().kind != detail::Token::eq2)
            throw SyntaxError(peek().line, peek().column, "'=='");
        ++pos_;
        doc.rhs = parse_expr();
        if (peek().kind != detail::Token::end)
            throw SyntaxError(peek().line, peek().column, "end of input");
        return doc;
    }

    ExprPtr parse_single_expression() {
        ExprPtr e = parse_expr();
        if (peek().kind != detail::Token::end)
            throw SyntaxError(peek().line, peek().column, "end of input");
        return e;
    }

  private:
    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > 256)
                throw SyntaxError(p_.peek().line, p_.peek().column,
                                  "a shallower expression (nesting limit exceeded)");
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    const detail::Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    bool accept_punct(const char* p) {
        if (peek().kind == detail::Token::punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_punct(const char* p) {
        if (!accept_punct(p)) throw SyntaxError(peek().line, peek().column, std::string("'") + p + "'");
    }

    std::string expect_name(const char* what) {
        if (peek().kind != detail::Token::name) throw SyntaxError(peek().line, peek().column, what);
        return toks_[pos_++].text;
    }

    Rational expect_signed_rational() {
        bool neg = accept_punct("-");
        if (peek().kind != detail::Token::number)
            throw SyntaxError(peek().line, peek().column, "a rational number");
        const std::string& t = toks_[pos_].text;
        if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
            t.find('E') != std::string::npos)
            throw SyntaxError(peek().line, peek().column, "an exact rational (decimals are "
                                                          "only allowed as a tolerance)");
        Rational r = Rational::parse(t);
        ++pos_;
        return neg ? -r : r;
    }

    double expect_tolerance() {
        bool neg = accept_punct("-");
        if (peek().kind != detail::Token::number)
            throw SyntaxError(peek().line, peek().column, "a tolerance value");
        const std::string& t = toks_[pos_].text;
        double v;
        if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
            t.find('E') != std::string::npos)
            v = std::strtod(t.c_str(), nullptr);
        else
            v = Rational::parse(t).to_double();
        ++pos_;
        return neg ? -v : v;
    }

    void parse_decl(ComparisonDocument& doc) {
        std::string kw = expect_name("a declaration");
        if (kw == "param") {
            std::string name = expect_name("a parameter name");
            doc.param_names.push_back(name);
            if (accept_punct("=")) doc.param_values[name] = expect_signed_rational();
            while (peek().kind == detail::Token::name &&
                   (peek().text == "nonzero" || peek().text == "noninteger"))
                doc.param_preds[name].push_back(toks_[pos_++].text);
            return;
        }
        if (kw == "var") {
            doc.var_names.push_back(expect_name("a variable name"));
            return;
        }
        // mode
        std::string m = expect_name("'formal' or 'numeric'");
        if (m == "formal") {
            Rational n = expect_signed_rational();
            if (!n.is_nonnegative_integer())
                throw SyntaxError(peek().line, peek().column, "a nonnegative order");
            doc.formal = true;
            doc.order = static_cast<int>(n.to_long());
            return;
        }
        if (m != "numeric") throw SyntaxError(peek().line, peek().column, "'formal' or 'numeric'");
        doc.formal = false;
        while (true) {
            std::string nm = expect_name("a point binding or 'tol'");
            if (nm == "tol") {
                doc.tol = expect_tolerance();
                return;
            }
            expect_punct("=");
            doc.point[nm] = expect_signed_rational();
            if (!accept_punct(",")) {
                std::string t = expect_name("'tol'");
                if (t != "tol") throw SyntaxError(peek().line, peek().column, "'tol'");
                doc.tol = expect_tolerance();
                return;
            }
        }
    }

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        ExprPtr e = parse_term();
        while (peek().kind == detail::Token::punct && (peek().text == "+" || peek().text == "-")) {
            char op = toks_[pos_++].text[0];
            ExprPtr r = parse_term();
            e = make_binary(op, e, r);
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (peek().kind == detail::Token::punct && (peek().text == "*" || peek().text == "/")) {
            char op = toks_[pos_++].text[0];
            ExprPtr r = parse_factor();
            e = make_binary(op, e, r);
        }
        return e;
    }

    ExprPtr parse_factor() {
        DepthGuard guard(*this);
        if (peek().kind == detail::Token::punct && peek().text == "-") {
            int l = peek().line, c = peek().column;
            ++pos_;
            auto node = std::make_shared<Expr>();
            node->kind = NodeKind::negate;
            node->line = l;
            node->column = c;
            node->children.push_back(parse_factor());
            return node;
        }
        ExprPtr base = parse_atom();
        if (peek().kind == detail::Token::punct && peek().text == "^") {
            ++pos_;
            ExprPtr exp = parse_atom();
            return make_binary('^', base, exp);
        }
        return base;
    }

    ExprPtr parse_atom() {
        const auto& t = peek();
        if (t.kind == detail::Token::number) {
            if (t.text.find('.') != std::string::npos || t.text.find('e') != std::string::npos ||
                t.text.find('E') != std::string::npos)
                throw SyntaxError(t.line, t.column, "an exact rational");
            auto node = std::make_shared<Expr>();
            node->kind = NodeKind::rational;
            node->literal = Rational::parse(t.text);
            node->line = t.line;
            node->column = t.column;
            ++pos_;
            return node;
        }
        if (t.kind == detail::Token::punct && t.text == "(") {
            ++pos_;
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.kind == detail::Token::name) {
            std::string name = toks_[pos_++].text;
            if (peek().kind == detail::Token::punct && peek().text == "(")
                return parse_call(name, t.line, t.column);
            auto node = std::make_shared<Expr>();
            node->kind = NodeKind::symbol;
            node->name = name;
            node->line = t.line;
            node->column = t.column;
            return node;
        }
        throw SyntaxError(t.line, t.column, "a rational, name, call or '('");
    }

    ExprPtr parse_call(const std::string& name, int line, int col) {
        expect_punct("(");
        std::vector<ExprPtr> args;
        std::vector<size_t> groups;
        size_t current = 0;
        bool auto_seen = false;
        size_t auto_at = 0;
        if (!(peek().kind == detail::Token::punct && peek().text == ")")) {
            while (true) {
                if (name == "sum" && peek().kind == detail::Token::name && peek().text == "auto" &&
                    current == 2 && groups.empty()) {
                    auto_seen = true;
                    auto_at = args.size();
                    ++pos_;
                } else {
                    args.push_back(parse_expr());
                }
                ++current;
                if (accept_punct(",")) continue;
                if (accept_punct(";")) {
                    groups.push_back(current);
                    current = 0;
                    continue;
                }
                break;
            }
        }
        groups.push_back(current);
        expect_punct(")");

        auto node = std::make_shared<Expr>();
        node->line = line;
        node->column = col;
        auto arity = [&](bool cond, const char* msg) {
            if (!cond)
                throw ArityError("in call to " + name + " at " + std::to_string(line) + ":" +
                                 std::to_string(col) + ": " + msg);
        };
        if (name == "pochhammer" || name == "qpoch") {
            node->kind = name == "pochhammer" ? NodeKind::pochhammer : NodeKind::qpoch;
            arity(groups.size() == 1 && args.size() == 2, "expects (value, index)");
            node->children = args;
            return node;
        }
        if (name == "qprodinf") {
            node->kind = NodeKind::qprodinf;
            arity(groups.size() == 1 && args.size() == 1, "expects (value)");
            node->children = args;
            return node;
        }
        if (name == "sum") {
            node->kind = NodeKind::sum;
            arity(groups.size() == 1, "expects (index, lower, upper|auto, body)");
            if (auto_seen) {
                arity(args.size() == 3 && auto_at == 2, "expects (index, lower, auto, body)");
                node->auto_upper = true;
            } else {
                arity(args.size() == 4, "expects (index, lower, upper|auto, body)");
            }
            arity(args[0]->kind == NodeKind::symbol, "index must be a plain name");
            node->name = args[0]->name;
            node->children.assign(args.begin() + 1, args.end());
            return node;
        }
        if (name == "hyp" || name == "qhyp") {
            node->kind = name == "hyp" ? NodeKind::hyp : NodeKind::qhyp;
            arity(groups.size() == 3, "expects (upper...; lower...; argument)");
            arity(groups[2] == 1, "argument group must hold exactly one expression");
            node->children = args;
            node->groups = groups;
            return node;
        }
        if (name == "vwp8phi7") {
            node->kind = NodeKind::vwp8phi7;
            arity(groups.size() == 3 && groups[0] == 1 && groups[1] == 5 && groups[2] == 1,
                  "expects (a; b,c,d,e,f; argument)");
            node->children = args;
            node->groups = groups;
            return node;
        }
        throw SyntaxError(line, col, "a known call (pochhammer, qpoch, qprodinf, sum, hyp, "
                                     "qhyp, vwp8phi7); got '" + name + "'");
    }

    static ExprPtr make_binary(char op, ExprPtr a, ExprPtr b) {
        auto node = std::make_shared<Expr>();
        node->kind = NodeKind::binary;
        node->op = op;
        node->line = a->line;
        node->column = a->column;
        node->children = {std::move(a), std::move(b)};
        return node;
    }

    std::vector<detail::Token> toks_;
    size_t pos_ = 0;
    int depth_ = 0;
};

inline ComparisonDocument parse(const std::string& text) {
    return Parser(text).parse_document();
}

// --- printer -----------------------------------------------------------------

inline std::string print(const ExprPtr& e);

namespace detail {

inline int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::binary:
            if (e->op == '+' || e->op == '-') return 1;
            if (e->op == '*' || e->op == '/') return 2;
            return 3;  // ^
        case NodeKind::negate: return 2;
        default: return 4;
    }
}

inline std::string print_child(const ExprPtr& child, int parent_prec) {
    std::string s = print(child);
    if (precedence(child) < parent_prec) return "(" + s + ")";
    return s;
}

}  // namespace detail

/// Canonical rendering; parse(print(parse(t))) is structurally equal to
/// parse(t).
inline std::string print(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::rational:
            if (e->literal.sign() < 0) return "(" + e->literal.str() + ")";
            return e->literal.str();
        case NodeKind::symbol: return e->name;
        case NodeKind::negate:
            // the grammar lets unary minus absorb a whole factor, so
            // anything below factor binding must be parenthesized
            return "-" + detail::print_child(e->children[0], 3);
        case NodeKind::binary: {
            if (e->op == '^')  // both operands are grammatically atoms
                return detail::print_child(e->children[0], 4) + "^" +
                       detail::print_child(e->children[1], 4);
            int prec = detail::precedence(e);
            std::string a = detail::print_child(e->children[0], prec);
            // right operand of - and / needs strictly higher binding
            std::string b = detail::print_child(e->children[1],
                                                e->op == '+' || e->op == '*' ? prec : prec + 1);
            std::string op(1, e->op);
            if (e->op == '+' || e->op == '-') return a + " " + op + " " + b;
            return a + op + b;
        }
        case NodeKind::pochhammer:
            return "pochhammer(" + print(e->children[0]) + ", " + print(e->children[1]) + ")";
        case NodeKind::qpoch:
            return "qpoch(" + print(e->children[0]) + ", " + print(e->children[1]) + ")";
        case NodeKind::qprodinf: return "qprodinf(" + print(e->children[0]) + ")";
        case NodeKind::sum: {
            std::string up = e->auto_upper ? "auto" : print(e->children[1]);
            return "sum(" + e->name + ", " + print(e->children[0]) + ", " + up + ", " +
                   print(e->children[e->auto_upper ? 1 : 2]) + ")";
        }
        case NodeKind::hyp:
        case NodeKind::qhyp:
        case NodeKind::vwp8phi7: {
            std::string head = e->kind == NodeKind::hyp    ? "hyp"
                               : e->kind == NodeKind::qhyp ? "qhyp"
                                                           : "vwp8phi7";
            std::string out = head + "(";
            size_t i = 0;
            for (size_t g = 0; g < e->groups.size(); ++g) {
                if (g) out += "; ";
                for (size_t k = 0; k < e->groups[g]; ++k, ++i) {
                    if (k) out += ", ";
                    out += print(e->children[i]);
                }
            }
            return out + ")";
        }
    }
    throw Error("unprintable node");
}

// --- evaluation ----------------------------------------------------------

namespace detail {

/// Exact scalar evaluation of expressions free of series variables.
/// Sum indices enter as temporary scalar bindings.
class ScalarEval {
  public:
    ScalarEval(const std::map<std::string, Rational>& scalars,
               const std::vector<std::string>& vars)
        : scalars_(scalars), vars_(vars) {}

    std::map<std::string, Rational>& bindings() { return scalars_; }

    Rational eval(const ExprPtr& e) {
        switch (e->kind) {
            case NodeKind::rational: return e->literal;
            case NodeKind::symbol: {
                auto it = scalars_.find(e->name);
                if (it != scalars_.end()) return it->second;
                for (const auto& v : vars_)
                    if (v == e->name)
                        throw Error("variable '" + e->name +
                                    "' used where a scalar is required (at " + at(e) + ")");
                throw UndeclaredSymbol("'" + e->name + "' is not declared (at " + at(e) + ")");
            }
            case NodeKind::negate: return -eval(e->children[0]);
            case NodeKind::binary: {
                Rational a = eval(e->children[0]);
                if (e->op == '^') {
                    Rational ex = eval(e->children[1]);
                    if (!ex.is_integer())
                        throw Error("scalar power needs an integer exponent (at " + at(e) + ")");
                    return a.pow(ex.to_long());
                }
                Rational b = eval(e->children[1]);
                switch (e->op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    default: return a / b;
                }
            }
            case NodeKind::pochhammer:
                return pochhammer(eval(e->children[0]), index_of(e->children[1]));
            case NodeKind::qpoch:
                return q_pochhammer(eval(e->children[0]), base(e), index_of(e->children[1]));
            case NodeKind::qprodinf:
                throw Error("qprodinf of a scalar is not exact (at " + at(e) + ")");
            case NodeKind::sum: {
                if (e->auto_upper)
                    throw Error("auto-bounded sum needs a series context (at " + at(e) + ")");
                long lo = index_of(e->children[0]), hi = index_of(e->children[1]);
                Rational s(0);
                for (long i = lo; i <= hi; ++i) {
                    scalars_[e->name] = Rational(i);
                    s += eval(e->children[2]);
                }
                scalars_.erase(e->name);
                return s;
            }
            case NodeKind::hyp:
            case NodeKind::qhyp: {
                auto [upper, lower, arg] = split_groups(e);
                std::vector<Rational> u, l;
                for (const auto& c : upper) u.push_back(eval(c));
                for (const auto& c : lower) l.push_back(eval(c));
                if (e->kind == NodeKind::hyp) return hyp_f<Rational>(u, l, eval(arg));
                return basic_hyp_phi<Rational>(u, l, base(e), eval(arg));
            }
            case NodeKind::vwp8phi7: {
                auto [ag, lats, arg] = split_groups(e);
                std::array<Rational, 5> p;
                for (size_t i = 0; i < 5; ++i) p[i] = eval(lats[i]);
                return vwp_8phi7(eval(ag[0]), p, base(e), eval(arg));
            }
        }
        throw Error("unevaluable node");
    }

    long index_of(const ExprPtr& e) {
        Rational v = eval(e);
        if (!v.is_integer())
            throw Error("expected an integer index, got " + v.str() + " (at " + at(e) + ")");
        return v.to_long();
    }

    Rational base(const ExprPtr& e) const {
        auto it = scalars_.find("q");
        if (it == scalars_.end())
            throw UndeclaredSymbol("the reserved base parameter 'q' is unbound (at " + at(e) +
                                   ")");
        return it->second;
    }

    bool references_variable(const ExprPtr& e) const {
        if (e->kind == NodeKind::symbol) {
            for (const auto& v : vars_)
                if (v == e->name) return true;
            return false;
        }
        for (const auto& c : e->children)
            if (references_variable(c)) return true;
        return false;
    }

    static std::string at(const ExprPtr& e) {
        return std::to_string(e->line) + ":" + std::to_string(e->column);
    }

    static std::tuple<std::vector<ExprPtr>, std::vector<ExprPtr>, ExprPtr> split_groups(
        const ExprPtr& e) {
        std::vector<ExprPtr> a(e->children.begin(),
                               e->children.begin() + static_cast<long>(e->groups[0]));
        std::vector<ExprPtr> b(
            e->children.begin() + static_cast<long>(e->groups[0]),
            e->children.begin() + static_cast<long>(e->groups[0] + e->groups[1]));
        return {a, b, e->children.back()};
    }

  private:
    std::map<std::string, Rational> scalars_;
    const std::vector<std::string>& vars_;
};

/// Formal evaluation into the truncated series ring.
class FormalEval {
  public:
    FormalEval(const std::map<std::string, Rational>& scalars,
               const std::vector<std::string>& vars, int order)
        : sc_(scalars, vars), vars_(vars), order_(order) {}

    SeriesQ eval(const ExprPtr& e) {
        switch (e->kind) {
            case NodeKind::rational: return constant(e->literal);
            case NodeKind::symbol: {
                for (size_t i = 0; i < vars_.size(); ++i)
                    if (vars_[i] == e->name) return SeriesQ::variable(vars_, order_, i);
                return constant(sc_.eval(e));
            }
            case NodeKind::negate: return -eval(e->children[0]);
            case NodeKind::binary: {
                if (e->op == '^') {
                    SeriesQ b = eval(e->children[0]);
                    return series_pow(b, sc_.eval(e->children[1]));
                }
                SeriesQ a = eval(e->children[0]);
                SeriesQ b = eval(e->children[1]);
                switch (e->op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    default: return a * series_invert(b);
                }
            }
            case NodeKind::pochhammer:
                return pochhammer_series(eval(e->children[0]), sc_.index_of(e->children[1]));
            case NodeKind::qpoch:
                return q_product(eval(e->children[0]), sc_.base(e), sc_.index_of(e->children[1]));
            case NodeKind::qprodinf: return q_product_inf(eval(e->children[0]), sc_.base(e));
            case NodeKind::sum: {
                long lo = sc_.index_of(e->children[0]);
                SeriesQ s(vars_, order_);
                if (!e->auto_upper) {
                    long hi = sc_.index_of(e->children[1]);
                    for (long i = lo; i <= hi; ++i) {
                        sc_.bindings()[e->name] = Rational(i);
                        s = s + eval(e->children[2]);
                    }
                    sc_.bindings().erase(e->name);
                    return s;
                }
                // auto upper bound: run until the body leaves the
                // truncation range twice in a row (vanishing-factor
                // bodies are exactly zero from their cut on)
                int high = 0;
                for (long i = lo; i <= lo + order_ + 64; ++i) {
                    sc_.bindings()[e->name] = Rational(i);
                    SeriesQ body = eval(e->children[1]);
                    s = s + body;
                    high = body.low_degree() > order_ ? high + 1 : 0;
                    if (high >= 2) {
                        sc_.bindings().erase(e->name);
                        return s;
                    }
                }
                sc_.bindings().erase(e->name);
                throw NonTerminating("auto-bounded sum never left the truncation range (at " +
                                     ScalarEval::at(e) + ")");
            }
            case NodeKind::hyp:
            case NodeKind::qhyp: {
                auto [upper, lower, arg] = ScalarEval::split_groups(e);
                if (e->kind == NodeKind::hyp) {
                    std::vector<Rational> u, l;
                    for (const auto& c : upper) u.push_back(sc_.eval(c));
                    for (const auto& c : lower) l.push_back(sc_.eval(c));
                    return hyp_f<Rational>(u, l, eval(arg));
                }
                bool series_params = false;
                for (const auto& c : upper) series_params |= sc_.references_variable(c);
                for (const auto& c : lower) series_params |= sc_.references_variable(c);
                if (!series_params) {
                    std::vector<Rational> u, l;
                    for (const auto& c : upper) u.push_back(sc_.eval(c));
                    for (const auto& c : lower) l.push_back(sc_.eval(c));
                    return basic_hyp_phi<Rational>(u, l, sc_.base(e), eval(arg));
                }
                if (sc_.references_variable(arg))
                    throw Error("series-valued basic-series parameters require a scalar "
                                "argument (at " + ScalarEval::at(e) + ")");
                std::vector<PhiValue<Rational>> u, l;
                for (const auto& c : upper)
                    if (sc_.references_variable(c))
                        u.emplace_back(eval(c));
                    else
                        u.emplace_back(sc_.eval(c));
                for (const auto& c : lower)
                    if (sc_.references_variable(c))
                        l.emplace_back(eval(c));
                    else
                        l.emplace_back(sc_.eval(c));
                return basic_hyp_phi<Rational>(u, l, sc_.base(e), sc_.eval(arg), vars_, order_);
            }
            case NodeKind::vwp8phi7: {
                auto [ag, lats, arg] = ScalarEval::split_groups(e);
                std::array<Rational, 5> p;
                for (size_t i = 0; i < 5; ++i) p[i] = sc_.eval(lats[i]);
                return vwp_8phi7(sc_.eval(ag[0]), p, sc_.base(e), eval(arg));
            }
        }
        throw Error("unevaluable node");
    }

  private:
    SeriesQ constant(const Rational& v) { return SeriesQ::constant(vars_, order_, v); }

    ScalarEval sc_;
    std::vector<std::string> vars_;
    int order_;
};

/// Numeric evaluation; variables take their point values.
class NumericEval {
  public:
    NumericEval(const std::map<std::string, double>& values, double tol)
        : values_(values), tol_(tol) {}

    double eval(const ExprPtr& e) {
        switch (e->kind) {
            case NodeKind::rational: return e->literal.to_double();
            case NodeKind::symbol: {
                auto it = values_.find(e->name);
                if (it == values_.end())
                    throw UndeclaredSymbol("'" + e->name + "' has no numeric value (at " +
                                           ScalarEval::at(e) + ")");
                return it->second;
            }
            case NodeKind::negate: return -eval(e->children[0]);
            case NodeKind::binary: {
                double a = eval(e->children[0]);
                double b = eval(e->children[1]);
                switch (e->op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/':
                        if (b == 0.0) throw PoleError("numeric division by zero");
                        return a / b;
                    default: {
                        double r = std::pow(a, b);
                        if (std::isnan(r))
                            throw Error("power is not a real number (at " +
                                        ScalarEval::at(e) + ")");
                        return r;
                    }
                }
            }
            case NodeKind::pochhammer: return pochhammer(eval(e->children[0]), index(e->children[1]));
            case NodeKind::qpoch:
                return q_pochhammer(eval(e->children[0]), base(e), index(e->children[1]));
            case NodeKind::qprodinf:
                return q_pochhammer_inf(eval(e->children[0]), base(e), tol_ / 10.0);
            case NodeKind::sum: {
                long lo = index(e->children[0]);
                double s = 0.0;
                if (!e->auto_upper) {
                    long hi = index(e->children[1]);
                    for (long i = lo; i <= hi; ++i) {
                        values_[e->name] = static_cast<double>(i);
                        s += eval(e->children[2]);
                    }
                    values_.erase(e->name);
                    return s;
                }
                int quiet = 0;
                for (long i = lo; i < lo + 100000; ++i) {
                    values_[e->name] = static_cast<double>(i);
                    double t = eval(e->children[1]);
                    s += t;
                    quiet = (t == 0.0 || std::abs(t) <= tol_ * std::abs(s)) ? quiet + 1 : 0;
                    if (quiet >= 3) {
                        values_.erase(e->name);
                        return s;
                    }
                }
                values_.erase(e->name);
                throw NonConvergent("auto-bounded numeric sum did not converge (at " +
                                    ScalarEval::at(e) + ")");
            }
            case NodeKind::hyp:
            case NodeKind::qhyp: {
                auto [upper, lower, arg] = ScalarEval::split_groups(e);
                std::vector<double> u, l;
                for (const auto& c : upper) u.push_back(eval(c));
                for (const auto& c : lower) l.push_back(eval(c));
                if (e->kind == NodeKind::hyp) return hyp_f<double>(u, l, eval(arg));
                return basic_hyp_phi<double>(u, l, base(e), eval(arg));
            }
            case NodeKind::vwp8phi7: {
                auto [ag, lats, arg] = ScalarEval::split_groups(e);
                std::array<double, 5> p;
                for (size_t i = 0; i < 5; ++i) p[i] = eval(lats[i]);
                return vwp_8phi7(eval(ag[0]), p, base(e), eval(arg));
            }
        }
        throw Error("unevaluable node");
    }

  private:
    long index(const ExprPtr& e) {
        double v = eval(e);
        double r = std::nearbyint(v);
        if (v != r) throw Error("expected an integer index (at " + ScalarEval::at(e) + ")");
        return static_cast<long>(r);
    }

    double base(const ExprPtr& e) const {
        auto it = values_.find("q");
        if (it == values_.end())
            throw UndeclaredSymbol("the reserved base parameter 'q' is unbound (at " +
                                   ScalarEval::at(e) + ")");
        return it->second;
    }

    std::map<std::string, double> values_;
    double tol_;
};

}  // namespace detail

inline std::string print(const ComparisonDocument& doc) {
    std::string out;
    for (const auto& n : doc.param_names) {
        out += "param " + n;
        auto it = doc.param_values.find(n);
        if (it != doc.param_values.end()) out += " = " + it->second.str();
        auto pit = doc.param_preds.find(n);
        if (pit != doc.param_preds.end())
            for (const auto& pr : pit->second) out += " " + pr;
        out += "\n";
    }
    for (const auto& v : doc.var_names) out += "var " + v + "\n";
    if (doc.formal) {
        out += "mode formal " + std::to_string(doc.order) + "\n";
    } else {
        out += "mode numeric ";
        bool first = true;
        for (const auto& [k, v] : doc.point) {
            if (!first) out += ", ";
            out += k + " = " + v.str();
            first = false;
        }
        out += " tol " + scalar_str(doc.tol) + "\n";
    }
    out += print(doc.lhs) + " == " + print(doc.rhs) + "\n";
    return out;
}

/// Runs the comparison a document describes, with the same semantics as
/// the registry verifiers: exact coefficientwise equality in formal
/// mode, tolerance comparison at the point in numeric mode.
inline VerificationReport evaluate(const ComparisonDocument& doc) {
    VerificationReport rep;
    rep.identity = "dsl";
    rep.mode = doc.formal ? "formal" : "numeric";
    rep.order = doc.order;
    rep.tol = doc.tol;
    auto t0 = std::chrono::steady_clock::now();

    std::map<std::string, Rational> scalars;
    for (const auto& name : doc.param_names) {
        auto it = doc.param_values.find(name);
        if (it == doc.param_values.end())
            throw UndeclaredSymbol("parameter '" + name + "' has no value");
        scalars[name] = it->second;
        auto pit = doc.param_preds.find(name);
        if (pit != doc.param_preds.end())
            for (const auto& pred : pit->second) {
                if (pred == "nonzero" && it->second.is_zero())
                    throw OutOfDomain("parameter '" + name + "' must be nonzero");
                if (pred == "noninteger" && it->second.is_integer())
                    throw OutOfDomain("parameter '" + name + "' must not be an integer");
            }
        rep.params.set(name, it->second);
    }

    if (doc.formal) {
        detail::FormalEval ev(scalars, doc.var_names, doc.order);
        SeriesQ lhs = ev.eval(doc.lhs);
        SeriesQ rhs = ev.eval(doc.rhs);
        rep.differences = compare_series("rhs", lhs, rhs);
    } else {
        std::map<std::string, double> values;
        for (const auto& [k, v] : scalars) values[k] = v.to_double();
        for (const auto& v : doc.var_names) {
            auto it = doc.point.find(v);
            if (it == doc.point.end())
                throw UndeclaredSymbol("variable '" + v + "' has no point value");
        }
        for (const auto& [k, v] : doc.point) {
            values[k] = v.to_double();
            rep.params.set(k, v);
        }
        detail::NumericEval ev(values, doc.tol / 1000.0);
        double lhs = ev.eval(doc.lhs);
        double rhs = ev.eval(doc.rhs);
        if (numeric_difference(lhs, rhs) > doc.tol)
            rep.differences.push_back({"rhs", "point", scalar_str(lhs), scalar_str(rhs)});
    }
    rep.verdict = rep.differences.empty() ? Verdict::pass : Verdict::fail;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qhyper::dsl
