#pragma once

#include <cctype>
#include <climits>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/nov_term.hpp"

namespace novops {

/*
 * Text syntax.
 *
 *   novexpr := ["+"|"-"] nterm (("+"|"-") nterm)*
 *   nterm   := [coeff] product
 *   product := atom ["o" atom]            a second "o" needs parentheses
 *   atom    := "x" INT | "(" novexpr ")"
 *
 *   diffexpr := ["+"|"-"] dterm (("+"|"-") dterm)*  |  "0" "[" "arity" INT "]"
 *   dterm    := [coeff] dvar+
 *   dvar     := "a" INT ("'"+ | "^(" INT ")")?
 *
 *   coeff := INT ["/" INT]
 */
namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    bool at_end() {
        skip_space();
        return pos_ == src_.size();
    }
    char peek() {
        skip_space();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    // raw lookahead without skipping whitespace
    char peek_raw(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    bool accept(char c) {
        if (peek() != c) return false;
        advance();
        return true;
    }
    void expect(char c, const std::string &what) {
        if (!accept(c)) fail(what);
    }

    /// "o" standing alone as the product token
    bool at_product_token() {
        skip_space();
        return peek_raw() == 'o' && !std::isalnum(static_cast<unsigned char>(peek_raw(1)));
    }

    std::string digits(const std::string &what) {
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek_raw()))) fail(what);
        std::string s;
        while (std::isdigit(static_cast<unsigned char>(peek_raw()))) {
            s += peek_raw();
            advance();
        }
        return s;
    }

    std::size_t small_int(const std::string &what, std::size_t limit) {
        std::size_t l = line_, c = col_;
        std::string s = digits(what);
        if (s.size() > 9 || std::stoul(s) > limit) throw ParseError(l, c, what + " of at most " + std::to_string(limit), "'" + s + "'");
        return std::stoul(s);
    }

    [[noreturn]] void fail(const std::string &expected) {
        skip_space();
        std::string found;
        if (pos_ == src_.size()) found = "end of input";
        else found = std::string("'") + src_[pos_] + "'";
        throw ParseError(line_, col_, expected, found);
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

inline constexpr std::size_t kMaxIndex = 1000000;

inline std::optional<Scalar> parse_coeff(Cursor &c) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek()))) return std::nullopt;
    std::string num = c.digits("integer");
    if (c.accept('/')) {
        std::string den = c.digits("denominator");
        if (den.find_first_not_of('0') == std::string::npos) c.fail("nonzero denominator");
        return Scalar::parse(num + "/" + den);
    }
    return Scalar::parse(num);
}

NovExpr parse_nov_expr(Cursor &c);

inline NovAtom parse_nov_atom(Cursor &c) {
    if (c.accept('x')) return NovAtom{c.small_int("variable index", kMaxIndex), nullptr};
    if (c.accept('(')) {
        auto inner = std::make_shared<const NovExpr>(parse_nov_expr(c));
        c.expect(')', "')'");
        return NovAtom{0, std::move(inner)};
    }
    c.fail("variable 'x<n>' or '('");
}

inline NovSummand parse_nov_summand(Cursor &c, Scalar sign) {
    NovSummand s;
    if (auto k = parse_coeff(c)) s.coeff = *k;
    s.coeff *= sign;
    s.body.left = parse_nov_atom(c);
    if (c.at_product_token()) {
        c.advance();
        s.body.right = parse_nov_atom(c);
        if (c.at_product_token()) c.fail("'+', '-', ')' or end of input (parenthesize nested products)");
    }
    return s;
}

inline NovExpr parse_nov_expr(Cursor &c) {
    NovExpr e;
    Scalar sign = 1;
    if (c.accept('-')) sign = -1;
    else c.accept('+');
    e.terms.push_back(parse_nov_summand(c, sign));
    for (;;) {
        if (c.accept('+')) sign = 1;
        else if (c.accept('-')) sign = -1;
        else break;
        e.terms.push_back(parse_nov_summand(c, sign));
    }
    return e;
}

inline std::string format_coeff_prefix(const Scalar &c, bool first) {
    std::string out;
    Scalar a = c;
    if (c.sign() < 0) {
        out = first ? "- " : " - ";
        a = -c;
    } else if (!first) {
        out = " + ";
    }
    if (!a.is_one()) out += a.to_string() + " ";
    return out;
}

std::string format_nov_expr(const NovExpr &e);

inline std::string format_nov_atom(const NovAtom &a) {
    if (a.is_leaf()) return "x" + std::to_string(a.var);
    return "(" + format_nov_expr(*a.group) + ")";
}

inline std::string format_nov_expr(const NovExpr &e) {
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const auto &t = e.terms[i];
        out += format_coeff_prefix(t.coeff, i == 0);
        out += format_nov_atom(t.body.left);
        if (t.body.right) out += " o " + format_nov_atom(*t.body.right);
    }
    return out;
}

}  // namespace detail

inline NovExpr parse_nov(std::string_view src) {
    detail::Cursor c(src);
    NovExpr e = detail::parse_nov_expr(c);
    if (!c.at_end()) c.fail("'+', '-' or end of input");
    return e;
}

inline std::string format(const NovExpr &e) { return detail::format_nov_expr(e); }

inline DiffPoly parse_diff(std::string_view src) {
    detail::Cursor c(src);
    // "0 [arity n]"
    if (c.peek() == '0') {
        detail::Cursor probe = c;
        probe.digits("integer");
        if (probe.peek() == '[') {
            c = probe;
            c.expect('[', "'['");
            for (char ch : std::string("arity")) c.expect(ch, "'arity'");
            std::size_t n = c.small_int("arity", detail::kMaxIndex);
            if (n == 0) throw ArityError("arity must be positive");
            c.expect(']', "']'");
            if (!c.at_end()) c.fail("end of input");
            return DiffPoly(n);
        }
    }

    struct Term {
        Scalar coeff;
        std::vector<std::pair<std::size_t, int>> vars;  // (index, degree)
    };
    std::vector<Term> terms;
    Scalar sign = 1;
    if (c.accept('-')) sign = -1;
    else c.accept('+');
    for (;;) {
        Term t;
        t.coeff = sign;
        if (auto k = detail::parse_coeff(c)) t.coeff *= *k;
        if (c.peek() != 'a') c.fail("variable 'a<n>'");
        while (c.accept('a')) {
            std::size_t idx = c.small_int("variable index", detail::kMaxIndex);
            int deg = 0;
            if (c.peek_raw() == '\'') {
                while (c.peek_raw() == '\'') {
                    c.advance();
                    ++deg;
                }
            } else if (c.peek_raw() == '^') {
                c.advance();
                c.expect('(', "'('");
                deg = static_cast<int>(c.small_int("derivative order", 1000000));
                c.expect(')', "')'");
            }
            t.vars.emplace_back(idx, deg);
        }
        terms.push_back(std::move(t));
        if (c.accept('+')) sign = 1;
        else if (c.accept('-')) sign = -1;
        else break;
    }
    if (!c.at_end()) c.fail("'+', '-', variable or end of input");

    std::size_t arity = 0;
    for (const auto &t : terms) {
        std::set<std::size_t> seen;
        std::size_t top = 0;
        for (const auto &[i, d] : t.vars) {
            if (i == 0) throw ArityError("variable indices start at 1");
            if (!seen.insert(i).second) throw MultilinearityError("variable a" + std::to_string(i) + " repeated in one monomial");
            top = std::max(top, i);
        }
        if (seen.size() != top) {
            for (std::size_t i = 1; i <= top; ++i)
                if (!seen.count(i)) throw ArityError("variable a" + std::to_string(i) + " missing from a monomial of arity " + std::to_string(top));
        }
        if (arity && top != arity)
            throw ArityError("monomials of arity " + std::to_string(arity) + " and " + std::to_string(top) + " in one sum");
        arity = top;
    }
    DiffPoly f(arity);
    for (const auto &t : terms) {
        std::vector<int> deg(arity);
        for (const auto &[i, d] : t.vars) deg[i - 1] = d;
        f.add_term(Monomial(std::move(deg)), t.coeff);
    }
    return f;
}

inline std::string format(const Monomial &m) {
    std::string out;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (i) out += ' ';
        out += "a" + std::to_string(i + 1);
        if (m[i] == 1) out += "'";
        else if (m[i] >= 2) out += "^(" + std::to_string(m[i]) + ")";
    }
    return out;
}

inline std::string format(const DiffPoly &f) {
    if (f.is_zero()) return "0 [arity " + std::to_string(f.arity()) + "]";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : f.terms()) {
        out += detail::format_coeff_prefix(c, first) + format(m);
        first = false;
    }
    return out;
}

}  // namespace novops
