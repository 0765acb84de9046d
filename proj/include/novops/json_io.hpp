#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "novops/closure.hpp"
#include "novops/diffpoly.hpp"
#include "novops/errors.hpp"
#include "novops/nov_term.hpp"
#include "novops/orders.hpp"
#include "novops/subspace.hpp"
#include "novops/trace.hpp"

namespace novops {

using Json = nlohmann::json;

/*
 * JSON forms. Argument positions, slots and permutation images are 1-based;
 * trace element indices are 0 for the input and i for the result of step i.
 * Objects use nlohmann's default (sorted) key order, so dump() is canonical.
 */
inline Json to_json(const DiffPoly &f) {
    Json terms = Json::array();
    for (const auto &[m, c] : f.terms()) terms.push_back({{"coeff", c.to_string()}, {"degrees", m.degrees()}});
    return {{"arity", f.arity()}, {"terms", terms}};
}

namespace detail {

inline const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::size_t index_field(const Json &j, const char *key, std::size_t base) {
    const Json &v = field(j, key);
    if (!v.is_number_unsigned() || v.get<std::size_t>() < base) throw FormatError(std::string("field '") + key + "' must be an index");
    return v.get<std::size_t>() - base;
}

inline Scalar scalar_from_json(const Json &v) {
    if (!v.is_string()) throw FormatError("coefficients are strings");
    try {
        return Scalar::parse(v.get<std::string>());
    } catch (const std::exception &e) {
        throw FormatError(std::string("bad coefficient: ") + e.what());
    }
}

}  // namespace detail

inline DiffPoly poly_from_json(const Json &j) {
    const Json &a = detail::field(j, "arity");
    if (!a.is_number_unsigned() || a.get<std::size_t>() == 0) throw FormatError("arity must be a positive integer");
    DiffPoly f(a.get<std::size_t>());
    const Json &terms = detail::field(j, "terms");
    if (!terms.is_array()) throw FormatError("terms must be an array");
    for (const auto &t : terms) {
        const Json &d = detail::field(t, "degrees");
        if (!d.is_array()) throw FormatError("degrees must be an array");
        std::vector<int> deg;
        for (const auto &x : d) {
            if (!x.is_number_unsigned()) throw FormatError("degrees must be non-negative integers");
            deg.push_back(x.get<int>());
        }
        f.add_term(Monomial(std::move(deg)), detail::scalar_from_json(detail::field(t, "coeff")));
    }
    return f;
}

Json to_json(const NovExpr &e);

inline Json to_json(const NovAtom &a) {
    if (a.is_leaf()) return {{"var", a.var}};
    return {{"group", to_json(*a.group)}};
}

inline Json to_json(const NovExpr &e) {
    Json terms = Json::array();
    for (const auto &t : e.terms) {
        Json j = {{"coeff", t.coeff.to_string()}, {"left", to_json(t.body.left)}};
        if (t.body.right) j["right"] = to_json(*t.body.right);
        terms.push_back(j);
    }
    return {{"terms", terms}};
}

NovExpr nov_from_json(const Json &j);

inline NovAtom nov_atom_from_json(const Json &j) {
    if (j.is_object() && j.contains("var")) return NovAtom{detail::index_field(j, "var", 1) + 1, nullptr};
    return NovAtom{0, std::make_shared<const NovExpr>(nov_from_json(detail::field(j, "group")))};
}

inline NovExpr nov_from_json(const Json &j) {
    NovExpr e;
    const Json &terms = detail::field(j, "terms");
    if (!terms.is_array() || terms.empty()) throw FormatError("terms must be a non-empty array");
    for (const auto &t : terms) {
        NovSummand s;
        s.coeff = detail::scalar_from_json(detail::field(t, "coeff"));
        s.body.left = nov_atom_from_json(detail::field(t, "left"));
        if (t.contains("right")) s.body.right = nov_atom_from_json(t.at("right"));
        e.terms.push_back(std::move(s));
    }
    return e;
}

inline Json to_json(const Step &s) {
    Json args = Json::object();
    switch (s.kind) {
    case MoveKind::combine: {
        Json terms = Json::array();
        for (const auto &[src, c] : s.terms) terms.push_back({{"coeff", c.to_string()}, {"element", src}});
        args["terms"] = terms;
        break;
    }
    case MoveKind::permute: {
        Json images = Json::array();
        for (std::size_t x : s.sigma) images.push_back(x + 1);
        args["sigma"] = images;
        args["source"] = s.source;
        break;
    }
    case MoveKind::derive_outside: args["source"] = s.source; break;
    case MoveKind::mul_fresh:
    case MoveKind::nov_mul_right:
    case MoveKind::nov_mul_left:
        args["position"] = s.position + 1;
        args["source"] = s.source;
        break;
    case MoveKind::subst_nov: args["orientation"] = to_string(s.orientation); [[fallthrough]];
    case MoveKind::subst_product:
    case MoveKind::subst_derivative:
        args["slot"] = s.position + 1;
        args["source"] = s.source;
        break;
    }
    return {{"args", args}, {"kind", to_string(s.kind)}, {"result", to_json(s.result)}};
}

inline Step step_from_json(const Json &j) {
    Step s;
    const Json &kind = detail::field(j, "kind");
    if (!kind.is_string()) throw FormatError("kind must be a string");
    s.kind = move_kind_from_string(kind.get<std::string>());
    const Json &args = detail::field(j, "args");
    switch (s.kind) {
    case MoveKind::combine: {
        const Json &terms = detail::field(args, "terms");
        if (!terms.is_array()) throw FormatError("combination terms must be an array");
        for (const auto &t : terms)
            s.terms.emplace_back(detail::index_field(t, "element", 0), detail::scalar_from_json(detail::field(t, "coeff")));
        break;
    }
    case MoveKind::permute: {
        s.source = detail::index_field(args, "source", 0);
        const Json &images = detail::field(args, "sigma");
        if (!images.is_array()) throw FormatError("sigma must be an array");
        for (const auto &x : images) {
            if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) throw FormatError("sigma entries are 1-based indices");
            s.sigma.push_back(x.get<std::size_t>() - 1);
        }
        break;
    }
    case MoveKind::derive_outside: s.source = detail::index_field(args, "source", 0); break;
    case MoveKind::mul_fresh:
    case MoveKind::nov_mul_right:
    case MoveKind::nov_mul_left:
        s.source = detail::index_field(args, "source", 0);
        s.position = detail::index_field(args, "position", 1);
        break;
    case MoveKind::subst_nov: {
        const Json &o = detail::field(args, "orientation");
        if (!o.is_string()) throw FormatError("orientation must be a string");
        s.orientation = nov_orientation_from_string(o.get<std::string>());
        [[fallthrough]];
    }
    case MoveKind::subst_product:
    case MoveKind::subst_derivative:
        s.source = detail::index_field(args, "source", 0);
        s.position = detail::index_field(args, "slot", 1);
        break;
    }
    s.result = poly_from_json(detail::field(j, "result"));
    return s;
}

inline Json to_json(const DerivationTrace &t) {
    Json steps = Json::array();
    for (const auto &s : t.steps) steps.push_back(to_json(s));
    return {{"input", to_json(t.input)}, {"mode", to_string(t.mode)}, {"output", to_json(t.output)}, {"steps", steps}};
}

inline DerivationTrace trace_from_json(const Json &j) {
    DerivationTrace t;
    const Json &mode = detail::field(j, "mode");
    if (!mode.is_string()) throw FormatError("mode must be a string");
    t.mode = closure_mode_from_string(mode.get<std::string>());
    t.input = poly_from_json(detail::field(j, "input"));
    t.output = poly_from_json(detail::field(j, "output"));
    const Json &steps = detail::field(j, "steps");
    if (!steps.is_array()) throw FormatError("steps must be an array");
    for (const auto &s : steps) t.steps.push_back(step_from_json(s));
    return t;
}

inline Json to_json(const GradedSubspace &s) {
    Json basis = Json::array();
    for (const auto &b : s.basis()) basis.push_back(to_json(b));
    return {{"ambient_dimension", s.ambient_dimension()}, {"arity", s.arity()}, {"basis", basis},
            {"dimension", s.dimension()}, {"weight", s.weight()}};
}

inline Json to_json(const Reduction &r, OrderMode mode, const DiffPoly &input) {
    Json steps = Json::array();
    for (const auto &s : r.steps) steps.push_back({{"coeff", s.coeff.to_string()}, {"generator", s.generator + 1}, {"lift", to_json(s.lift)}});
    return {{"input", to_json(input)}, {"mode", to_string(mode)}, {"remainder", to_json(r.remainder)}, {"steps", steps}};
}

inline Json error_to_json(const Error &e) {
    Json j = {{"kind", e.kind()}, {"message", e.what()}};
    if (const auto *p = dynamic_cast<const ParseError *>(&e)) {
        j["line"] = p->line();
        j["column"] = p->column();
        j["expected"] = p->expected();
        j["found"] = p->found();
    }
    return {{"error", j}};
}

}  // namespace novops
