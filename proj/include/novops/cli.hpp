#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "novops/closure.hpp"
#include "novops/combinatorics.hpp"
#include "novops/json_io.hpp"
#include "novops/operad.hpp"
#include "novops/orders.hpp"
#include "novops/term_lang.hpp"
#include "novops/trace.hpp"
#include "novops/witness.hpp"

namespace novops::cli {

enum ExitCode { ok = 0, no = 1, usage = 2, bound = 3, internal = 4 };

namespace detail {

// "@path" reads the file; anything else is taken literally
inline std::string read_input(const std::string &arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw FormatError("cannot read file '" + arg.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

inline std::vector<DiffPoly> parse_gens(const std::vector<std::string> &args) {
    std::vector<DiffPoly> out;
    for (const auto &a : args) {
        std::string text = read_input(a);
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            out.push_back(parse_diff(item));
        }
    }
    return out;
}

inline std::string join_positions(const std::vector<std::size_t> &map) {
    std::string s;
    for (std::size_t i = 0; i < map.size(); ++i) s += (i ? ", " : "") + std::to_string(i + 1) + "->" + std::to_string(map[i] + 1);
    return s;
}

inline std::string describe(const Step &s) {
    std::ostringstream os;
    os << to_string(s.kind);
    switch (s.kind) {
    case MoveKind::combine:
        os << ' ';
        for (std::size_t i = 0; i < s.terms.size(); ++i) os << (i ? " + " : "") << '(' << s.terms[i].second << ")*#" << s.terms[i].first;
        break;
    case MoveKind::permute:
        os << " #" << s.source << " [";
        for (std::size_t i = 0; i < s.sigma.size(); ++i) os << (i ? " " : "") << s.sigma[i] + 1;
        os << ']';
        break;
    case MoveKind::derive_outside: os << " #" << s.source; break;
    case MoveKind::mul_fresh:
    case MoveKind::nov_mul_right:
    case MoveKind::nov_mul_left: os << " #" << s.source << " position " << s.position + 1; break;
    case MoveKind::subst_nov: os << " #" << s.source << " slot " << s.position + 1 << ' ' << to_string(s.orientation); break;
    case MoveKind::subst_product:
    case MoveKind::subst_derivative: os << " #" << s.source << " slot " << s.position + 1; break;
    }
    return os.str();
}

inline void print_trace_text(std::ostream &out, const DerivationTrace &t) {
    out << "mode: " << to_string(t.mode) << '\n';
    out << "#0 input: " << format(t.input) << '\n';
    for (std::size_t i = 0; i < t.steps.size(); ++i) out << '#' << i + 1 << ' ' << describe(t.steps[i]) << ": " << format(t.steps[i].result) << '\n';
    out << "output: " << format(t.output) << '\n';
}

}  // namespace detail

/*
 * Runs one command. args excludes the program name. Output goes to `out`,
 * diagnostics to `err`; the return value is the process exit status.
 */
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact computations in the differential and Novikov operads", "novops"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string fmt = "text";
    Bounds bounds;
    app.add_option("--format", fmt, "Output style")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--arity-bound", bounds.max_arity, "Largest arity a closure may reach")->check(CLI::Range(1, 64));
    app.add_option("--weight-bound", bounds.max_weight, "Largest weight a closure may reach")->check(CLI::Range(0, 64));

    std::string expr, expr2, mode_text, query, kind = "right-associator";
    std::vector<std::string> gens;
    std::size_t arity = 0, chain_length = 0, slot = 0, nov_arity = 0;
    int weight = -1;
    bool novikov_input = false, oracle = false;

    auto *expand = app.add_subcommand("expand", "Expand a Novikov expression into a differential polynomial");
    expand->add_option("expr", expr, "Novikov expression, e.g. \"(x1 o x2) o x3\"")->required();

    auto *embed = app.add_subcommand("embed-check", "Is the polynomial in the image of the Novikov operad? (exit 1: no)");
    embed->add_option("poly", expr, "Differential polynomial")->required();

    auto *comp = app.add_subcommand("compose", "Partial composition f o_k g");
    comp->add_option("f", expr, "Outer polynomial")->required();
    comp->add_option("k", slot, "Slot (1-based)")->required();
    comp->add_option("g", expr2, "Inner polynomial")->required();

    auto *dim = app.add_subcommand("dim", "Dimension of a grade or of a generated Novikov component");
    dim->add_option("--nov", nov_arity, "Arity of the Novikov component to generate");
    dim->add_option("--arity", arity, "Arity of the grade");
    dim->add_option("--weight", weight, "Weight of the grade");

    auto *closure = app.add_subcommand("closure", "Basis of one component of a closure");
    closure->add_option("--mode", mode_text, "cdiff-ideal, nov-ideal or nov-bimodule")->required();
    closure->add_option("--gens", gens, "Generators (repeatable; ';' separates several)")->required();
    closure->add_option("--arity", arity, "Arity")->required();
    closure->add_option("--weight", weight, "Weight (default arity-1 in nov-ideal mode)");

    auto *mem = app.add_subcommand("member", "Membership in a closure component (exit 1: not a member)");
    mem->add_option("--mode", mode_text, "cdiff-ideal, nov-ideal or nov-bimodule")->required();
    mem->add_option("--gens", gens, "Generators (repeatable; ';' separates several)");
    mem->add_option("--query", query, "Polynomial to test")->required();
    mem->add_option("--arity", arity, "Arity (default: the query's)");
    mem->add_option("--weight", weight, "Weight (default: the query's)");

    auto add_witness = [&](const char *name, const char *help) {
        auto *w = app.add_subcommand(name, help);
        w->add_option("poly", expr, "Nonzero differential polynomial")->required();
        w->add_flag("--novikov", novikov_input, "Read the input as a Novikov expression");
        w->add_flag("--oracle", oracle, "Confirm the output by closure membership");
        return w;
    };
    auto *wdiff = add_witness("witness-diff", "Trace to c a1'...am' in the CDiff ideal");
    auto *wbimod = add_witness("witness-bimod", "Trace to c a1''...ap'' a(p+1)...a(p+q) in the Nov-bimodule");
    auto *wnov = add_witness("witness-nov", "Trace to a permuted right-associator monomial in the Nov ideal");

    auto *ver = app.add_subcommand("verify", "Replay a trace file (exit 1: rejected)");
    ver->add_option("trace", expr, "Trace JSON file")->required();
    ver->add_option("--gens", gens, "Generators (default: the trace input)");

    auto *div = app.add_subcommand("divides", "Does the first monomial divide the second? (exit 1: no)");
    div->add_option("es", expr, "Divisor monomial")->required();
    div->add_option("et", expr2, "Target monomial")->required();
    div->add_option("--mode", mode_text, "cdiff or nov")->check(CLI::IsMember({"cdiff", "nov"}));

    auto *red = app.add_subcommand("reduce", "Leading-term reduction with a certificate");
    red->add_option("poly", expr, "Polynomial to reduce")->required();
    red->add_option("--gens", gens, "Reducers (repeatable; ';' separates several)");
    red->add_option("--mode", mode_text, "cdiff or nov")->check(CLI::IsMember({"cdiff", "nov"}));

    auto *chain = app.add_subcommand("chain", "Expansion of an iterated right associator or commutator product");
    chain->add_option("p", chain_length, "Number of iterations (>= 1)")->required();
    chain->add_option("--kind", kind, "right-associator or right-commutator")
        ->check(CLI::IsMember({"right-associator", "right-commutator"}));

    auto report = [&](const std::string &kind_text, const std::string &msg) {
        if (fmt == "json") err << Json{{"error", {{"kind", kind_text}, {"message", msg}}}}.dump() << '\n';
        else err << "error: " << msg << '\n';
    };
    auto report_error = [&](const Error &e) {
        if (fmt == "json") err << error_to_json(e).dump() << '\n';
        else err << "error: " << e.what() << '\n';
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError &e) {
        report("usage", e.what());
        return usage;
    }
    const bool as_json = fmt == "json";

    auto poly_out = [&](const DiffPoly &f) {
        if (as_json) out << to_json(f).dump() << '\n';
        else out << format(f) << '\n';
    };

    try {
        if (expand->parsed()) {
            poly_out(expand_nov_term(parse_nov(detail::read_input(expr))));
            return ok;
        }
        if (embed->parsed()) {
            bool yes = is_novikov_image(parse_diff(detail::read_input(expr)));
            if (as_json) out << Json{{"novikov_image", yes}}.dump() << '\n';
            else out << (yes ? "yes" : "no") << '\n';
            return yes ? ok : no;
        }
        if (comp->parsed()) {
            if (slot == 0) throw SlotError("slots are numbered from 1");
            poly_out(compose(parse_diff(detail::read_input(expr)), slot - 1, parse_diff(detail::read_input(expr2))));
            return ok;
        }
        if (dim->parsed()) {
            if (nov_arity) {
                std::size_t n = nov_arity;
                std::size_t got = generate_nov_component(n, bounds.max_arity).dimension();
                mpz_class expected = binomial(2 * n - 2, n - 1);
                bool match = mpz_class(static_cast<unsigned long>(got)) == expected;
                std::string label = "C(" + std::to_string(2 * n - 2) + "," + std::to_string(n - 1) + ")";
                if (as_json)
                    out << Json{{"arity", n}, {"dimension", got}, {"expected", expected.get_str()}, {"matches", match}}.dump() << '\n';
                else
                    out << got << '\n' << (match ? "matches " + label : "does not match " + label + " = " + expected.get_str()) << '\n';
                return match ? ok : no;
            }
            if (!arity || weight < 0) throw ArityError("dim needs --nov N, or --arity and --weight");
            mpz_class d = full_component_dimension(arity, weight);
            if (as_json) out << Json{{"arity", arity}, {"dimension", d.get_str()}, {"weight", weight}}.dump() << '\n';
            else out << d.get_str() << '\n';
            return ok;
        }
        if (closure->parsed()) {
            ClosureMode mode = closure_mode_from_string(mode_text);
            if (weight < 0) {
                if (mode != ClosureMode::nov_ideal) throw ArityError("--weight is required in this mode");
                weight = static_cast<int>(arity) - 1;
            }
            ClosureEngine engine(mode, detail::parse_gens(gens), bounds);
            const GradedSubspace &s = engine.component(arity, weight);
            if (as_json) {
                Json j = to_json(s);
                j["mode"] = to_string(mode);
                out << j.dump() << '\n';
            } else {
                out << "dimension " << s.dimension() << " of " << s.ambient_dimension() << '\n';
                for (const auto &b : s.basis()) out << format(b) << '\n';
            }
            return ok;
        }
        if (mem->parsed()) {
            ClosureMode mode = closure_mode_from_string(mode_text);
            DiffPoly q = parse_diff(detail::read_input(query));
            Grading g = grading(q);
            if (!arity) arity = q.arity();
            if (weight < 0) {
                if (g.weights.size() == 1) weight = *g.weights.begin();
                else if (mode == ClosureMode::nov_ideal) weight = static_cast<int>(arity) - 1;
                else throw ArityError("query is not weight-homogeneous; pass --weight");
            }
            ClosureEngine engine(mode, detail::parse_gens(gens), bounds);
            Membership m = member(q, engine.component(arity, weight));
            if (as_json) {
                Json coords = Json::array();
                for (const auto &c : m.coordinates) coords.push_back(c.to_string());
                Json j = {{"arity", arity}, {"member", m.member}, {"weight", weight}};
                if (m.member) j["coordinates"] = coords;
                if (!m.note.empty()) j["note"] = m.note;
                out << j.dump() << '\n';
            } else if (m.member) {
                out << "member\ncoordinates:";
                for (const auto &c : m.coordinates) out << ' ' << c;
                out << '\n';
            } else {
                out << "not a member" << (m.note.empty() ? "" : " (" + m.note + ")") << '\n';
            }
            return m.member ? ok : no;
        }
        if (wdiff->parsed() || wbimod->parsed() || wnov->parsed()) {
            std::string src = detail::read_input(expr);
            DiffPoly f = novikov_input ? expand_nov_term(parse_nov(src)) : parse_diff(src);
            DerivationTrace t = wdiff->parsed() ? derive_diff_witness(f) : wbimod->parsed() ? derive_bimodule_witness(f) : derive_nov_witness(f);
            std::optional<bool> confirmed;
            if (oracle) {
                ClosureEngine engine(t.mode, {f}, bounds);
                confirmed = member(t.output, engine.component(t.output.arity(), t.output.terms().begin()->first.weight())).member;
            }
            if (as_json) {
                Json j = to_json(t);
                if (confirmed) j["oracle_member"] = *confirmed;
                out << j.dump() << '\n';
            } else {
                detail::print_trace_text(out, t);
                if (confirmed) out << "oracle: " << (*confirmed ? "member" : "NOT a member") << '\n';
            }
            return confirmed && !*confirmed ? no : ok;
        }
        if (ver->parsed()) {
            std::ifstream in(expr);
            if (!in) throw FormatError("cannot read trace file '" + expr + "'");
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::exception &e) {
                throw FormatError(std::string("invalid JSON: ") + e.what());
            }
            DerivationTrace t = trace_from_json(j);
            std::vector<DiffPoly> g = gens.empty() ? std::vector<DiffPoly>{t.input} : detail::parse_gens(gens);
            TraceCheck c = verify_trace(t, g);
            if (as_json) {
                Json r = {{"ok", c.ok}};
                if (!c.ok) {
                    r["reason"] = c.reason;
                    if (c.failing_step) r["failing_step"] = *c.failing_step + 1;
                }
                out << r.dump() << '\n';
            } else if (c.ok) {
                out << "ok: " << t.steps.size() << " steps replayed\n";
            } else {
                out << "rejected" << (c.failing_step ? " at step " + std::to_string(*c.failing_step + 1) : std::string()) << ": "
                    << c.reason << '\n';
            }
            return c.ok ? ok : no;
        }
        if (div->parsed()) {
            OrderMode mode = mode_text.empty() ? OrderMode::cdiff : order_mode_from_string(mode_text);
            DiffPoly es = parse_diff(detail::read_input(expr)), et = parse_diff(detail::read_input(expr2));
            if (es.size() != 1 || et.size() != 1) throw ArityError("divides takes two monomials");
            auto map = divides(es.terms().begin()->first, et.terms().begin()->first, mode);
            if (as_json) {
                Json j = {{"divides", map.has_value()}};
                if (map) {
                    Json m = Json::array();
                    for (std::size_t p : *map) m.push_back(p + 1);
                    j["map"] = m;
                }
                out << j.dump() << '\n';
            } else {
                out << (map ? "yes: " + detail::join_positions(*map) : std::string("no")) << '\n';
            }
            return map ? ok : no;
        }
        if (red->parsed()) {
            OrderMode mode = mode_text.empty() ? OrderMode::cdiff : order_mode_from_string(mode_text);
            DiffPoly f = parse_diff(detail::read_input(expr));
            std::vector<DiffPoly> F = detail::parse_gens(gens);
            Reduction r = reduce(f, F, mode);
            if (as_json) {
                out << to_json(r, mode, f).dump() << '\n';
            } else {
                out << "remainder: " << format(r.remainder) << '\n';
                for (std::size_t i = 0; i < r.steps.size(); ++i) {
                    const auto &s = r.steps[i];
                    out << "step " << i + 1 << ": subtract " << s.coeff << " * (" << format(s.lift.output) << ") from generator "
                        << s.generator + 1 << " via " << s.lift.steps.size() << " moves\n";
                }
            }
            return ok;
        }
        if (chain->parsed()) {
            poly_out(canonical_chain(kind == "right-associator" ? ChainKind::right_associator : ChainKind::right_commutator, chain_length));
            return ok;
        }
    } catch (const BoundError &e) {
        report_error(e);
        return bound;
    } catch (const DiagnosticError &e) {
        report_error(e);
        return internal;
    } catch (const Error &e) {
        report_error(e);
        return usage;
    } catch (const std::exception &e) {
        report("internal", e.what());
        return internal;
    }
    return usage;
}

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace novops::cli
