#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "chow/rational.hpp"

namespace chow::dsl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree of the defs language.  The language is total: numbers,
/// identifiers, the four arithmetic operators, powers, calls to a fixed set
/// of builtins, and vector literals.
struct Expr {
    enum class Kind { number, ident, unary_minus, binop, call, vector };

    Kind kind;
    Rational number;            // Kind::number
    std::string name;           // Kind::ident / Kind::call
    char op = 0;                // Kind::binop: + - * / ^
    std::vector<ExprPtr> args;  // operands, call arguments, vector elements
    int line = 0, col = 0;

    static ExprPtr make_number(Rational v, int line, int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::number;
        e->number = v;
        e->line = line;
        e->col = col;
        return e;
    }
    static ExprPtr make_ident(std::string name, int line, int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::ident;
        e->name = std::move(name);
        e->line = line;
        e->col = col;
        return e;
    }
    static ExprPtr make_unary(ExprPtr inner, int line, int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::unary_minus;
        e->args = {std::move(inner)};
        e->line = line;
        e->col = col;
        return e;
    }
    static ExprPtr make_binop(char op, ExprPtr a, ExprPtr b, int line, int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::binop;
        e->op = op;
        e->args = {std::move(a), std::move(b)};
        e->line = line;
        e->col = col;
        return e;
    }
    static ExprPtr make_call(std::string name, std::vector<ExprPtr> args, int line,
                             int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::call;
        e->name = std::move(name);
        e->args = std::move(args);
        e->line = line;
        e->col = col;
        return e;
    }
    static ExprPtr make_vector(std::vector<ExprPtr> elems, int line, int col) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::vector;
        e->args = std::move(elems);
        e->line = line;
        e->col = col;
        return e;
    }
};

/// Canonical expression printer; parse(print(e)) reproduces e.
inline std::string to_string(const ExprPtr& e);

namespace detail {

inline int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::binop:
            if (e.op == '+' || e.op == '-') return 1;
            if (e.op == '*' || e.op == '/') return 2;
            return 4;  // ^
        case Expr::Kind::unary_minus:
            return 3;
        default:
            return 5;
    }
}

inline std::string print(const Expr& e, int parent_prec, bool right_side) {
    std::string s;
    int prec = precedence(e);
    switch (e.kind) {
        case Expr::Kind::number:
            s = e.number.str();
            break;
        case Expr::Kind::ident:
            s = e.name;
            break;
        case Expr::Kind::unary_minus:
            s = "-" + print(*e.args[0], prec, true);
            break;
        case Expr::Kind::binop:
            s = print(*e.args[0], prec, false) + " " + e.op + " " +
                print(*e.args[1], prec, true);
            break;
        case Expr::Kind::call: {
            s = e.name + "(";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ", ";
                s += print(*e.args[i], 0, false);
            }
            s += ")";
            break;
        }
        case Expr::Kind::vector: {
            s = "[";
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ", ";
                s += print(*e.args[i], 0, false);
            }
            s += "]";
            break;
        }
    }
    bool need_parens = prec < parent_prec || (prec == parent_prec && right_side &&
                                              e.kind == Expr::Kind::binop);
    return need_parens ? "(" + s + ")" : s;
}

}  // namespace detail

inline std::string to_string(const ExprPtr& e) { return detail::print(*e, 0, false); }

// ---------------------------------------------------------------- declarations

enum class Provenance { paper, derived, trivial };
enum class CheckMode { exact, documented_discrepancy };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "PAPER";
        case Provenance::derived: return "DERIVED";
        default: return "TRIVIAL";
    }
}

struct RingDecl {
    enum class Kind { projective_space, projective_bundle, surface, quotient };
    std::string name;
    Kind kind;
    int line = 0, col = 0;

    // projective_space(dim, gen)
    int dim = 0;
    std::string gen_name;

    // projective_bundle(base, bundle, gen)
    std::string base_ring;
    std::string bundle_name;

    // surface { gens ...  pair a b v ... }
    std::vector<std::string> surface_gens;
    struct Pair { std::string a, b; long long value; };
    std::vector<Pair> pairs;

    // quotient { gen n d ... rule lhs -> rhs ... top t  integral m = v ... }
    struct QGen { std::string name; int degree; };
    std::vector<QGen> qgens;
    struct QRule { ExprPtr lhs, rhs; };
    std::vector<QRule> qrules;
    int top = -1;
    struct QIntegral { ExprPtr monomial; long long value; };
    std::vector<QIntegral> qintegrals;
};

struct BundleDecl {
    std::string name;
    std::string ring;
    ExprPtr expr;
    int line = 0, col = 0;
};

struct CheckDecl {
    std::string id;
    std::string description;
    std::string ring;  // empty for scalar-only checks
    Provenance provenance = Provenance::trivial;
    CheckMode mode = CheckMode::exact;
    ExprPtr program;
    ExprPtr expect;   // exact mode
    ExprPtr printed;  // discrepancy mode: the published value
    ExprPtr derived;  // discrepancy mode: frozen engine value (optional)
    std::string note;
    int line = 0, col = 0;
};

using Decl = std::variant<RingDecl, BundleDecl, CheckDecl>;

struct DefsFile {
    std::vector<Decl> decls;
    std::string print() const;
};

namespace detail {

inline void print_decl(std::string& out, const RingDecl& r) {
    out += "ring " + r.name + " = ";
    switch (r.kind) {
        case RingDecl::Kind::projective_space:
            out += "projective_space(" + std::to_string(r.dim) + ", " + r.gen_name + ")\n";
            break;
        case RingDecl::Kind::projective_bundle:
            out += "projective_bundle(" + r.base_ring + ", " + r.bundle_name + ", " +
                   r.gen_name + ")\n";
            break;
        case RingDecl::Kind::surface: {
            out += "surface {\n  gens";
            for (const auto& g : r.surface_gens) out += " " + g;
            out += "\n";
            for (const auto& p : r.pairs)
                out += "  pair " + p.a + " " + p.b + " " + std::to_string(p.value) + "\n";
            out += "}\n";
            break;
        }
        case RingDecl::Kind::quotient: {
            out += "quotient {\n";
            for (const auto& g : r.qgens)
                out += "  gen " + g.name + " " + std::to_string(g.degree) + "\n";
            for (const auto& rule : r.qrules)
                out += "  rule " + to_string(rule.lhs) + " -> " + to_string(rule.rhs) + "\n";
            out += "  top " + std::to_string(r.top) + "\n";
            for (const auto& in : r.qintegrals)
                out += "  integral " + to_string(in.monomial) + " = " +
                       std::to_string(in.value) + "\n";
            out += "}\n";
            break;
        }
    }
}

inline void print_decl(std::string& out, const BundleDecl& b) {
    out += "bundle " + b.name + " on " + b.ring + " = " + to_string(b.expr) + "\n";
}

inline void print_decl(std::string& out, const CheckDecl& c) {
    out += "check " + c.id + " {\n";
    if (!c.description.empty()) out += "  describe \"" + c.description + "\"\n";
    if (!c.ring.empty()) out += "  ring " + c.ring + "\n";
    out += std::string("  provenance ") + to_string(c.provenance) + "\n";
    if (c.mode == CheckMode::documented_discrepancy) out += "  mode discrepancy\n";
    out += "  program " + to_string(c.program) + "\n";
    if (c.expect) out += "  expect " + to_string(c.expect) + "\n";
    if (c.printed) out += "  printed " + to_string(c.printed) + "\n";
    if (c.derived) out += "  derived " + to_string(c.derived) + "\n";
    if (!c.note.empty()) out += "  note \"" + c.note + "\"\n";
    out += "}\n";
}

}  // namespace detail

inline std::string DefsFile::print() const {
    std::string out;
    for (const Decl& d : decls) {
        std::visit([&](const auto& decl) { detail::print_decl(out, decl); }, d);
        out += "\n";
    }
    return out;
}

}  // namespace chow::dsl
