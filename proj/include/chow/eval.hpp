#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chow/builders.hpp"
#include "chow/defs_parser.hpp"
#include "chow/degeneracy.hpp"
#include "chow/surface.hpp"
#include "chow/symfunc.hpp"

namespace chow::dsl {

using Value = std::variant<Rational, Polynomial, KClass, std::vector<Rational>>;

/// Resolved defs file: rings and bundles constructed in declaration order,
/// checks validated and ready to run.
struct Env {
    DefsFile ast;
    std::vector<std::pair<std::string, PresentationPtr>> rings;  // declaration order
    std::map<std::string, PresentationPtr> ring_by_name;
    std::map<std::string, KClass> bundles;
    std::set<std::string> generator_names;
    std::vector<CheckDecl> checks;

    PresentationPtr ring(const std::string& name) const {
        auto it = ring_by_name.find(name);
        if (it == ring_by_name.end()) throw Error("unknown ring " + name);
        return it->second;
    }
};

namespace detail {

struct Builtin {
    int arity;
    bool ring_arg_last = false;  // integrate(expr, RING)
};

inline const std::map<std::string, Builtin>& builtins() {
    static const std::map<std::string, Builtin> table = {
        {"line", {1}},          {"dual", {1}},
        {"twist", {2}},         {"sym2", {1}},
        {"lambda2", {1}},       {"segre", {1}},
        {"chern", {1}},         {"c", {2}},
        {"chern_top", {1}},     {"porteous_sym", {3}},
        {"rank", {1}},          {"integrate", {2, true}},
        {"noether_chi", {2}},   {"hodge_diamond", {3}},
        {"etale_quotient", {3}},{"blow_down", {4}},
        {"plane_curve_genus", {2}},
        {"prym_dim", {1}},      {"etale_double_genus", {1}},
        {"binomial", {2}},
    };
    return table;
}

/// Static validation of an expression against the environment built so far:
/// unknown identifiers, unknown functions and arity mismatches are rejected
/// at parse_defs time, before anything runs.
inline void validate_expr(const Env& env, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::number:
            return;
        case Expr::Kind::ident: {
            const std::string& n = e->name;
            if (n == "O" || env.bundles.count(n) || env.generator_names.count(n))
                return;
            throw ParseError(e->line, e->col, "unknown identifier '" + n + "'");
        }
        case Expr::Kind::unary_minus:
        case Expr::Kind::vector:
            for (const auto& a : e->args) validate_expr(env, a);
            return;
        case Expr::Kind::binop:
            validate_expr(env, e->args[0]);
            validate_expr(env, e->args[1]);
            return;
        case Expr::Kind::call: {
            auto it = builtins().find(e->name);
            if (it == builtins().end())
                throw ParseError(e->line, e->col, "unknown function '" + e->name + "'");
            if (static_cast<int>(e->args.size()) != it->second.arity)
                throw ParseError(e->line, e->col,
                                 "'" + e->name + "' takes " +
                                     std::to_string(it->second.arity) + " arguments, got " +
                                     std::to_string(e->args.size()));
            size_t n = e->args.size();
            for (size_t i = 0; i < n; ++i) {
                if (it->second.ring_arg_last && i + 1 == n) {
                    const Expr& r = *e->args[i];
                    if (r.kind != Expr::Kind::ident || !env.ring_by_name.count(r.name))
                        throw ParseError(r.line, r.col,
                                         "last argument of '" + e->name +
                                             "' must name a ring");
                } else {
                    validate_expr(env, e->args[i]);
                }
            }
            return;
        }
    }
}

// ---- value helpers ----

inline const char* kind_name(const Value& v) {
    switch (v.index()) {
        case 0: return "number";
        case 1: return "class expression";
        case 2: return "K-class";
        default: return "vector";
    }
}

inline Polynomial as_poly(const Value& v) {
    if (std::holds_alternative<Rational>(v))
        return Polynomial::constant(std::get<Rational>(v));
    if (std::holds_alternative<Polynomial>(v)) return std::get<Polynomial>(v);
    throw Error(std::string("expected a class expression, got ") + kind_name(v));
}

inline Rational as_scalar(const Value& v) {
    if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v);
    if (std::holds_alternative<Polynomial>(v) && std::get<Polynomial>(v).is_constant())
        return std::get<Polynomial>(v).constant_term();
    throw Error(std::string("expected a number, got ") + kind_name(v));
}

inline long long as_int(const Value& v) { return as_scalar(v).as_integer(); }

inline const KClass& as_kclass(const Value& v) {
    if (!std::holds_alternative<KClass>(v))
        throw Error(std::string("expected a K-class, got ") + kind_name(v));
    return std::get<KClass>(v);
}

class Evaluator {
public:
    Evaluator(const Env& env, PresentationPtr ring_ctx)
        : env_(env), ring_(std::move(ring_ctx)) {}

    Value eval(const ExprPtr& e) const {
        switch (e->kind) {
            case Expr::Kind::number:
                return e->number;
            case Expr::Kind::ident:
                return eval_ident(e->name);
            case Expr::Kind::unary_minus:
                return negate(eval(e->args[0]));
            case Expr::Kind::binop:
                return eval_binop(*e);
            case Expr::Kind::vector: {
                std::vector<Rational> out;
                out.reserve(e->args.size());
                for (const auto& a : e->args) out.push_back(as_scalar(eval(a)));
                return out;
            }
            case Expr::Kind::call:
                return eval_call(*e);
        }
        throw Error("unreachable expression kind");
    }

private:
    PresentationPtr require_ring() const {
        if (!ring_) throw Error("expression needs a ring context (add 'ring <name>')");
        return ring_;
    }

    Value eval_ident(const std::string& n) const {
        if (n == "O") return trivial(1, require_ring());
        auto bit = env_.bundles.find(n);
        if (bit != env_.bundles.end()) {
            const KClass& k = bit->second;
            // Pull back silently when the context ring lies over the bundle's
            // home; otherwise the bundle keeps its own ambient.
            if (ring_ && ring_.get() != k.ambient().get() &&
                ring_->extends(*k.ambient()))
                return KClass(k.rank(), k.total_chern(), ring_);
            return k;
        }
        if (env_.generator_names.count(n))
            return Polynomial::generator(Generator::lookup(n));
        throw Error("unknown identifier '" + n + "'");
    }

    static Value negate(Value v) {
        if (std::holds_alternative<Rational>(v)) return -std::get<Rational>(v);
        if (std::holds_alternative<Polynomial>(v)) return -std::get<Polynomial>(v);
        if (std::holds_alternative<KClass>(v)) {
            const KClass& k = std::get<KClass>(v);
            return trivial(0, k.ambient()) - k;
        }
        auto vec = std::get<std::vector<Rational>>(v);
        for (auto& x : vec) x = -x;
        return vec;
    }

    Value eval_binop(const Expr& e) const {
        if (e.op == '^') {
            Value base = eval(e.args[0]);
            long long exp = as_int(eval(e.args[1]));
            if (std::holds_alternative<Rational>(base)) {
                Rational b = std::get<Rational>(base);
                if (exp < 0) {
                    b = Rational(1) / b;
                    exp = -exp;
                }
                Rational r(1);
                for (long long i = 0; i < exp; ++i) r *= b;
                return r;
            }
            if (exp < 0) throw Error("negative power of a class expression");
            return as_poly(base).pow(static_cast<int>(exp));
        }

        Value a = eval(e.args[0]);
        Value b = eval(e.args[1]);

        // K-class arithmetic
        if (std::holds_alternative<KClass>(a) || std::holds_alternative<KClass>(b)) {
            if (e.op == '+' || e.op == '-') {
                const KClass& ka = as_kclass(a);
                const KClass& kb = as_kclass(b);
                return e.op == '+' ? ka + kb : ka - kb;
            }
            if (e.op == '*') {
                if (std::holds_alternative<KClass>(a) &&
                    std::holds_alternative<KClass>(b))
                    throw Error("tensor products of K-classes are not supported; "
                                "use twist() for line twists");
                long long n = std::holds_alternative<KClass>(a) ? as_int(b) : as_int(a);
                const KClass& k = std::holds_alternative<KClass>(a) ? as_kclass(a)
                                                                    : as_kclass(b);
                return static_cast<int>(n) * k;
            }
            throw Error("unsupported K-class operation");
        }

        // vector arithmetic
        if (std::holds_alternative<std::vector<Rational>>(a) ||
            std::holds_alternative<std::vector<Rational>>(b)) {
            if ((e.op == '+' || e.op == '-') &&
                std::holds_alternative<std::vector<Rational>>(a) &&
                std::holds_alternative<std::vector<Rational>>(b)) {
                auto va = std::get<std::vector<Rational>>(a);
                auto vb = std::get<std::vector<Rational>>(b);
                if (va.size() != vb.size()) throw Error("vector length mismatch");
                for (size_t i = 0; i < va.size(); ++i)
                    va[i] = e.op == '+' ? va[i] + vb[i] : va[i] - vb[i];
                return va;
            }
            throw Error("unsupported vector operation");
        }

        // scalar / polynomial arithmetic
        bool scalars = std::holds_alternative<Rational>(a) &&
                       std::holds_alternative<Rational>(b);
        switch (e.op) {
            case '+':
                if (scalars) return std::get<Rational>(a) + std::get<Rational>(b);
                return as_poly(a) + as_poly(b);
            case '-':
                if (scalars) return std::get<Rational>(a) - std::get<Rational>(b);
                return as_poly(a) - as_poly(b);
            case '*':
                if (scalars) return std::get<Rational>(a) * std::get<Rational>(b);
                return as_poly(a) * as_poly(b);
            case '/': {
                Rational d = as_scalar(b);
                if (scalars) return std::get<Rational>(a) / d;
                return (Rational(1) / d) * as_poly(a);
            }
            default:
                throw Error("unknown operator");
        }
    }

    Value eval_call(const Expr& e) const {
        const std::string& f = e.name;
        auto arg = [&](size_t i) { return eval(e.args[i]); };

        if (f == "line") return line(as_poly(arg(0)), require_ring());
        if (f == "dual") return dual(as_kclass(arg(0)));
        if (f == "twist") {
            Value k = arg(0);
            return twist_line(as_kclass(k), as_poly(arg(1)));
        }
        if (f == "sym2") return sym2(as_kclass(arg(0)));
        if (f == "lambda2") return lambda2(as_kclass(arg(0)));
        if (f == "segre") return segre(as_kclass(arg(0)));
        if (f == "chern") return as_kclass(arg(0)).total_chern();
        if (f == "c") {
            Value k = arg(0);
            return as_kclass(k).chern(static_cast<int>(as_int(arg(1))));
        }
        if (f == "chern_top") return zero_locus_class(as_kclass(arg(0)));
        if (f == "porteous_sym") {
            Value k = arg(0);
            int corank = static_cast<int>(as_int(arg(1)));
            Polynomial tw = as_poly(arg(2));
            return symmetric_porteous(as_kclass(k), corank, tw);
        }
        if (f == "rank") return Rational(as_kclass(arg(0)).rank());
        if (f == "integrate") {
            PresentationPtr r = env_.ring(e.args[1]->name);
            return r->integrate(as_poly(arg(0)));
        }
        if (f == "noether_chi")
            return Rational(noether_chi({as_int(arg(0)), as_int(arg(1)), 0}));
        if (f == "hodge_diamond") {
            HodgeDiamond d =
                hodge_diamond({as_int(arg(0)), as_int(arg(1)), as_int(arg(2))});
            return std::vector<Rational>{Rational(d.h00), Rational(d.h10),
                                         Rational(d.h20), Rational(d.h11)};
        }
        if (f == "etale_quotient") {
            SurfaceInvariants s = etale_double_cover_quotient(
                {as_int(arg(0)), as_int(arg(1)), 0}, as_int(arg(2)));
            return std::vector<Rational>{Rational(s.c1sq), Rational(s.c2),
                                         Rational(s.q)};
        }
        if (f == "blow_down") {
            SurfaceInvariants s = blow_down_points(
                {as_int(arg(0)), as_int(arg(1)), as_int(arg(2))}, as_int(arg(3)));
            return std::vector<Rational>{Rational(s.c1sq), Rational(s.c2),
                                         Rational(s.q)};
        }
        if (f == "plane_curve_genus")
            return Rational(plane_curve_genus(as_int(arg(0)), as_int(arg(1))));
        if (f == "prym_dim") return Rational(prym_dim(as_int(arg(0))));
        if (f == "etale_double_genus")
            return Rational(etale_double_genus(as_int(arg(0))));
        if (f == "binomial") {
            long long n = as_int(arg(0)), k = as_int(arg(1));
            if (n < 0 || k < 0) throw Error("binomial needs non-negative arguments");
            if (k > n) return Rational(0);
            Rational r(1);
            for (long long i = 1; i <= k; ++i)
                r = r * Rational(n - k + i) / Rational(i);
            return r;
        }
        throw Error("unknown function '" + f + "'");
    }

    const Env& env_;
    PresentationPtr ring_;
};

}  // namespace detail

/// Evaluate an expression, optionally inside a ring context.
inline Value evaluate(const Env& env, const ExprPtr& expr,
                      PresentationPtr ring_ctx = nullptr) {
    return detail::Evaluator(env, std::move(ring_ctx)).eval(expr);
}

inline PresentationPtr build_ring(const Env& env, const RingDecl& r);

/// Resolve a parsed defs file: build every ring and bundle in order, validate
/// every check.  Forward references fail here because names are only visible
/// after their declaration.
inline Env build_env(DefsFile file) {
    Env env;
    for (const Decl& d : file.decls) {
        if (std::holds_alternative<RingDecl>(d)) {
            const auto& r = std::get<RingDecl>(d);
            if (env.ring_by_name.count(r.name))
                throw ParseError(r.line, r.col, "ring " + r.name + " re-declared");
            PresentationPtr ring;
            try {
                ring = build_ring(env, r);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& err) {
                throw ParseError(r.line, r.col, err.what());
            }
            env.rings.emplace_back(r.name, ring);
            env.ring_by_name.emplace(r.name, ring);
            for (Generator g : ring->generators()) env.generator_names.insert(g.name());
        } else if (std::holds_alternative<BundleDecl>(d)) {
            const auto& b = std::get<BundleDecl>(d);
            if (env.bundles.count(b.name))
                throw ParseError(b.line, b.col, "bundle " + b.name + " re-declared");
            auto it = env.ring_by_name.find(b.ring);
            if (it == env.ring_by_name.end())
                throw ParseError(b.line, b.col, "unknown ring '" + b.ring + "'");
            detail::validate_expr(env, b.expr);
            try {
                Value v = evaluate(env, b.expr, it->second);
                env.bundles.emplace(b.name, detail::as_kclass(v));
            } catch (const Error& err) {
                throw ParseError(b.line, b.col, err.what());
            }
        } else {
            const auto& c = std::get<CheckDecl>(d);
            for (const auto& existing : env.checks)
                if (existing.id == c.id)
                    throw ParseError(c.line, c.col, "check id " + c.id + " re-used");
            if (!c.ring.empty() && !env.ring_by_name.count(c.ring))
                throw ParseError(c.line, c.col, "unknown ring '" + c.ring + "'");
            detail::validate_expr(env, c.program);
            if (c.expect) detail::validate_expr(env, c.expect);
            if (c.printed) detail::validate_expr(env, c.printed);
            if (c.derived) detail::validate_expr(env, c.derived);
            env.checks.push_back(c);
        }
    }
    env.ast = std::move(file);
    return env;
}

/// Parse and resolve in one step.
inline Env parse_defs(const std::string& text) { return build_env(parse_defs_text(text)); }

namespace detail {
inline PresentationPtr build_ring_quotient(const Env& env, const RingDecl& r);
}

inline PresentationPtr build_ring(const Env& env, const RingDecl& r) {
    switch (r.kind) {
        case RingDecl::Kind::projective_space:
            return projective_space(r.dim, r.gen_name, r.name);
        case RingDecl::Kind::projective_bundle: {
            auto base = env.ring_by_name.find(r.base_ring);
            if (base == env.ring_by_name.end())
                throw Error("unknown ring '" + r.base_ring + "'");
            auto bundle = env.bundles.find(r.bundle_name);
            if (bundle == env.bundles.end())
                throw Error("unknown bundle '" + r.bundle_name + "'");
            return projective_bundle(base->second, bundle->second, r.gen_name, r.name);
        }
        case RingDecl::Kind::surface: {
            PairingTable t;
            for (const auto& g : r.surface_gens)
                t.generators.push_back(Generator::intern(g, 1));
            for (const auto& p : r.pairs)
                t.set(Generator::intern(p.a, 1), Generator::intern(p.b, 1), p.value);
            return surface_from_pairing(t, r.name);
        }
        case RingDecl::Kind::quotient:
            return detail::build_ring_quotient(env, r);
    }
    throw Error("unreachable ring kind");
}

namespace detail {

inline PresentationPtr build_ring_quotient(const Env& env, const RingDecl& r) {
    if (r.top < 0) throw Error("quotient ring " + r.name + " needs a top degree");
    std::vector<Generator> gens;
    Env scratch;  // expressions in the block may only use this ring's generators
    scratch.ring_by_name = env.ring_by_name;
    for (const auto& g : r.qgens) {
        gens.push_back(Generator::intern(g.name, g.degree));
        scratch.generator_names.insert(g.name);
    }
    auto eval_poly = [&](const ExprPtr& e) {
        validate_expr(scratch, e);
        return as_poly(evaluate(scratch, e));
    };
    std::vector<RewriteRule> rules;
    for (const auto& rule : r.qrules) {
        Polynomial lhs = eval_poly(rule.lhs);
        if (lhs.terms().size() != 1 || lhs.terms().begin()->second != Rational(1))
            throw Error("rule left-hand side must be a plain monomial, got " +
                        lhs.str());
        rules.push_back({lhs.terms().begin()->first, eval_poly(rule.rhs)});
    }
    std::map<Monomial, Rational> table;
    for (const auto& in : r.qintegrals) {
        Polynomial m = eval_poly(in.monomial);
        if (m.terms().size() != 1 || m.terms().begin()->second != Rational(1))
            throw Error("integral key must be a plain monomial, got " + m.str());
        table.emplace(m.terms().begin()->first, Rational(in.value));
    }
    return std::make_shared<Presentation>(r.name, std::move(gens), std::move(rules),
                                          r.top, std::move(table));
}

}  // namespace detail

}  // namespace chow::dsl
