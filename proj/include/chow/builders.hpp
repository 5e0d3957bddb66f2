#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chow/kclass.hpp"

namespace chow {

/// Intersection pairing of degree-1 classes on a surface.
struct PairingTable {
    std::vector<Generator> generators;
    std::map<std::pair<Generator, Generator>, long long> products;

    void set(Generator a, Generator b, long long v) {
        products[key(a, b)] = v;
    }

    bool has(Generator a, Generator b) const {
        return products.find(key(a, b)) != products.end();
    }

    long long get(Generator a, Generator b) const {
        auto it = products.find(key(a, b));
        if (it == products.end())
            throw Error("pairing table has no entry for " + a.name() + "*" + b.name());
        return it->second;
    }

private:
    static std::pair<Generator, Generator> key(Generator a, Generator b) {
        return b < a ? std::make_pair(b, a) : std::make_pair(a, b);
    }
};

/// Chow ring of P^n: one degree-1 generator g, relation g^(n+1) = 0, and
/// integral g^n = 1.
inline PresentationPtr projective_space(int n, const std::string& gen_name,
                                        std::string ring_name = "") {
    if (n < 0) throw Error("projective_space needs n >= 0");
    if (ring_name.empty()) ring_name = "P" + std::to_string(n);
    Generator g = Generator::intern(gen_name, 1);
    std::vector<RewriteRule> rules{{Monomial::power(g, n + 1), Polynomial::zero()}};
    std::map<Monomial, Rational> table{{Monomial::power(g, n), Rational(1)}};
    return std::make_shared<Presentation>(std::move(ring_name),
                                          std::vector<Generator>{g}, std::move(rules),
                                          n, std::move(table));
}

/// Chow ring of the projective bundle P(E) over `base`, for an actual bundle
/// E of rank r >= 1.  Adjoins the tautological degree-1 class g with the
/// Grothendieck relation
///     g^r = -(c_1(E) g^(r-1) + ... + c_r(E)),
/// raises the top degree by r - 1, and extends the integral table by the
/// projective-bundle rule: the fibre integral of g^(r-1) is 1, so each base
/// table entry beta |-> v becomes g^(r-1) * beta |-> v.  Integrals of higher
/// powers of g then come out of the relation, which encodes exactly the Segre
/// recursion int g^(r-1+k) * beta = int_base s_k(E) * beta.
inline PresentationPtr projective_bundle(const PresentationPtr& base, const KClass& e,
                                         const std::string& gen_name,
                                         std::string ring_name = "") {
    if (!base) throw Error("projective_bundle needs a base ring");
    if (e.ambient().get() != base.get())
        throw Error("bundle lives on " + e.ambient()->name() + ", not on base " +
                    base->name());
    int r = e.rank();
    if (r < 1) throw Error("projective_bundle needs rank >= 1");
    for (int i = r + 1; i <= base->top_degree(); ++i)
        if (!e.chern(i).is_zero())
            throw Error("Chern data inconsistent with rank: c_" + std::to_string(i) +
                        " of a rank-" + std::to_string(r) + " bundle is nonzero");
    Generator g = Generator::intern(gen_name, 1);
    if (base->has_generator(g))
        throw Error("generator " + gen_name + " already exists in " + base->name());
    if (ring_name.empty()) ring_name = "P(E/" + base->name() + ")";

    std::vector<Generator> gens = base->generators();
    gens.push_back(g);
    std::vector<RewriteRule> rules = base->rules();
    Polynomial rhs;
    for (int i = 1; i <= r; ++i)
        rhs = rhs - e.chern(i) * Polynomial::term(Monomial::power(g, r - i), 1);
    rules.push_back({Monomial::power(g, r), rhs});

    std::map<Monomial, Rational> table;
    Monomial fibre = Monomial::power(g, r - 1);
    for (const auto& [m, v] : base->integral_table()) table.emplace(m * fibre, v);

    return std::make_shared<Presentation>(std::move(ring_name), std::move(gens),
                                          std::move(rules),
                                          base->top_degree() + r - 1,
                                          std::move(table), base);
}

/// Two-dimensional ring determined by a complete symmetric pairing table on
/// degree-1 generators.  Everything of degree >= 3 is rewritten to zero, so
/// integrate expands degree-2 expressions bilinearly through the table.
inline PresentationPtr surface_from_pairing(const PairingTable& t,
                                            std::string ring_name = "surface") {
    if (t.generators.empty()) throw Error("pairing table has no generators");
    for (Generator g : t.generators)
        if (g.degree() != 1)
            throw Error("pairing table generator " + g.name() + " must have degree 1");
    size_t n = t.generators.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            if (!t.has(t.generators[i], t.generators[j]))
                throw Error("incomplete pairing table: missing " +
                            t.generators[i].name() + "*" + t.generators[j].name());

    std::vector<RewriteRule> rules;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                Monomial lhs = Monomial::power(t.generators[i], 1) *
                               Monomial::power(t.generators[j], 1) *
                               Monomial::power(t.generators[k], 1);
                rules.push_back({lhs, Polynomial::zero()});
            }

    std::map<Monomial, Rational> table;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            table.emplace(Monomial::power(t.generators[i], 1) *
                              Monomial::power(t.generators[j], 1),
                          Rational(t.get(t.generators[i], t.generators[j])));

    return std::make_shared<Presentation>(std::move(ring_name), t.generators,
                                          std::move(rules), 2, std::move(table));
}

}  // namespace chow
