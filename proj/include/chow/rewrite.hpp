#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chow/polynomial.hpp"

namespace chow {

/// Rewrite step budget for a single normal-form computation.  Rule validation
/// already guarantees termination; the guard catches mis-built presentations.
inline constexpr long kRewriteStepBudget = 1'000'000;

/// One oriented relation lhs -> rhs, with rhs homogeneous of the same degree
/// and strictly smaller in the presentation's reduction order.
struct RewriteRule {
    Monomial lhs;
    Polynomial rhs;
};

/// A graded ring presented by generators and terminating rewrite rules,
/// together with a top degree and an integration table on top-degree normal
/// monomials.  This is the computational model of a Chow ring: normal_form
/// is reduction modulo the relation ideal, integrate is the degree map.
///
/// Reduction order: exponent vectors compared lexicographically with the
/// *last declared* generator most significant.  Bundle constructors append
/// their tautological generator, so adjoined classes always rewrite towards
/// the base, matching the usual presentation of projective-bundle rings.
class Presentation {
public:
    Presentation(std::string name, std::vector<Generator> gens,
                 std::vector<RewriteRule> rules, int top_degree,
                 std::map<Monomial, Rational> integral_table,
                 std::shared_ptr<const Presentation> base = nullptr)
        : name_(std::move(name)),
          gens_(std::move(gens)),
          rules_(std::move(rules)),
          top_degree_(top_degree),
          integral_table_(std::move(integral_table)),
          base_(std::move(base)) {
        validate();
    }

    const std::string& name() const { return name_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    int top_degree() const { return top_degree_; }
    const std::map<Monomial, Rational>& integral_table() const { return integral_table_; }
    const std::shared_ptr<const Presentation>& base() const { return base_; }

    bool has_generator(Generator g) const {
        for (Generator h : gens_)
            if (h == g) return true;
        return false;
    }

    /// True if this presentation is `other` or was built on top of it.
    bool extends(const Presentation& other) const {
        const Presentation* p = this;
        while (p) {
            if (p == &other) return true;
            p = p->base_.get();
        }
        return false;
    }

    /// Strictly-decreasing reduction order on monomials (see class comment).
    bool order_less(const Monomial& a, const Monomial& b) const {
        for (auto it = gens_.rbegin(); it != gens_.rend(); ++it) {
            int ea = a.exponent(*it);
            int eb = b.exponent(*it);
            if (ea != eb) return ea < eb;
        }
        return false;
    }

    void check_over_ring(const Polynomial& p) const {
        for (const auto& [m, c] : p.terms())
            for (const auto& [g, e] : m.entries())
                if (!has_generator(g))
                    throw Error("polynomial mentions generator " + g.name() +
                                " which is not in ring " + name_);
    }

    /// Fully reduced representative of p modulo the rules.  Deterministic:
    /// always rewrites the map-least reducible term with the first matching
    /// rule.  Unique normal form once confluence has been checked.
    Polynomial normal_form(const Polynomial& p) const {
        check_over_ring(p);
        Polynomial::TermMap pending(p.terms());
        Polynomial done;
        long steps = 0;
        while (!pending.empty()) {
            auto it = pending.begin();
            Monomial m = it->first;
            Rational c = it->second;
            pending.erase(it);
            if (c.is_zero()) continue;
            const RewriteRule* rule = first_match(m);
            if (!rule) {
                done.add_term(m, c);
                continue;
            }
            if (++steps > kRewriteStepBudget)
                throw Error("rewrite step budget exceeded in ring " + name_);
            apply(rule, m, c, pending);
        }
        return done;
    }

    /// Degree functional: reduce, keep the top-degree component, pair against
    /// the integral table.  Components of degree != top_degree contribute 0.
    Rational integrate(const Polynomial& p) const {
        if (integral_table_.empty())
            throw Error("ring " + name_ + " has no integral table");
        Polynomial nf = normal_form(p);
        Rational total(0);
        for (const auto& [m, c] : nf.terms()) {
            if (m.total_degree() != top_degree_) continue;
            auto it = integral_table_.find(m);
            if (it == integral_table_.end())
                throw Error("normal monomial " + m.str() +
                            " is missing from the integral table of " + name_);
            total += c * it->second;
        }
        return total;
    }

    /// All monomials over the ring's generators of total degree <= bound.
    std::vector<Monomial> monomials_up_to(int bound) const {
        std::vector<Monomial> out;
        enumerate(0, Monomial::unit(), bound, out);
        return out;
    }

    struct ConfluenceWitness {
        Monomial monomial;
        std::vector<Polynomial> normal_forms;  // the distinct results seen
    };

    struct ConfluenceReport {
        bool confluent = true;
        int monomials_checked = 0;
        std::vector<ConfluenceWitness> witnesses;
    };

    /// Reduce every monomial of degree <= up_to_degree under `trials`
    /// randomized rule-application orders plus the deterministic one, and
    /// report any monomial whose normal form is not unique.
    ConfluenceReport check_confluence(int up_to_degree, int trials,
                                      uint64_t seed = 0x9e3779b9u) const {
        ConfluenceReport report;
        for (const Monomial& m : monomials_up_to(up_to_degree)) {
            ++report.monomials_checked;
            Polynomial reference = normal_form(Polynomial::term(m, 1));
            std::vector<Polynomial> distinct{reference};
            std::mt19937_64 rng(seed ^ (0x517cc1b7ull * (report.monomials_checked + 1)));
            for (int t = 0; t < trials; ++t) {
                Polynomial alt = random_normal_form(Polynomial::term(m, 1), rng);
                bool seen = false;
                for (const Polynomial& q : distinct)
                    if (q == alt) { seen = true; break; }
                if (!seen) distinct.push_back(alt);
            }
            if (distinct.size() > 1) {
                report.confluent = false;
                report.witnesses.push_back({m, std::move(distinct)});
            }
        }
        return report;
    }

private:
    const RewriteRule* first_match(const Monomial& m) const {
        for (const RewriteRule& r : rules_)
            if (r.lhs.divides(m)) return &r;
        return nullptr;
    }

    void apply(const RewriteRule* rule, const Monomial& m, const Rational& c,
               Polynomial::TermMap& pending) const {
        Monomial quot = rule->lhs.divide_into(m);
        for (const auto& [rm, rc] : rule->rhs.terms()) {
            Monomial nm = rm * quot;
            Rational nc = c * rc;
            auto [it, inserted] = pending.emplace(nm, nc);
            if (!inserted) {
                it->second += nc;
                if (it->second.is_zero()) pending.erase(it);
            }
        }
    }

    Polynomial random_normal_form(const Polynomial& p, std::mt19937_64& rng) const {
        Polynomial::TermMap pending(p.terms());
        Polynomial done;
        long steps = 0;
        while (!pending.empty()) {
            // Collect every (term, rule) pair that can fire.
            std::vector<std::pair<Monomial, const RewriteRule*>> choices;
            for (const auto& [m, c] : pending)
                for (const RewriteRule& r : rules_)
                    if (r.lhs.divides(m)) choices.emplace_back(m, &r);
            if (choices.empty()) {
                for (const auto& [m, c] : pending) done.add_term(m, c);
                break;
            }
            auto& pick = choices[rng() % choices.size()];
            auto it = pending.find(pick.first);
            Rational c = it->second;
            pending.erase(it);
            if (c.is_zero()) continue;
            if (++steps > kRewriteStepBudget)
                throw Error("rewrite step budget exceeded in ring " + name_);
            apply(pick.second, pick.first, c, pending);
            // Terms with no applicable rule can be retired eagerly.
            for (auto jt = pending.begin(); jt != pending.end();) {
                if (!first_match(jt->first)) {
                    done.add_term(jt->first, jt->second);
                    jt = pending.erase(jt);
                } else {
                    ++jt;
                }
            }
        }
        return done;
    }

    void enumerate(size_t idx, const Monomial& acc, int remaining,
                   std::vector<Monomial>& out) const {
        if (idx == gens_.size()) {
            out.push_back(acc);
            return;
        }
        Generator g = gens_[idx];
        for (int e = 0; e * g.degree() <= remaining; ++e)
            enumerate(idx + 1, acc * Monomial::power(g, e),
                      remaining - e * g.degree(), out);
    }

    void validate() const {
        if (top_degree_ < 0) throw Error("negative top degree in ring " + name_);
        for (const RewriteRule& r : rules_) {
            if (r.lhs.is_unit())
                throw Error("rule with unit left-hand side in ring " + name_);
            check_over_ring(Polynomial::term(r.lhs, 1));
            check_over_ring(r.rhs);
            int d = r.lhs.total_degree();
            if (!r.rhs.is_homogeneous(d))
                throw Error("rule " + r.lhs.str() + " has non-homogeneous or "
                            "degree-mismatched right-hand side in ring " + name_);
            for (const auto& [m, c] : r.rhs.terms())
                if (!order_less(m, r.lhs))
                    throw Error("rule " + r.lhs.str() + " -> " + r.rhs.str() +
                                " does not decrease the reduction order in ring " +
                                name_ + " (offending term " + m.str() + ")");
        }
        for (const auto& [m, v] : integral_table_) {
            if (m.total_degree() != top_degree_)
                throw Error("integral table key " + m.str() +
                            " is not of top degree in ring " + name_);
            if (!v.is_integer())
                throw Error("integral table value for " + m.str() +
                            " is not an integer in ring " + name_);
        }
        if (!integral_table_.empty()) check_top_degree_coverage();
    }

    /// Every top-degree monomial must reduce into the span of the table keys.
    void check_top_degree_coverage() const {
        for (const Monomial& m : monomials_up_to(top_degree_)) {
            if (m.total_degree() != top_degree_) continue;
            Polynomial nf = normal_form(Polynomial::term(m, 1));
            for (const auto& [nm, c] : nf.terms()) {
                if (nm.total_degree() != top_degree_) continue;
                if (integral_table_.find(nm) == integral_table_.end())
                    throw Error("top-degree monomial " + m.str() + " reduces to " +
                                nm.str() + " which is outside the integral table of " +
                                name_);
            }
        }
    }

    std::string name_;
    std::vector<Generator> gens_;
    std::vector<RewriteRule> rules_;
    int top_degree_;
    std::map<Monomial, Rational> integral_table_;
    std::shared_ptr<const Presentation> base_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

}  // namespace chow
