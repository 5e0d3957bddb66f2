#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "chow/rational.hpp"
#include "chow/symbols.hpp"

namespace chow {

/// Largest exponent a single generator may carry.  Everything in this suite
/// lives in degree <= 8; the bound exists to catch runaway expressions.
inline constexpr int kMaxExponent = 64;

/// A power product of generators.  Zero exponents are never stored and the
/// entry list is kept sorted by generator id, so representation is canonical
/// and equality is structural.
class Monomial {
public:
    using Entry = std::pair<Generator, int>;

    Monomial() : degree_(0) {}

    static Monomial unit() { return Monomial(); }

    static Monomial power(Generator g, int exp) {
        Monomial m;
        if (exp < 0) throw Error("negative exponent");
        if (exp > kMaxExponent)
            throw Error("exponent overflow on " + g.name() + "^" + std::to_string(exp));
        if (exp > 0) {
            m.entries_.emplace_back(g, exp);
            m.degree_ = g.degree() * exp;
        }
        return m;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_unit() const { return entries_.empty(); }
    int total_degree() const { return degree_; }

    int exponent(Generator g) const {
        for (const Entry& e : entries_)
            if (e.first == g) return e.second;
        return 0;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.entries_.reserve(entries_.size() + o.entries_.size());
        auto a = entries_.begin(), b = o.entries_.begin();
        while (a != entries_.end() || b != o.entries_.end()) {
            if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                r.entries_.push_back(*a++);
            } else if (a == entries_.end() || b->first < a->first) {
                r.entries_.push_back(*b++);
            } else {
                int e = a->second + b->second;
                if (e > kMaxExponent)
                    throw Error("exponent overflow on " + a->first.name() + "^" +
                                std::to_string(e));
                r.entries_.emplace_back(a->first, e);
                ++a, ++b;
            }
        }
        r.degree_ = degree_ + o.degree_;
        return r;
    }

    bool divides(const Monomial& m) const {
        auto a = entries_.begin();
        auto b = m.entries_.begin();
        while (a != entries_.end()) {
            while (b != m.entries_.end() && b->first < a->first) ++b;
            if (b == m.entries_.end() || b->first != a->first || b->second < a->second)
                return false;
            ++a;
        }
        return true;
    }

    /// Quotient m / this; caller guarantees divisibility.
    Monomial divide_into(const Monomial& m) const {
        Monomial r;
        auto a = entries_.begin();
        for (const Entry& e : m.entries_) {
            int sub = 0;
            if (a != entries_.end() && a->first == e.first) {
                sub = a->second;
                ++a;
            }
            if (e.second - sub > 0) r.entries_.emplace_back(e.first, e.second - sub);
        }
        r.degree_ = m.degree_ - degree_;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Arbitrary strict total order used for map storage: entry-wise on
    /// (generator id, exponent).  Display order is handled separately.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return std::lexicographical_compare(
            a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
            [](const Entry& x, const Entry& y) {
                if (x.first != y.first) return x.first < y.first;
                return x.second < y.second;
            });
    }

    std::string str() const {
        if (entries_.empty()) return "1";
        std::string s;
        for (const Entry& e : entries_) {
            if (!s.empty()) s += "*";
            s += e.first.name();
            if (e.second != 1) s += "^" + std::to_string(e.second);
        }
        return s;
    }

private:
    std::vector<Entry> entries_;  // sorted by generator id, exponents > 0
    int degree_;
};

/// Exact multivariate polynomial with rational coefficients over graded
/// generators.  Zero coefficients are never stored; equality is term by term.
/// Values are immutable in spirit: every operation returns a fresh value and
/// shared instances are safe to read concurrently.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;

    static Polynomial zero() { return Polynomial(); }

    static Polynomial constant(const Rational& c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_.emplace(Monomial::unit(), c);
        return p;
    }

    static Polynomial generator(Generator g) { return term(Monomial::power(g, 1), 1); }

    static Polynomial term(const Monomial& m, const Rational& c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial::unit());
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Largest total degree among stored terms; -1 for the zero polynomial.
    int max_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : terms_)
            if (m.total_degree() != d) return false;
        return true;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r;
        if (c.is_zero()) return r;
        for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
        return r;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw Error("negative polynomial power");
        Polynomial r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Sum of the terms of total degree exactly d.
    Polynomial grade_component(int d) const {
        Polynomial r;
        for (const auto& [m, c] : terms_)
            if (m.total_degree() == d) r.terms_.emplace(m, c);
        return r;
    }

    /// Drop every term of total degree > d.
    Polynomial truncate(int d) const {
        Polynomial r;
        for (const auto& [m, c] : terms_)
            if (m.total_degree() <= d) r.terms_.emplace(m, c);
        return r;
    }

    /// True if every coefficient is an integer.
    bool is_integral() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_integer()) return false;
        return true;
    }

    /// Multiplicative series inverse modulo terms of degree > max_degree.
    /// Requires constant term exactly 1.
    Polynomial series_inverse(int max_degree) const {
        if (constant_term() != Rational(1))
            throw Error("series_inverse requires constant term 1");
        Polynomial r = constant(1) - *this;  // positive lowest degree
        Polynomial acc = constant(1);
        Polynomial pw = constant(1);
        for (int i = 0; i < max_degree; ++i) {
            pw = (pw * r).truncate(max_degree);
            if (pw.is_zero()) break;
            acc = acc + pw;
        }
        return acc.truncate(max_degree);
    }

    /// Deterministic display: ascending total degree; within a degree,
    /// later-declared generators weigh more and lower exponents print first.
    /// This reproduces the usual hand-written order (1 + 3H + 5H^2, or
    /// 40*H^3 + 39*H^2*E).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const TermMap::value_type*> order;
        order.reserve(terms_.size());
        for (const auto& t : terms_) order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
            return display_less(x->first, y->first);
        });
        std::string s;
        for (const auto* t : order) {
            Rational c = t->second;
            if (s.empty()) {
                if (c < Rational(0)) { s += "-"; c = -c; }
            } else {
                s += (c < Rational(0)) ? " - " : " + ";
                if (c < Rational(0)) c = -c;
            }
            if (t->first.is_unit()) {
                s += c.str();
            } else if (c == Rational(1)) {
                s += t->first.str();
            } else {
                s += c.str() + "*" + t->first.str();
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        return os << p.str();
    }

private:
    static bool display_less(const Monomial& a, const Monomial& b) {
        if (a.total_degree() != b.total_degree())
            return a.total_degree() < b.total_degree();
        // Compare exponents from the highest generator id downwards.
        const auto& ea = a.entries();
        const auto& eb = b.entries();
        auto ia = ea.rbegin();
        auto ib = eb.rbegin();
        while (ia != ea.rend() || ib != eb.rend()) {
            uint32_t ga = (ia != ea.rend()) ? ia->first.id() : 0;
            uint32_t gb = (ib != eb.rend()) ? ib->first.id() : 0;
            if (ia != ea.rend() && (ib == eb.rend() || ga > gb)) {
                return false;  // a has a high generator b lacks: a heavier
            }
            if (ib != eb.rend() && (ia == ea.rend() || gb > ga)) {
                return true;
            }
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia, ++ib;
        }
        return false;
    }

    TermMap terms_;
};

}  // namespace chow
