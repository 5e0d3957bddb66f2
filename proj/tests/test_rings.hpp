#pragma once

// Rings shared between test files, built directly from their printed
// relations (the builder route is exercised separately in test_builders).

#include "chow/rewrite.hpp"

namespace test_rings {

using namespace chow;

inline Generator H() { return Generator::intern("H", 1); }
inline Generator E() { return Generator::intern("E", 1); }
inline Generator P() { return Generator::intern("P", 1); }

inline Polynomial gp(Generator g) { return Polynomial::generator(g); }

/// A(P_Z(M*)): generators H, E, P with
///   H^5 = 0,  E^2 = -EH,  P^4 = -3P^3H - 5P^2H^2 - 5PH^3,
/// dimension 8, integral H^4*E*P^3 = 1.
inline PresentationPtr pzm() {
    static PresentationPtr ring = [] {
        Generator h = H(), e = E(), p = P();
        Polynomial hp = gp(h), ep = gp(e), pp = gp(p);
        std::vector<RewriteRule> rules;
        rules.push_back({Monomial::power(h, 5), Polynomial::zero()});
        rules.push_back({Monomial::power(e, 2), -(ep * hp)});
        rules.push_back({Monomial::power(p, 4),
                         -(Rational(3) * (pp.pow(3) * hp)) -
                             Rational(5) * (pp.pow(2) * hp.pow(2)) -
                             Rational(5) * (pp * hp.pow(3))});
        std::map<Monomial, Rational> table{
            {Monomial::power(h, 4) * Monomial::power(e, 1) * Monomial::power(p, 3),
             Rational(1)}};
        return std::make_shared<Presentation>(
            "PZM", std::vector<Generator>{h, e, p}, std::move(rules), 8,
            std::move(table));
    }();
    return ring;
}

}  // namespace test_rings
