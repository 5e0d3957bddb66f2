#pragma once

#include <vector>

#include "chow/kclass.hpp"

namespace chow {

/// Class of the zero locus of a regular section: the top Chern class c_r(E),
/// reduced to normal form in the ambient ring.
inline Polynomial zero_locus_class(const KClass& e) {
    if (e.rank() < 1) throw Error("zero_locus_class needs an actual bundle of rank >= 1");
    return e.chern(e.rank());
}

/// A symmetric degeneracy problem: a bundle map L* -> S^2(E*) on an actual
/// bundle E of rank n, dropping rank by `corank`, with c_1(L) = twist.
struct SymmetricMapSpec {
    KClass bundle;       // rank n >= 1
    int corank = 1;      // 1 <= corank <= n
    Polynomial twist;    // homogeneous degree 1, or zero for the untwisted case
};

/// Degeneracy class of a symmetric map via the determinantal formula
///
///     2^c * det( c_{c+1+j-2i}( E* (x) L^(1/2) ) )   for i, j = 1..c,
///
/// with c_k = 0 outside 0..n.  The half twist is realised by shifting each
/// Chern root by twist/2 with rational coefficients; the determinant always
/// clears the halves on consistent input, and the final class is asserted to
/// be integral.  The two printed low-corank instances pin the index pattern:
/// corank 1 gives 2*c_1(E*) + n*twist, corank 2 untwisted gives
/// 4*(c_1 c_2 - c_3)(E*).
inline Polynomial symmetric_porteous(const SymmetricMapSpec& spec) {
    const KClass& e = spec.bundle;
    int n = e.rank();
    int c = spec.corank;
    if (n < 1) throw Error("symmetric_porteous needs an actual bundle of rank >= 1");
    if (c < 1 || c > n) throw Error("corank must lie in 1..rank");
    if (!spec.twist.is_zero() && !spec.twist.is_homogeneous(1))
        throw Error("twist must be homogeneous of degree 1");

    KClass shifted = twist_line(dual(e), Rational(1, 2) * spec.twist);
    auto entry = [&](int k) -> Polynomial {
        if (k < 0 || k > n) return Polynomial::zero();
        return shifted.chern(k);
    };

    // det by Laplace expansion along the first row; c <= 4 in practice.
    std::vector<std::vector<Polynomial>> m(c, std::vector<Polynomial>(c));
    for (int i = 1; i <= c; ++i)
        for (int j = 1; j <= c; ++j) m[i - 1][j - 1] = entry(c + 1 + j - 2 * i);

    std::vector<int> cols(c);
    for (int j = 0; j < c; ++j) cols[j] = j;
    auto det = [&](auto&& self, int row, std::vector<int>& live) -> Polynomial {
        if (live.empty()) return Polynomial::constant(1);
        Polynomial acc;
        for (size_t pick = 0; pick < live.size(); ++pick) {
            int col = live[pick];
            if (m[row][col].is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(live.size() - 1);
            for (size_t q = 0; q < live.size(); ++q)
                if (q != pick) rest.push_back(live[q]);
            Polynomial sub = self(self, row + 1, rest);
            Polynomial contrib = m[row][col] * sub;
            acc = (pick % 2 == 0) ? acc + contrib : acc - contrib;
        }
        return acc;
    };

    Rational scale(1);
    for (int i = 0; i < c; ++i) scale *= Rational(2);
    Polynomial result =
        e.ambient()->normal_form(scale * det(det, 0, cols)).truncate(e.ambient()->top_degree());
    if (!result.is_integral())
        throw Error("symmetric Porteous class has non-integral coefficients: " +
                    result.str());
    return result;
}

inline Polynomial symmetric_porteous(const KClass& e, int corank,
                                     const Polynomial& twist = Polynomial::zero()) {
    return symmetric_porteous(SymmetricMapSpec{e, corank, twist});
}

}  // namespace chow
