#pragma once

#include <string>

#include "chow/error.hpp"

namespace chow {

/// Numeric invariants of a smooth projective surface: self-intersection of
/// the canonical class, topological Euler number, and irregularity q = h^{1,0}.
/// q is always supplied data, never derived here.
struct SurfaceInvariants {
    long long c1sq = 0;
    long long c2 = 0;
    long long q = 0;

    friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

/// Hodge numbers of a surface (h^{pq} = h^{qp} implied).
struct HodgeDiamond {
    long long h00 = 1;
    long long h10 = 0;
    long long h20 = 0;
    long long h11 = 0;

    friend bool operator==(const HodgeDiamond&, const HodgeDiamond&) = default;
};

/// Holomorphic Euler characteristic chi(O) = (c1^2 + c2)/12.
inline long long noether_chi(const SurfaceInvariants& inv) {
    long long sum = inv.c1sq + inv.c2;
    if (sum % 12 != 0)
        throw Error("Noether formula needs c1^2 + c2 divisible by 12, got " +
                    std::to_string(sum));
    return sum / 12;
}

/// Hodge numbers from (c1^2, c2, q):
///   h10 = q,  h20 = chi - 1 + q,  h11 = c2 - 2 + 4q - 2 h20.
inline HodgeDiamond hodge_diamond(const SurfaceInvariants& inv) {
    long long chi = noether_chi(inv);
    HodgeDiamond d;
    d.h00 = 1;
    d.h10 = inv.q;
    d.h20 = chi - 1 + inv.q;
    d.h11 = inv.c2 - 2 + 4 * inv.q - 2 * d.h20;
    if (d.h10 < 0 || d.h20 < 0 || d.h11 < 0)
        throw Error("inconsistent surface invariants: negative Hodge number");
    return d;
}

/// Invariants of the quotient of an unramified double cover: c1^2 and c2
/// halve; the quotient irregularity is supplied.
inline SurfaceInvariants etale_double_cover_quotient(const SurfaceInvariants& inv,
                                                     long long q_quotient) {
    if (inv.c1sq % 2 != 0 || inv.c2 % 2 != 0)
        throw Error("unramified double cover needs even c1^2 and c2");
    return {inv.c1sq / 2, inv.c2 / 2, q_quotient};
}

/// Contract k disjoint (-1)-curves: c1^2 rises by k, c2 drops by k.
inline SurfaceInvariants blow_down_points(const SurfaceInvariants& inv, long long k) {
    if (k < 0) throw Error("blow_down_points needs k >= 0");
    return {inv.c1sq + k, inv.c2 - k, inv.q};
}

/// Geometric genus of a plane curve of degree d with the given number of
/// ordinary double points: (d-1)(d-2)/2 - nodes.
inline long long plane_curve_genus(long long d, long long nodes) {
    if (d < 1) throw Error("plane_curve_genus needs degree >= 1");
    if (nodes < 0) throw Error("plane_curve_genus needs nodes >= 0");
    long long g = (d - 1) * (d - 2) / 2 - nodes;
    if (g < 0) throw Error("negative genus");
    return g;
}

/// Dimension of the Prym variety of an unramified double cover of a genus-g
/// curve: g - 1.
inline long long prym_dim(long long g) {
    if (g < 1) throw Error("prym_dim needs genus >= 1");
    return g - 1;
}

/// Genus of the total space of an unramified double cover: 2g - 1.
inline long long etale_double_genus(long long g) {
    if (g < 1) throw Error("etale_double_genus needs genus >= 1");
    return 2 * g - 1;
}

}  // namespace chow
