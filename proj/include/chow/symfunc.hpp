#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "chow/kclass.hpp"

namespace chow {

namespace symfunc {

/// Exponent vector over at most four formal Chern roots.
using Exp = std::array<int, 4>;
/// Integer polynomial in the roots (or, after reduction, in e_1..e_4).
using RootPoly = std::map<Exp, long long>;

inline void add_term(RootPoly& p, const Exp& e, long long c) {
    if (c == 0) return;
    auto [it, inserted] = p.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline RootPoly mul(const RootPoly& a, const RootPoly& b) {
    RootPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exp e{};
            for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
            add_term(r, e, ca * cb);
        }
    return r;
}

inline RootPoly one() { return {{Exp{}, 1}}; }

inline RootPoly root(int i) {
    Exp e{};
    e[i] = 1;
    return {{e, 1}};
}

/// Elementary symmetric polynomials e_1..e_rank of the first `rank` roots.
inline std::vector<RootPoly> elementary(int rank) {
    std::vector<RootPoly> es(rank + 1);
    es[0] = one();
    for (int n = 0; n < rank; ++n)
        for (int k = std::min(n + 1, rank); k >= 1; --k) {
            RootPoly next = es[k];
            if (!es[k - 1].empty())
                for (const auto& [e, c] : mul(es[k - 1], root(n))) add_term(next, e, c);
            es[k] = next;
        }
    return es;
}

/// Write a symmetric RootPoly as an integer polynomial in e_1..e_rank by
/// repeated leading-term elimination in lexicographic root order (the
/// classical constructive proof of the fundamental theorem of symmetric
/// polynomials).  The result maps e-exponent vectors to coefficients.
inline RootPoly reduce_symmetric(RootPoly p, int rank) {
    const std::vector<RootPoly> es = elementary(rank);
    RootPoly out;
    while (!p.empty()) {
        // Lexicographic leading term, x1 most significant.
        auto lead = p.begin();
        for (auto it = p.begin(); it != p.end(); ++it)
            if (it->first > lead->first) lead = it;
        Exp a = lead->first;
        long long c = lead->second;
        for (int i = 0; i + 1 < rank; ++i)
            if (a[i] < a[i + 1])
                throw Error("symmetric reduction hit a non-symmetric polynomial");
        Exp k{};
        for (int i = 0; i < rank; ++i)
            k[i] = a[i] - (i + 1 < rank ? a[i + 1] : 0);
        add_term(out, k, c);
        RootPoly sub = one();
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < k[i]; ++j) sub = mul(sub, es[i + 1]);
        for (auto& [e, cc] : sub) add_term(p, e, -c * cc);
    }
    return out;
}

enum class DerivedOp { sym2, lambda2 };

/// For each Chern class c_k of the derived bundle, its expression as an
/// integer polynomial in e_1..e_rank of the input bundle.
struct ReductionTable {
    int derived_rank;
    std::vector<RootPoly> chern;  // index k = 0..derived_rank
};

/// Cached per (operation, rank).  Tables are computed once and never mutated
/// afterwards, so concurrent readers only contend on the lookup mutex.
inline const ReductionTable& table_for(DerivedOp op, int rank) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, ReductionTable> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(static_cast<int>(op), rank);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<RootPoly> derived_roots;
    for (int i = 0; i < rank; ++i)
        for (int j = i; j < rank; ++j) {
            if (op == DerivedOp::lambda2 && i == j) continue;
            RootPoly rho = root(i);
            for (const auto& [e, c] : root(j)) add_term(rho, e, c);
            derived_roots.push_back(std::move(rho));
        }
    int dr = static_cast<int>(derived_roots.size());
    // c_k of the derived bundle = k-th elementary symmetric of derived roots.
    std::vector<RootPoly> es(dr + 1);
    es[0] = one();
    int used = 0;
    for (const RootPoly& rho : derived_roots) {
        ++used;
        for (int k = std::min(used, dr); k >= 1; --k) {
            RootPoly next = es[k];
            for (const auto& [e, c] : mul(es[k - 1], rho)) add_term(next, e, c);
            es[k] = next;
        }
    }
    ReductionTable t;
    t.derived_rank = dr;
    t.chern.reserve(dr + 1);
    for (int k = 0; k <= dr; ++k) t.chern.push_back(reduce_symmetric(es[k], rank));
    it = cache.emplace(key, std::move(t)).first;
    return it->second;
}

/// Instantiate a reduced expression at the Chern classes of a concrete bundle.
inline Polynomial instantiate(const RootPoly& expr, const KClass& e) {
    Polynomial acc;
    for (const auto& [k, c] : expr) {
        Polynomial term = Polynomial::constant(Rational(c));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < k[i]; ++j) term = term * e.chern(i + 1);
        acc = acc + term;
    }
    return acc;
}

inline KClass derived_bundle(DerivedOp op, const KClass& e, int min_rank, int max_rank,
                             const char* op_name) {
    if (e.rank() < min_rank || e.rank() > max_rank)
        throw Error(std::string(op_name) + " supports ranks " +
                    std::to_string(min_rank) + ".." + std::to_string(max_rank) +
                    ", got " + std::to_string(e.rank()));
    const ReductionTable& t = table_for(op, e.rank());
    Polynomial total;
    int top = e.ambient()->top_degree();
    for (int k = 0; k <= t.derived_rank && k <= top + 1; ++k)
        total = total + instantiate(t.chern[k], e).grade_component(k);
    return KClass(t.derived_rank, total, e.ambient());
}

}  // namespace symfunc

/// Symmetric square: roots {x_i + x_j : i <= j}; rank r(r+1)/2.
inline KClass sym2(const KClass& e) {
    return symfunc::derived_bundle(symfunc::DerivedOp::sym2, e, 1, 4, "sym2");
}

/// Exterior square: roots {x_i + x_j : i < j}; rank r(r-1)/2.
inline KClass lambda2(const KClass& e) {
    return symfunc::derived_bundle(symfunc::DerivedOp::lambda2, e, 2, 4, "lambda2");
}

}  // namespace chow
