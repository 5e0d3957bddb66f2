#pragma once

#include <utility>

#include "chow/rewrite.hpp"

namespace chow {

/// A virtual bundle on an ambient ring: a rank (negative allowed) and a total
/// Chern polynomial with constant term 1, stored in normal form and truncated
/// at the ambient top degree.  Rank and total Chern class determine everything
/// this library computes.
class KClass {
public:
    KClass(int rank, Polynomial total_chern, PresentationPtr ambient)
        : rank_(rank), ambient_(std::move(ambient)) {
        if (!ambient_) throw Error("KClass needs an ambient ring");
        total_chern_ =
            ambient_->normal_form(total_chern).truncate(ambient_->top_degree());
        if (total_chern_.constant_term() != Rational(1))
            throw Error("total Chern class must have constant term 1");
    }

    int rank() const { return rank_; }
    const Polynomial& total_chern() const { return total_chern_; }
    const PresentationPtr& ambient() const { return ambient_; }

    /// Chern class c_i, already in normal form.
    Polynomial chern(int i) const { return total_chern_.grade_component(i); }

    friend bool operator==(const KClass& a, const KClass& b) {
        return a.rank_ == b.rank_ && a.total_chern_ == b.total_chern_ &&
               a.ambient_.get() == b.ambient_.get();
    }
    friend bool operator!=(const KClass& a, const KClass& b) { return !(a == b); }

private:
    int rank_;
    Polynomial total_chern_;
    PresentationPtr ambient_;
};

/// Trivial bundle of the given rank.
inline KClass trivial(int rank, PresentationPtr ambient) {
    return KClass(rank, Polynomial::constant(1), std::move(ambient));
}

/// Line bundle with first Chern class c1 (homogeneous of degree 1, or zero).
inline KClass line(const Polynomial& c1, PresentationPtr ambient) {
    if (!c1.is_zero() && !c1.is_homogeneous(1))
        throw Error("line() needs a homogeneous degree-1 class");
    return KClass(1, Polynomial::constant(1) + c1, std::move(ambient));
}

inline void require_same_ambient(const KClass& a, const KClass& b) {
    if (a.ambient().get() != b.ambient().get())
        throw Error("K-classes live on different ambient rings (" +
                    a.ambient()->name() + " vs " + b.ambient()->name() + ")");
}

/// Whitney sum: ranks add, total Chern classes multiply.
inline KClass operator+(const KClass& a, const KClass& b) {
    require_same_ambient(a, b);
    return KClass(a.rank() + b.rank(), a.total_chern() * b.total_chern(),
                  a.ambient());
}

/// Virtual difference: ranks subtract, total Chern divides as a series.
inline KClass operator-(const KClass& a, const KClass& b) {
    require_same_ambient(a, b);
    int top = a.ambient()->top_degree();
    return KClass(a.rank() - b.rank(),
                  a.total_chern() * b.total_chern().series_inverse(top),
                  a.ambient());
}

enum class Sign { plus, minus };

inline KClass combine(const KClass& a, const KClass& b, Sign sign) {
    return sign == Sign::plus ? a + b : a - b;
}

/// n disjoint copies (n may be negative).
inline KClass operator*(int n, const KClass& e) {
    KClass acc = trivial(0, e.ambient());
    KClass unit = n >= 0 ? e : (trivial(0, e.ambient()) - e);
    int count = n >= 0 ? n : -n;
    for (int i = 0; i < count; ++i) acc = acc + unit;
    return acc;
}

/// Dual bundle: c_i flips sign in odd degree.
inline KClass dual(const KClass& e) {
    Polynomial c;
    for (const auto& [m, coeff] : e.total_chern().terms()) {
        int d = m.total_degree();
        c.add_term(m, (d % 2 == 0) ? coeff : -coeff);
    }
    return KClass(e.rank(), c, e.ambient());
}

/// Tensor an actual bundle of rank r >= 0 by a line class.  Chern roots all
/// shift by c1(L):  c_k(E (x) L) = sum_j C(r-j, k-j) c_j(E) c1(L)^(k-j).
/// The sum only reads c_0..c_r, so stray high components of a virtual input
/// never leak through.  L may carry rational coefficients (half twists).
inline KClass twist_line(const KClass& e, const Polynomial& l_c1) {
    if (e.rank() < 0) throw Error("twist_line needs an actual bundle (rank >= 0)");
    if (!l_c1.is_zero() && !l_c1.is_homogeneous(1))
        throw Error("twist class must be homogeneous of degree 1");
    int r = e.rank();
    int top = e.ambient()->top_degree();
    auto binom = [](int n, int k) -> long long {
        if (k < 0 || k > n) return 0;
        long long v = 1;
        for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
        return v;
    };
    Polynomial total;
    for (int k = 0; k <= top; ++k) {
        Polynomial ck;
        for (int j = 0; j <= std::min(k, r); ++j) {
            long long b = binom(r - j, k - j);
            if (b == 0) continue;
            ck = ck + Rational(b) * (e.chern(j) * l_c1.pow(k - j));
        }
        total = total + ck;
    }
    return KClass(r, total, e.ambient());
}

/// Segre series: the inverse of the total Chern class up to the ambient top
/// degree, reduced to normal form.
inline Polynomial segre(const KClass& e) {
    int top = e.ambient()->top_degree();
    return e.ambient()->normal_form(e.total_chern().series_inverse(top))
        .truncate(top);
}

}  // namespace chow
