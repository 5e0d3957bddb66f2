#include <doctest.h>

#include <random>

#include "chow/builders.hpp"
#include "chow/symfunc.hpp"

using namespace chow;

namespace {

Polynomial gp(const char* name) {
    return Polynomial::generator(Generator::intern(name, 1));
}

/// Ambient big enough that no oracle product gets truncated.
PresentationPtr freering() {
    static PresentationPtr r = projective_space(12, "t", "P12");
    return r;
}

/// Direct splitting-principle computation: the bundle with the given integer
/// root multiples of t, as a product of explicit linear factors.
Polynomial product_of_roots(const std::vector<long long>& roots,
                            const Polynomial& t) {
    Polynomial acc = Polynomial::constant(1);
    for (long long a : roots) acc = acc * (Polynomial::constant(1) + Rational(a) * t);
    return acc.truncate(12);
}

KClass sum_of_lines(const std::vector<long long>& roots, const PresentationPtr& ring,
                    const Polynomial& t) {
    KClass acc = trivial(0, ring);
    for (long long a : roots) acc = acc + line(Rational(a) * t, ring);
    return acc;
}

}  // namespace

TEST_CASE("line classes") {
    auto p4 = projective_space(4, "H");
    Polynomial h = gp("H");
    KClass l = line(h, p4);
    CHECK(l.rank() == 1);
    CHECK(l.total_chern() == Polynomial::constant(1) + h);
    CHECK(line(Polynomial::zero(), p4) == trivial(1, p4));
    CHECK_THROWS_AS(line(h.pow(2), p4), Error);
}

TEST_CASE("K-group combinations") {
    auto p4 = projective_space(4, "H");
    Polynomial h = gp("H");
    Polynomial one = Polynomial::constant(1);

    SUBCASE("dual of M = 8O - 5O(1) + O(2) has the printed Chern series") {
        KClass m = 8 * trivial(1, p4) - 5 * line(h, p4) + line(Rational(2) * h, p4);
        CHECK(m.rank() == 4);
        KClass mstar = dual(m);
        Polynomial expected = one + Rational(3) * h + Rational(5) * h.pow(2) +
                              Rational(5) * h.pow(3);
        CHECK(mstar.total_chern() == expected);
        CHECK(mstar.chern(4).is_zero());
    }
    SUBCASE("E - E is the zero class") {
        KClass e = line(h, p4) + trivial(2, p4);
        KClass z = e - e;
        CHECK(z.rank() == 0);
        CHECK(z.total_chern() == one);
    }
    SUBCASE("subtracting a summand recovers the other") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> c(-4, 4);
        for (int t = 0; t < 50; ++t) {
            KClass a = line(Rational(c(rng)) * h, p4) + line(Rational(c(rng)) * h, p4);
            KClass b = line(Rational(c(rng)) * h, p4);
            CHECK((a + b) - b == a);
        }
    }
    SUBCASE("E + E* has vanishing odd components") {
        KClass e = line(h, p4) + line(Rational(-2) * h, p4) + trivial(1, p4);
        KClass s = e + dual(e);
        CHECK(s.chern(1).is_zero());
        CHECK(s.chern(3).is_zero());
    }
    SUBCASE("dual is an involution and fixes trivial classes") {
        KClass e = 3 * line(h, p4) - line(Rational(2) * h, p4);
        CHECK(dual(dual(e)) == e);
        CHECK(dual(trivial(5, p4)) == trivial(5, p4));
    }
}

TEST_CASE("line twists") {
    auto ring = freering();
    Polynomial t = gp("t");

    SUBCASE("rank 1: roots translate") {
        KClass l = line(Rational(3) * t, ring);
        CHECK(twist_line(l, Rational(2) * t) == line(Rational(5) * t, ring));
    }
    SUBCASE("rank 2: c1 shifts by 2t") {
        KClass e = line(t, ring) + line(Rational(4) * t, ring);
        KClass tw = twist_line(e, t);
        CHECK(tw.chern(1) == Rational(7) * t);
    }
    SUBCASE("twist by zero is the identity") {
        KClass e = line(t, ring) + trivial(2, ring);
        CHECK(twist_line(e, Polynomial::zero()) == e);
    }
    SUBCASE("virtual inputs are rejected") {
        KClass v = trivial(0, ring) - line(t, ring);
        CHECK_THROWS_AS(twist_line(v, t), Error);
    }
}

TEST_CASE("symmetric and exterior squares, small ranks") {
    auto ring = freering();
    Polynomial t = gp("t");

    SUBCASE("sym2 of a line is its square") {
        KClass l = line(Rational(3) * t, ring);
        CHECK(sym2(l) == line(Rational(6) * t, ring));
    }
    SUBCASE("rank 2: c1(S^2 E) = 3 c1(E), rank 3: 4 c1(E)") {
        KClass e2 = line(t, ring) + line(Rational(2) * t, ring);
        CHECK(sym2(e2).chern(1) == Rational(9) * t);
        CHECK(sym2(e2).rank() == 3);
        KClass e3 = e2 + line(Rational(5) * t, ring);
        CHECK(sym2(e3).chern(1) == Rational(32) * t);  // 4 * 8t
        CHECK(sym2(e3).rank() == 6);
    }
    SUBCASE("lambda2 of rank 2 is the determinant line") {
        KClass e = line(t, ring) + line(Rational(4) * t, ring);
        KClass det = lambda2(e);
        CHECK(det.rank() == 1);
        CHECK(det.chern(1) == e.chern(1));
    }
    SUBCASE("lambda2 of rank 3 doubles c1") {
        KClass e = line(t, ring) + line(Rational(2) * t, ring) + line(Rational(5) * t, ring);
        CHECK(lambda2(e).chern(1) == Rational(16) * t);
        CHECK(lambda2(e).rank() == 3);
    }
    SUBCASE("rank bounds are enforced") {
        CHECK_THROWS_AS(sym2(trivial(5, ring)), Error);
        CHECK_THROWS_AS(sym2(trivial(0, ring)), Error);
        CHECK_THROWS_AS(lambda2(line(t, ring)), Error);
        CHECK_THROWS_AS(lambda2(trivial(5, ring)), Error);
    }
    SUBCASE("rank 2: S^2 + Lambda^2 has the total Chern class of E (x) E") {
        KClass e = line(Rational(2) * t, ring) + line(Rational(7) * t, ring);
        KClass both = sym2(e) + lambda2(e);
        Polynomial expected = product_of_roots({4, 9, 9, 14}, t);
        CHECK(both.total_chern() == expected);
    }
}

TEST_CASE("splitting-principle oracle: derived classes match direct root products") {
    auto ring = freering();
    Polynomial t = gp("t");
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long long> root(-9, 9);

    for (int rank = 1; rank <= 4; ++rank) {
        CAPTURE(rank);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<long long> roots;
            for (int i = 0; i < rank; ++i) roots.push_back(root(rng));
            KClass e = sum_of_lines(roots, ring, t);

            // sym2: roots x_i + x_j for i <= j
            std::vector<long long> sym_roots;
            for (int i = 0; i < rank; ++i)
                for (int j = i; j < rank; ++j) sym_roots.push_back(roots[i] + roots[j]);
            CHECK(sym2(e).total_chern() == product_of_roots(sym_roots, t));

            // lambda2: i < j
            if (rank >= 2) {
                std::vector<long long> lam_roots;
                for (int i = 0; i < rank; ++i)
                    for (int j = i + 1; j < rank; ++j)
                        lam_roots.push_back(roots[i] + roots[j]);
                CHECK(lambda2(e).total_chern() == product_of_roots(lam_roots, t));
            }

            // twist: every root shifts by b
            long long b = root(rng);
            std::vector<long long> tw_roots;
            for (long long a : roots) tw_roots.push_back(a + b);
            CHECK(twist_line(e, Rational(b) * t).total_chern() ==
                  product_of_roots(tw_roots, t));
        }
    }

    // twists of higher-rank bundles (the suite twists the rank-6 symmetric
    // square); keep the top Chern class inside the ambient truncation
    for (int rank = 5; rank <= 6; ++rank) {
        CAPTURE(rank);
        std::uniform_int_distribution<long long> small(-4, 4);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<long long> roots;
            for (int i = 0; i < rank; ++i) roots.push_back(small(rng));
            KClass e = sum_of_lines(roots, ring, t);
            long long b = small(rng);
            std::vector<long long> tw_roots;
            for (long long a : roots) tw_roots.push_back(a + b);
            CHECK(twist_line(e, Rational(b) * t).total_chern() ==
                  product_of_roots(tw_roots, t));
        }
    }
}

TEST_CASE("Whitney product on random line sums") {
    auto ring = freering();
    Polynomial t = gp("t");
    std::mt19937 rng(99);
    std::uniform_int_distribution<long long> root(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long long> ra{root(rng), root(rng)};
        std::vector<long long> rb{root(rng), root(rng), root(rng)};
        KClass a = sum_of_lines(ra, ring, t);
        KClass b = sum_of_lines(rb, ring, t);
        CHECK((a + b).total_chern() == (a.total_chern() * b.total_chern()).truncate(12));
    }
}

TEST_CASE("Segre classes") {
    SUBCASE("s(M*) = 1 - 3H + 4H^2 - 2H^3 + H^4 on P^4") {
        auto p4 = projective_space(4, "H");
        Polynomial h = gp("H");
        KClass mstar =
            dual(8 * trivial(1, p4) - 5 * line(h, p4) + line(Rational(2) * h, p4));
        Polynomial s = segre(mstar);
        Polynomial expected = Polynomial::constant(1) - Rational(3) * h +
                              Rational(4) * h.pow(2) - Rational(2) * h.pow(3) +
                              h.pow(4);
        CHECK(s == expected);
        CHECK(p4->normal_form(s * mstar.total_chern()) == Polynomial::constant(1));
    }
    SUBCASE("s(O(1)) on P^2") {
        auto p2 = projective_space(2, "H", "P2");
        Polynomial h = gp("H");
        CHECK(segre(line(h, p2)) ==
              Polynomial::constant(1) - h + h.pow(2));
    }
    SUBCASE("s(trivial) = 1") {
        auto p2 = projective_space(2, "H", "P2");
        CHECK(segre(trivial(3, p2)) == Polynomial::constant(1));
    }
    SUBCASE("segre * chern = 1 on random classes") {
        auto ring = freering();
        Polynomial t = gp("t");
        std::mt19937 rng(31);
        std::uniform_int_distribution<long long> root(-5, 5);
        for (int trial = 0; trial < 100; ++trial) {
            KClass e = sum_of_lines({root(rng), root(rng), root(rng)}, ring, t);
            CHECK((segre(e) * e.total_chern()).truncate(12) == Polynomial::constant(1));
        }
    }
}
