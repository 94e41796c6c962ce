#include <random>

#include "doctest.h"
#include "qmb/algebra.hpp"

using namespace qmb;

namespace {

using AlgQ = Algebra<QFun>;

Generator g(int alpha, int a, bool starred = false) {
    return {static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(a), starred};
}

NormalMonomial mono_of(const Shape& sh, const Word& w) {
    return monomial_from_canonical(sh, w);
}

QFun coeff_of(const PolElement<QFun>& p, const NormalMonomial& m) {
    auto it = p.terms.find(m);
    return it == p.terms.end() ? QFun() : it->second;
}

const QFun Q1 = QFun::q_power(1);

}  // namespace

TEST_CASE("normal form of two-letter words matches the defining relations") {
    SUBCASE("mixed relation at m=n=1") {
        AlgQ alg(Shape(1, 1), {});
        PolElement<QFun> p = alg.normal_form({g(1, 1, true), g(1, 1, false)});
        CHECK(p.terms.size() == 2);
        CHECK(coeff_of(p, mono_of(alg.shape(), {g(1, 1), g(1, 1, true)})) == Q1 * Q1);
        CHECK(coeff_of(p, mono_of(alg.shape(), {})) == QFun(1) - Q1 * Q1);
    }
    SUBCASE("commuting case a>b, alpha<beta") {
        AlgQ alg(Shape(2, 2), {});
        PolElement<QFun> p = alg.normal_form({g(1, 2), g(2, 1)});
        CHECK(p.terms.size() == 1);
        CHECK(coeff_of(p, mono_of(alg.shape(), {g(2, 1), g(1, 2)})) == QFun(1));
    }
    SUBCASE("cross-term case a>b, alpha>beta") {
        AlgQ alg(Shape(2, 2), {});
        PolElement<QFun> p = alg.normal_form({g(2, 2), g(1, 1)});
        CHECK(p.terms.size() == 2);
        CHECK(coeff_of(p, mono_of(alg.shape(), {g(1, 1), g(2, 2)})) == QFun(1));
        CHECK(coeff_of(p, mono_of(alg.shape(), {g(2, 1), g(1, 2)})) ==
              -(Q1 - QFun::q_power(-1)));
    }
    SUBCASE("same column") {
        AlgQ alg(Shape(2, 2), {});
        PolElement<QFun> p = alg.normal_form({g(2, 1), g(1, 1)});
        CHECK(p.terms.size() == 1);
        CHECK(coeff_of(p, mono_of(alg.shape(), {g(1, 1), g(2, 1)})) == QFun::q_power(-1));
    }
    SUBCASE("idempotence on canonical words") {
        AlgQ alg(Shape(2, 3), {});
        Word w = {g(1, 1), g(2, 1), g(1, 3), g(1, 2, true), g(2, 2, true)};
        /* not canonical as written: sort first */
        Word canon = {g(1, 1), g(2, 1), g(1, 2), g(1, 2, true), g(2, 2, true)};
        PolElement<QFun> p = alg.normal_form(canon);
        CHECK(p.terms.size() == 1);
        CHECK(coeff_of(p, mono_of(alg.shape(), canon)) == QFun(1));
        (void)w;
    }
}

TEST_CASE("multiplication is unital and matches the mixed relation") {
    AlgQ alg(Shape(1, 1), {});
    PolElement<QFun> z = alg.generator(1, 1, false);
    PolElement<QFun> zs = alg.generator(1, 1, true);

    CHECK(alg.multiply(alg.one(), zs) == zs);
    CHECK(alg.multiply(z, alg.one()) == z);

    PolElement<QFun> p = alg.multiply(zs, z);
    CHECK(coeff_of(p, mono_of(alg.shape(), {g(1, 1), g(1, 1, true)})) == Q1 * Q1);
    CHECK(coeff_of(p, mono_of(alg.shape(), {})) == QFun(1) - Q1 * Q1);

    PolElement<QFun> r = alg.multiply(z, zs);
    CHECK(r.terms.size() == 1);
    CHECK(coeff_of(r, mono_of(alg.shape(), {g(1, 1), g(1, 1, true)})) == QFun(1));

    CHECK_THROWS_AS(alg.multiply(z, AlgQ(Shape(1, 2), {}).one()), std::invalid_argument);
}

TEST_CASE("star is the involution") {
    AlgQ alg(Shape(2, 2), {});
    PolElement<QFun> z11 = alg.generator(1, 1);
    CHECK(alg.star(z11) == alg.generator(1, 1, true));

    PolElement<QFun> prod = alg.multiply(z11, alg.generator(2, 1));
    PolElement<QFun> starred = alg.star(prod);
    CHECK(starred.terms.size() == 1);
    CHECK(coeff_of(starred, mono_of(alg.shape(), {g(1, 1, true), g(2, 1, true)})) == Q1);

    PolElement<QFun> c = alg.scale(alg.one(), Q1);
    CHECK(alg.star(c) == c);

    /* starred 2x2 minor re-sorts with a q^{-1} coefficient */
    AlgQ alg22(Shape(2, 2), {});
    PolElement<QFun> sm = alg22.star(alg22.q_minor({1, 2}, {1, 2}));
    CHECK(sm.terms.size() == 2);
    CHECK(coeff_of(sm, mono_of(alg22.shape(), {g(1, 1, true), g(2, 2, true)})) == QFun(1));
    CHECK(coeff_of(sm, mono_of(alg22.shape(), {g(2, 1, true), g(1, 2, true)})) ==
          -QFun::q_power(-1));
}

TEST_CASE("quantum minors") {
    SUBCASE("k=1 is a generator") {
        AlgQ alg(Shape(2, 2), {});
        CHECK(alg.q_minor({2}, {1}) == alg.generator(2, 1));
    }
    SUBCASE("full 2x2 minor") {
        AlgQ alg(Shape(2, 2), {});
        PolElement<QFun> d = alg.q_minor({1, 2}, {1, 2});
        CHECK(d.terms.size() == 2);
        CHECK(coeff_of(d, mono_of(alg.shape(), {g(1, 1), g(2, 2)})) == QFun(1));
        CHECK(coeff_of(d, mono_of(alg.shape(), {g(2, 1), g(1, 2)})) == -Q1);
    }
    SUBCASE("rectangular column choice") {
        AlgQ alg(Shape(2, 3), {});
        PolElement<QFun> d = alg.q_minor({1, 2}, {1, 3});
        CHECK(d.terms.size() == 2);
        CHECK(coeff_of(d, mono_of(alg.shape(), {g(1, 1), g(2, 3)})) == QFun(1));
        CHECK(coeff_of(d, mono_of(alg.shape(), {g(2, 1), g(1, 3)})) == -Q1);
    }
    SUBCASE("full-row minors have k! signed monomials") {
        AlgQ alg(Shape(3, 3), {});
        PolElement<QFun> d = alg.q_minor({1, 2, 3}, {1, 2, 3});
        CHECK(d.terms.size() == 6);
        for (const auto& [mono, c] : d.terms) {
            /* coefficient must be (-q)^{l(s)}: a signed monomial */
            bool plus = c.num().degree() >= 0 && !c.num().is_zero() &&
                        (c.num().leading() == Rational(1) || c.num().leading() == Rational(-1));
            CHECK(plus);
            CHECK(c.den() == QPoly(Rational(1)));
        }
    }
    SUBCASE("index validation") {
        AlgQ alg(Shape(2, 3), {});
        CHECK_THROWS_AS(alg.q_minor({1, 1}, {1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(alg.q_minor({1, 3}, {1, 2}), std::invalid_argument);
        CHECK_THROWS_AS(alg.q_minor({1}, {4}), std::invalid_argument);
        CHECK_THROWS_AS(alg.q_minor({1, 2}, {2}), std::invalid_argument);
    }
}

TEST_CASE("the q-determinant element y") {
    SUBCASE("m=n=1") {
        AlgQ alg(Shape(1, 1), {});
        PolElement<QFun> y = alg.y_element();
        CHECK(y.terms.size() == 2);
        CHECK(coeff_of(y, mono_of(alg.shape(), {})) == QFun(1));
        CHECK(coeff_of(y, mono_of(alg.shape(), {g(1, 1), g(1, 1, true)})) == QFun(-1));
    }
    SUBCASE("m=1,n=2") {
        AlgQ alg(Shape(1, 2), {});
        PolElement<QFun> y = alg.y_element();
        CHECK(y.terms.size() == 3);
        CHECK(coeff_of(y, mono_of(alg.shape(), {g(1, 1), g(1, 1, true)})) == QFun(-1));
        CHECK(coeff_of(y, mono_of(alg.shape(), {g(1, 2), g(1, 2, true)})) == QFun(-1));
    }
    SUBCASE("m=n=2 grading and symmetry") {
        AlgQ alg(Shape(2, 2), {});
        PolElement<QFun> y = alg.y_element();
        CHECK(alg.star(y) == y);
        auto degs = alg.z_degrees(y);
        CHECK(degs == std::set<std::pair<long, long>>{{0, 0}, {0, 2}, {0, 4}});
        /* no contraction terms leak into the unit coefficient */
        CHECK(coeff_of(y, mono_of(alg.shape(), {})) == QFun(1));
    }
}

TEST_CASE("degree data") {
    AlgQ alg(Shape(1, 1), {});
    PolElement<QFun> z = alg.generator(1, 1);
    CHECK(alg.z_degrees(z) == std::set<std::pair<long, long>>{{1, 1}});
    CHECK(alg.z_degrees(alg.multiply(z, alg.star(z))) ==
          std::set<std::pair<long, long>>{{0, 2}});
    CHECK(alg.z_degrees(alg.y_element()) ==
          std::set<std::pair<long, long>>{{0, 0}, {0, 2}});
}

namespace {

Word random_word(std::mt19937& rng, const Shape& sh, int max_len) {
    std::uniform_int_distribution<int> len_d(0, max_len);
    std::uniform_int_distribution<int> row_d(1, sh.m);
    std::uniform_int_distribution<int> col_d(1, sh.n);
    std::uniform_int_distribution<int> star_d(0, 1);
    Word w;
    int len = len_d(rng);
    for (int i = 0; i < len; ++i)
        w.push_back(g(row_d(rng), col_d(rng), star_d(rng) == 1));
    return w;
}

struct Grading {
    long zdeg;
    std::vector<long> rowE, rowF, colE, colF;
    friend bool operator==(const Grading&, const Grading&) = default;
};

Grading word_grading(const Shape& sh, const Word& w) {
    Grading gr{0, std::vector<long>(static_cast<size_t>(sh.m), 0),
               std::vector<long>(static_cast<size_t>(sh.m), 0),
               std::vector<long>(static_cast<size_t>(sh.n), 0),
               std::vector<long>(static_cast<size_t>(sh.n), 0)};
    for (const auto& gen : w) {
        if (gen.starred) {
            --gr.zdeg;
            ++gr.rowF[static_cast<size_t>(gen.alpha - 1)];
            ++gr.colF[static_cast<size_t>(gen.a - 1)];
        } else {
            ++gr.zdeg;
            ++gr.rowE[static_cast<size_t>(gen.alpha - 1)];
            ++gr.colE[static_cast<size_t>(gen.a - 1)];
        }
    }
    return gr;
}

Grading mono_grading(const Shape& sh, const NormalMonomial& m) {
    return {m.z_degree(), row_sums(sh, m.E), row_sums(sh, m.F), col_sums(sh, m.E),
            col_sums(sh, m.F)};
}

}  // namespace

TEST_CASE("confluence: leftmost and rightmost strategies agree") {
    std::mt19937 rng(20240817);
    for (int mm = 1; mm <= 3; ++mm)
        for (int nn = mm; nn <= 3; ++nn) {
            Shape sh(mm, nn);
            AlgQ left(sh, {}, RedexStrategy::leftmost);
            AlgQ right(sh, {}, RedexStrategy::rightmost);
            for (int t = 0; t < 30; ++t) {
                Word w = random_word(rng, sh, 8);
                CHECK(left.normal_form(w) == right.normal_form(w));
            }
        }
}

TEST_CASE("normal form preserves the multigrading") {
    std::mt19937 rng(7151);
    Shape sh(2, 3);
    AlgQ alg(sh, {});
    for (int t = 0; t < 60; ++t) {
        Word w = random_word(rng, sh, 8);
        Grading expect = word_grading(sh, w);
        /* the delta term of the mixed relation removes matched pairs */
        for (const auto& [mono, c] : alg.normal_form(w).terms) {
            Grading got = mono_grading(sh, mono);
            CHECK(got.zdeg == expect.zdeg);
            for (int r = 0; r < sh.m; ++r)
                CHECK(got.rowE[static_cast<size_t>(r)] - got.rowF[static_cast<size_t>(r)] ==
                      expect.rowE[static_cast<size_t>(r)] - expect.rowF[static_cast<size_t>(r)]);
            for (int cix = 0; cix < sh.n; ++cix)
                CHECK(got.colE[static_cast<size_t>(cix)] - got.colF[static_cast<size_t>(cix)] ==
                      expect.colE[static_cast<size_t>(cix)] - expect.colF[static_cast<size_t>(cix)]);
        }
    }
}

TEST_CASE("star is involutive and antimultiplicative on random elements") {
    std::mt19937 rng(98321);
    for (auto [mm, nn] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
        Shape sh(mm, nn);
        AlgQ alg(sh, {});
        for (int t = 0; t < 25; ++t) {
            PolElement<QFun> a = alg.normal_form(random_word(rng, sh, 5));
            PolElement<QFun> b = alg.normal_form(random_word(rng, sh, 5));
            CHECK(alg.star(alg.star(a)) == a);
            CHECK(alg.star(alg.multiply(a, b)) == alg.multiply(alg.star(b), alg.star(a)));
        }
    }
}

TEST_CASE("multiplication is associative on random elements") {
    std::mt19937 rng(5150);
    Shape sh(2, 2);
    AlgQ alg(sh, {});
    for (int t = 0; t < 10; ++t) {
        PolElement<QFun> a = alg.normal_form(random_word(rng, sh, 4));
        PolElement<QFun> b = alg.normal_form(random_word(rng, sh, 4));
        PolElement<QFun> c = alg.normal_form(random_word(rng, sh, 4));
        CHECK(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)));
    }
}

TEST_CASE("q=1 specialization is commutative") {
    ScalarCtx<Rational> ctx = ScalarCtx<Rational>::unchecked(Rational(1), Rational(1));
    Shape sh(2, 2);
    Algebra<Rational> alg(sh, ctx);
    for (int s1 = 0; s1 < sh.slots(); ++s1)
        for (int s2 = 0; s2 < sh.slots(); ++s2)
            for (int st1 = 0; st1 < 2; ++st1)
                for (int st2 = 0; st2 < 2; ++st2) {
                    PolElement<Rational> a =
                        alg.generator(sh.slot_row(s1), sh.slot_col(s1), st1 == 1);
                    PolElement<Rational> b =
                        alg.generator(sh.slot_row(s2), sh.slot_col(s2), st2 == 1);
                    CHECK(alg.sub(alg.multiply(a, b), alg.multiply(b, a)).is_zero());
                }
}
