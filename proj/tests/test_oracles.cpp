#include <random>

#include "doctest.h"
#include "qmb/fock.hpp"
#include "qmb/oracles.hpp"

using namespace qmb;

namespace {

CommutativePoly cvar(const Shape& sh, int alpha, int a, bool bar) {
    return CommutativePoly::variable(sh, alpha, a, bar);
}

Generator g(int alpha, int a, bool starred = false) {
    return Generator{static_cast<std::uint8_t>(alpha), static_cast<std::uint8_t>(a), starred};
}

Word random_holomorphic_word(std::mt19937& rng, const Shape& sh, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> row(1, sh.m), col(1, sh.n);
    Word w;
    int l = len(rng);
    for (int i = 0; i < l; ++i) w.push_back(g(row(rng), col(rng)));
    return w;
}

template <class S>
HVector<S> vector_from(const Algebra<S>& alg, const Word& holomorphic_word) {
    PolElement<S> p = alg.normal_form(holomorphic_word);
    HVector<S> v{alg.shape(), {}};
    for (const auto& [mono, c] : p.terms)
        if (mono.is_holomorphic()) v.terms.emplace(mono, c);
    return v;
}

}  // namespace

TEST_CASE("classical determinant expansion") {
    Shape s11(1, 1);
    CommutativePoly one11 = CommutativePoly::constant(s11, Rational(1));
    CHECK(classical_det_expansion(s11) ==
          one11 - cvar(s11, 1, 1, false) * cvar(s11, 1, 1, true));

    Shape s12(1, 2);
    CommutativePoly one12 = CommutativePoly::constant(s12, Rational(1));
    CHECK(classical_det_expansion(s12) ==
          one12 - cvar(s12, 1, 1, false) * cvar(s12, 1, 1, true) -
              cvar(s12, 1, 2, false) * cvar(s12, 1, 2, true));

    Shape s22(2, 2);
    CommutativePoly expect = CommutativePoly::constant(s22, Rational(1));
    for (int alpha = 1; alpha <= 2; ++alpha)
        for (int a = 1; a <= 2; ++a)
            expect = expect - cvar(s22, alpha, a, false) * cvar(s22, alpha, a, true);
    CommutativePoly mz = cvar(s22, 1, 1, false) * cvar(s22, 2, 2, false) -
                         cvar(s22, 1, 2, false) * cvar(s22, 2, 1, false);
    CommutativePoly mzb = cvar(s22, 1, 1, true) * cvar(s22, 2, 2, true) -
                          cvar(s22, 1, 2, true) * cvar(s22, 2, 1, true);
    CHECK(classical_det_expansion(s22) == expect + mz * mzb);

    /* the minor-sum expansion agrees with the direct Leibniz determinant */
    for (Shape sh : {Shape(1, 1), Shape(1, 2), Shape(2, 2), Shape(2, 3)})
        CHECK(classical_det_expansion(sh) == classical_det_direct(sh));
}

TEST_CASE("q-binomial series coefficients") {
    CHECK(q_binomial_coefficient_series(0) == QUFun(1));

    QFun inv2 = (QFun(1) - QFun::q_power(2)).inv();
    QUFun i1 = (QUFun(1) - QUFun::u_power(1)) * QUFun(inv2);
    CHECK(q_binomial_coefficient_series(1) == i1);
    CHECK(q_binomial_coefficient_series(1).str() == "(1-l)/(1-q^2)");

    QFun inv4 = (QFun(1) - QFun::q_power(4)).inv();
    QUFun i2 = (QUFun(1) - QUFun::u_power(1)) *
               (QUFun(1) - QUFun::u_power(1, QFun::q_power(2))) * QUFun(inv2 * inv4);
    CHECK(q_binomial_coefficient_series(2) == i2);

    CHECK_THROWS_AS(q_binomial_coefficient_series(-1), std::invalid_argument);
}

TEST_CASE("classical kernel coefficients") {
    CHECK(classical_kernel_coefficient(Rational(2), 3) == Rational(4));
    CHECK(classical_kernel_coefficient(Rational(3), 2) == Rational(6));
    CHECK(classical_kernel_coefficient(Rational(2), 0) == Rational(1));
    for (int i = 0; i <= 4; ++i)
        CHECK(classical_kernel_coefficient(Rational(1), i) == Rational(1));
    /* non-integer lambda: (5/2)(7/2)/2 */
    CHECK(classical_kernel_coefficient(Rational(5, 2), 2) == Rational(35, 8));
    CHECK_THROWS_AS(classical_kernel_coefficient(Rational(2), -1), std::invalid_argument);
}

TEST_CASE("brute-force inner products") {
    Shape s11(1, 1);
    CHECK(brute_force_inner(s11, {}, {}) == QFun(1));
    CHECK(brute_force_inner(s11, {g(1, 1)}, {g(1, 1)}) == QFun(1) - QFun::q_power(2));

    Shape s12(1, 2);
    CHECK(brute_force_inner(s12, {g(1, 1)}, {g(1, 2)}).is_zero());

    /* <z^k, z^k> = prod_{r<=k} (1 - q^{2r}) */
    QFun expect(1);
    Word w;
    for (int k = 1; k <= 4; ++k) {
        expect = expect * (QFun(1) - QFun::q_power(2 * k));
        w.push_back(g(1, 1));
        CHECK(brute_force_inner(s11, w, w) == expect);
    }

    CHECK_THROWS_AS(brute_force_inner(Shape(2, 3), {}, {}), std::invalid_argument);
    Word too_long;
    for (int i = 0; i < 6; ++i) too_long.push_back(g(1, 1));
    CHECK_THROWS_AS(brute_force_inner(s11, too_long, {}), std::invalid_argument);

    /* agreement with the representation-theoretic inner product */
    std::mt19937 rng(77001);
    ScalarCtx<QFun> ctx;
    for (Shape sh : {Shape(1, 2), Shape(2, 2)}) {
        Algebra<QFun> alg(sh, ctx);
        int max_len = sh.m == 1 ? 4 : 3;
        for (int trial = 0; trial < 25; ++trial) {
            Word w1 = random_holomorphic_word(rng, sh, max_len);
            Word w2 = random_holomorphic_word(rng, sh, max_len);
            CHECK(brute_force_inner(sh, w1, w2) ==
                  inner(alg, vector_from(alg, w1), vector_from(alg, w2)));
        }
    }
}

TEST_CASE("q = 1 limit of the determinant element") {
    ScalarCtx<Rational> classical = ScalarCtx<Rational>::unchecked(Rational(1), Rational(1));
    for (Shape sh : {Shape(1, 1), Shape(1, 2), Shape(2, 2)}) {
        Algebra<Rational> alg(sh, classical);
        CHECK(commutative_image(alg.y_element()) == classical_det_expansion(sh));
    }
}
