#include "doctest.h"
#include "qmb/scalar_ctx.hpp"

using namespace qmb;

namespace {

QPoly one_minus_q_pow(int k) {
    QPoly p(Rational(1));
    p -= QPoly::monomial(k);
    return p;
}

}  // namespace

TEST_CASE("rational arithmetic and canonical form") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a - a == Rational(0));
    CHECK((a / b) == Rational(3, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(-7, 4).str() == "-7/4");
    CHECK(Rational(8).str() == "8");
    CHECK(Rational::parse("-7/4") == Rational(-7, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational(1, 2).pow(-3) == Rational(8));
    CHECK(Rational(2, 3).pow(2) == Rational(4, 9));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
    CHECK(Rational(-5, 7).abs() == Rational(5, 7));
    CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("polynomial division, gcd, evaluation") {
    QPoly p = one_minus_q_pow(4);
    QPoly d = one_minus_q_pow(2);
    auto [quot, rem] = p.divrem(d);
    CHECK(rem.is_zero());
    QPoly expect(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    CHECK(quot == expect);

    QPoly a = QPoly::monomial(3) - QPoly(Rational(1));
    QPoly b = QPoly::monomial(1) - QPoly(Rational(1));
    CHECK(poly_gcd(a, b) == b.make_monic());

    QPoly f(std::vector<Rational>{Rational(2), Rational(0), Rational(-3)});
    CHECK(f.eval(Rational(1, 2)) == Rational(2) - Rational(3, 4));
    CHECK(f.eval(0.5) == doctest::Approx(1.25));

    auto [q2, r2] = a.divrem(f);
    CHECK(q2 * f + r2 == a);
    CHECK_THROWS_AS(a.divexact(f), std::domain_error);
    CHECK_THROWS_AS(a.divrem(QPoly()), std::domain_error);
}

TEST_CASE("rational functions reduce to canonical form") {
    QFun f(one_minus_q_pow(4), one_minus_q_pow(2));
    CHECK(f == QFun(QPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)})));
    CHECK(f.is_polynomial());
    CHECK(f.str() == "1+q^2");

    CHECK(QFun::q_power(1) * QFun::q_power(-1) == QFun(1));

    QFun g = QFun::q_power(1) - QFun::q_power(-1);
    CHECK(g.num() == QPoly(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)}));
    CHECK(g.den() == QPoly::monomial(1));

    /* denominator is kept monic, numerator carries the scale */
    QFun h(QPoly(Rational(3)), QPoly(std::vector<Rational>{Rational(2), Rational(4)}));
    CHECK(h.den().leading() == Rational(1));
    CHECK(h.evaluate(Rational(1, 2)) == Rational(3) / Rational(4));

    CHECK_THROWS_AS(QFun(QPoly(Rational(1)), QPoly()), std::domain_error);
    CHECK_THROWS_AS(QFun().inv(), std::domain_error);
}

TEST_CASE("rational function evaluation") {
    QFun f(QPoly(Rational(1)), one_minus_q_pow(2));
    CHECK(f.evaluate(Rational(1, 2)) == Rational(4, 3));
    CHECK(f.evaluate(0.5) == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS(f.evaluate(Rational(1)), std::domain_error);

    /* q^(2(lambda-1)) (1-q^2)/(1-q^(2 lambda)) at lambda=2, q=1/2 */
    QFun g = QFun::q_power(2) * QFun(one_minus_q_pow(2), one_minus_q_pow(4));
    CHECK(g.evaluate(Rational(1, 2)) == Rational(1, 5));
}

TEST_CASE("two-variable scalars and u substitution") {
    QUFun s = QUFun(1) - QUFun::u_power(1, QFun::q_power(-2));
    CHECK(s.evaluate(Rational(1, 2), Rational(1, 64)) == Rational(15, 16));
    CHECK(s.evaluate(0.5, 1.0 / 64.0) == doctest::Approx(15.0 / 16.0));

    QUFun t = QUFun(1) - QUFun::u_power(1);
    CHECK(t.substitute_u(QFun::q_power(2)) == QFun(1) - QFun::q_power(2));
    CHECK(t.degree_u() == 1);
    CHECK((t * t).coeff_u(1) == QFun(-2));

    ScalarMode nm = ScalarMode::numeric_exact(Rational(1, 2), Rational(1, 64));
    CHECK(evaluate_exact(s, nm) == Rational(15, 16));
    CHECK(evaluate_float(s, nm) == doctest::Approx(15.0 / 16.0));
    CHECK_THROWS_AS(ScalarMode::numeric_exact(Rational(2), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(ScalarMode::numeric_float(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("string round trips") {
    const char* cases[] = {
        "0",
        "1",
        "-1",
        "q",
        "1+q^2",
        "(1-l)/(1-q^2)",
        "(-1+q^2)/q",
        "(2+3*q^5-l-l^2)/(2-q^2)",
        "(q^2*l)/(1-q^2)",
        "(1-2*l+l^2)/(1-q^2-q^4+q^6)",
    };
    for (const char* c : cases) {
        QUFun v = QUFun::parse(c);
        CHECK(v.str() == c);
        CHECK(QUFun::parse(v.str()) == v);
    }

    /* printing puts terms in ascending (l, q) order and scales away
     * rational coefficients */
    QFun h(QPoly(Rational(1, 2)), QPoly(std::vector<Rational>{Rational(1), Rational(1, 3)}));
    CHECK(QUFun::parse(QUFun(QFun(h)).str()) == QUFun(h));

    CHECK(QUFun::parse(" ( 1 - l ) / ( 1 - q ^ 2 ) ") == QUFun::parse("(1-l)/(1-q^2)"));
    CHECK(QUFun::parse("q^-1") == QUFun(QFun::q_power(-1)));
    CHECK_THROWS_AS(QUFun::parse("1+"), std::invalid_argument);
    CHECK_THROWS_AS(QUFun::parse("(1/(1-l)"), std::invalid_argument);
    CHECK_THROWS_AS(QFun::parse("1-l"), std::invalid_argument);
}

TEST_CASE("scalar contexts expose the same constants") {
    ScalarCtx<QFun> cq(3);
    CHECK(cq.u_pow(2) == QFun::q_power(12));
    CHECK(cq.inv_one_minus_q_pow(2) == QFun(QPoly(Rational(1)), one_minus_q_pow(2)));
    CHECK_THROWS_AS(ScalarCtx<QFun>().u_pow(1), std::logic_error);

    ScalarCtx<QUFun> cu;
    CHECK(cu.u_pow(2) == QUFun::u_power(2));

    ScalarCtx<Rational> cn(Rational(1, 2), Rational(1, 4));
    CHECK(cn.q_pow(-2) == Rational(4));
    CHECK(cn.u_pow(2) == Rational(1, 16));
    CHECK(cn.inv_one_minus_q_pow(2) == Rational(4, 3));

    ScalarCtx<double> cf(0.5, 0.25);
    CHECK(cf.q_pow(2) == doctest::Approx(0.25));
    CHECK(cf.inv_one_minus_q_pow(2) == doctest::Approx(4.0 / 3.0));

    /* a context value evaluated numerically matches the numeric context */
    QFun formal = ScalarCtx<QFun>().inv_one_minus_q_pow(2);
    CHECK(formal.evaluate(Rational(1, 2)) == cn.inv_one_minus_q_pow(2));
}
