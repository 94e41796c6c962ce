#include "qmb/qfun.hpp"

#include <stdexcept>

#include "qmb/qufun.hpp"

namespace qmb {

QFun::QFun(QPoly n, QPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("QFun: zero denominator");
    canonicalize();
}

void QFun::canonicalize() {
    if (num_.is_zero()) {
        den_ = QPoly(Rational(1));
        return;
    }
    QPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divexact(g);
        den_ = den_.divexact(g);
    }
    Rational lead = den_.leading();
    if (!lead.is_one()) {
        Rational inv = lead.inv();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

QFun QFun::q_power(long k) {
    QFun r;
    if (k >= 0) {
        r.num_ = QPoly::monomial(static_cast<int>(k));
        r.den_ = QPoly(Rational(1));
    } else {
        r.num_ = QPoly(Rational(1));
        r.den_ = QPoly::monomial(static_cast<int>(-k));
    }
    return r;
}

QFun QFun::parse(const std::string& s) {
    QUFun v = QUFun::parse(s);
    if (v.degree_u() > 0) throw std::invalid_argument("QFun::parse: unexpected symbol l");
    return v.coeff_u(0);
}

QFun QFun::operator-() const {
    QFun r(*this);
    r.num_ = -r.num_;
    return r;
}

QFun& QFun::operator+=(const QFun& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    QPoly g = poly_gcd(den_, o.den_);
    QPoly da = den_.divexact(g);
    QPoly db = o.den_.divexact(g);
    num_ = num_ * db + o.num_ * da;
    den_ = den_ * db;
    canonicalize();
    return *this;
}

QFun& QFun::operator-=(const QFun& o) { return *this += -o; }

QFun operator*(const QFun& a, const QFun& b) {
    if (a.is_zero() || b.is_zero()) return QFun();
    /* Cross-reduce first so the factors of the product are already
     * pairwise coprime and no gcd on large products is needed. */
    QPoly g1 = poly_gcd(a.num_, b.den_);
    QPoly g2 = poly_gcd(b.num_, a.den_);
    QFun r;
    r.num_ = a.num_.divexact(g1) * b.num_.divexact(g2);
    r.den_ = a.den_.divexact(g2) * b.den_.divexact(g1);
    Rational lead = r.den_.leading();
    if (!lead.is_one()) {
        Rational inv = lead.inv();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

QFun QFun::inv() const {
    if (is_zero()) throw std::domain_error("QFun: inverse of zero");
    QFun r;
    r.num_ = den_;
    r.den_ = num_;
    Rational lead = r.den_.leading();
    if (!lead.is_one()) {
        Rational inv = lead.inv();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

QFun operator/(const QFun& a, const QFun& b) { return a * b.inv(); }

Rational QFun::evaluate(const Rational& q) const {
    Rational d = den_.eval(q);
    if (d.is_zero()) throw std::domain_error("QFun::evaluate: pole at q=" + q.str());
    return num_.eval(q) / d;
}

double QFun::evaluate(double q) const {
    return num_.eval(q) / den_.eval(q);
}

std::string QFun::str() const {
    return QUFun(*this).str();
}

}  // namespace qmb
