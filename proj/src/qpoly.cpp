#include "qmb/qpoly.hpp"

#include <stdexcept>

namespace qmb {

QPoly QPoly::monomial(int deg, const Rational& coeff) {
    if (deg < 0) throw std::invalid_argument("QPoly::monomial: negative degree");
    if (coeff.is_zero()) return QPoly();
    std::vector<Rational> c(static_cast<size_t>(deg) + 1, Rational(0));
    c.back() = coeff;
    return QPoly(std::move(c));
}

const Rational& QPoly::leading() const {
    if (c_.empty()) throw std::domain_error("QPoly::leading: zero polynomial");
    return c_.back();
}

QPoly QPoly::operator-() const {
    QPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return QPoly(std::move(c));
}

QPoly QPoly::scaled(const Rational& c) const {
    if (c.is_zero()) return QPoly();
    QPoly r(*this);
    for (auto& x : r.c_) x *= c;
    return r;
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("QPoly::divrem: division by zero");
    QPoly rem(*this);
    if (rem.degree() < d.degree()) return {QPoly(), rem};
    std::vector<Rational> q(static_cast<size_t>(rem.degree() - d.degree()) + 1, Rational(0));
    Rational lead_inv = d.leading().inv();
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int k = rem.degree() - d.degree();
        Rational f = rem.leading() * lead_inv;
        q[static_cast<size_t>(k)] = f;
        rem -= QPoly::monomial(k, f) * d;
    }
    return {QPoly(std::move(q)), rem};
}

QPoly QPoly::divexact(const QPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw std::domain_error("QPoly::divexact: inexact division");
    return q;
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

double QPoly::eval(double x) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
    return acc;
}

QPoly QPoly::make_monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
}

QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

}  // namespace qmb
