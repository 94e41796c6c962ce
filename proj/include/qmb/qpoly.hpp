#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmb/rational.hpp"

namespace qmb {

/* Dense univariate polynomial over Rational, coefficients stored in
 * ascending degree with no trailing zeros (the zero polynomial holds an
 * empty vector and reports degree -1). */
class QPoly {
public:
    QPoly() = default;
    QPoly(const Rational& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    QPoly(long c) : QPoly(Rational(c)) {}
    explicit QPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

    static QPoly monomial(int deg, const Rational& coeff = Rational(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rational& leading() const;
    Rational coeff(int deg) const {
        if (deg < 0 || deg >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(deg)];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    QPoly operator-() const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }
    QPoly scaled(const Rational& c) const;

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    /* Euclidean division; throws on zero divisor. */
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const;
    /* Division known to be exact; throws if a remainder shows up. */
    QPoly divexact(const QPoly& d) const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;

    QPoly make_monic() const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/* Monic gcd via the Euclidean algorithm; gcd(0,0) = 0. */
QPoly poly_gcd(QPoly a, QPoly b);

}  // namespace qmb
