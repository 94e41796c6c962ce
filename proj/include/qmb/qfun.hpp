#pragma once

#include <string>

#include "qmb/qpoly.hpp"

namespace qmb {

/* Element of the field of rational functions in q over the rationals.
 * Canonical form: numerator and denominator coprime, denominator monic,
 * zero represented as 0/1.  Negative powers of q therefore live in the
 * denominator; see q_power. */
class QFun {
public:
    QFun() : num_(), den_(Rational(1)) {}
    QFun(long c) : num_(Rational(c)), den_(Rational(1)) {}
    QFun(const Rational& c) : num_(c), den_(Rational(1)) {}
    QFun(const QPoly& n) : num_(n), den_(Rational(1)) {}
    QFun(QPoly n, QPoly d);

    static QFun q_power(long k);
    static QFun parse(const std::string& s);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == QPoly(Rational(1)); }
    bool is_polynomial() const { return den_.is_constant(); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    QFun operator-() const;
    QFun& operator+=(const QFun& o);
    QFun& operator-=(const QFun& o);
    friend QFun operator+(QFun a, const QFun& b) { return a += b; }
    friend QFun operator-(QFun a, const QFun& b) { return a -= b; }
    friend QFun operator*(const QFun& a, const QFun& b);
    friend QFun operator/(const QFun& a, const QFun& b);
    QFun& operator*=(const QFun& o) { return *this = *this * o; }
    QFun& operator/=(const QFun& o) { return *this = *this / o; }
    QFun inv() const;

    friend bool operator==(const QFun& a, const QFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QFun& a, const QFun& b) { return !(a == b); }

    /* Substitute a rational value for q; throws std::domain_error if the
     * denominator vanishes there. */
    Rational evaluate(const Rational& q) const;
    double evaluate(double q) const;

    std::string str() const;

private:
    void canonicalize();
    QPoly num_, den_;
};

}  // namespace qmb
