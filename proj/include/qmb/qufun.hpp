#pragma once

#include <string>
#include <vector>

#include "qmb/qfun.hpp"

namespace qmb {

/* Polynomial in a second formal variable u with QFun coefficients,
 * ascending in u with no trailing zeros.  u is never inverted; only q
 * may appear in denominators.  In serialized form u prints as "l". */
class QUFun {
public:
    QUFun() = default;
    QUFun(long c) : QUFun(QFun(c)) {}
    QUFun(const Rational& c) : QUFun(QFun(c)) {}
    QUFun(const QFun& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit QUFun(std::vector<QFun> ascending) : c_(std::move(ascending)) { trim(); }

    static QUFun u_power(int k, const QFun& coeff = QFun(1));
    static QUFun parse(const std::string& s);

    int degree_u() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    QFun coeff_u(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return QFun();
        return c_[static_cast<size_t>(k)];
    }

    QUFun operator-() const;
    QUFun& operator+=(const QUFun& o);
    QUFun& operator-=(const QUFun& o);
    friend QUFun operator+(QUFun a, const QUFun& b) { return a += b; }
    friend QUFun operator-(QUFun a, const QUFun& b) { return a -= b; }
    friend QUFun operator*(const QUFun& a, const QUFun& b);
    QUFun& operator*=(const QUFun& o) { return *this = *this * o; }
    QUFun scaled(const QFun& c) const;

    friend bool operator==(const QUFun& a, const QUFun& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QUFun& a, const QUFun& b) { return !(a == b); }

    /* Substitute a rational function of q for u. */
    QFun substitute_u(const QFun& u) const;

    Rational evaluate(const Rational& q, const Rational& u) const;
    double evaluate(double q, double u) const;

    std::string str() const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<QFun> c_;
};

}  // namespace qmb
