#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qmb/scalar_mode.hpp"

namespace qmb {

/* ScalarCtx<S> adapts one coefficient type S to the handful of scalar
 * constructions the algebraic layers need: constants, powers of q and
 * u, and the inverses (1 - q^k)^{-1} that series recursions divide by.
 * Division never appears in generic code except through those inverses,
 * so every S here can stay a ring as far as the callers care.
 *
 * Instantiations:
 *   QFun      formal q; u = q^(2*lambda) for an integer lambda, if set
 *   QUFun     formal q and formal u
 *   Rational  exact numeric q and u
 *   double    floating-point q and u
 */
template <class S>
struct ScalarCtx;

template <>
struct ScalarCtx<QFun> {
    using scalar = QFun;
    std::optional<long> lambda; /* u specializes to q^(2*lambda) */

    ScalarCtx() = default;
    explicit ScalarCtx(long lam) : lambda(lam) {}

    QFun zero() const { return QFun(); }
    QFun one() const { return QFun(1); }
    QFun integer(long n) const { return QFun(n); }
    QFun from_rational(const Rational& r) const { return QFun(r); }
    QFun from_qfun(const QFun& f) const { return f; }
    QFun q_pow(long k) const { return QFun::q_power(k); }
    QFun u_pow(long k) const {
        if (!lambda)
            throw std::logic_error("ScalarCtx<QFun>: u requested but lambda is unset");
        return QFun::q_power(2 * *lambda * k);
    }
    QFun inv_one_minus_q_pow(long k) const {
        if (k == 0) throw std::domain_error("ScalarCtx: 1 - q^0 is not invertible");
        return (one() - q_pow(k)).inv();
    }
    bool is_zero(const QFun& s) const { return s.is_zero(); }
};

template <>
struct ScalarCtx<QUFun> {
    using scalar = QUFun;

    QUFun zero() const { return QUFun(); }
    QUFun one() const { return QUFun(1); }
    QUFun integer(long n) const { return QUFun(n); }
    QUFun from_rational(const Rational& r) const { return QUFun(r); }
    QUFun from_qfun(const QFun& f) const { return QUFun(f); }
    QUFun q_pow(long k) const { return QUFun(QFun::q_power(k)); }
    QUFun u_pow(long k) const { return QUFun::u_power(static_cast<int>(k)); }
    QUFun inv_one_minus_q_pow(long k) const {
        if (k == 0) throw std::domain_error("ScalarCtx: 1 - q^0 is not invertible");
        return QUFun((QFun(1) - QFun::q_power(k)).inv());
    }
    bool is_zero(const QUFun& s) const { return s.is_zero(); }
};

template <>
struct ScalarCtx<Rational> {
    using scalar = Rational;
    Rational q, u;

    ScalarCtx(const Rational& q_val, const Rational& u_val) : q(q_val), u(u_val) {
        if (q.sign() <= 0 || q >= Rational(1))
            throw std::invalid_argument("ScalarCtx<Rational>: q must satisfy 0 < q < 1");
    }

    /* Classical-limit entry point for tests (q = 1 and similar): skips
     * the 0 < q < 1 validation the public constructor enforces. */
    static ScalarCtx unchecked(const Rational& q_val, const Rational& u_val) {
        ScalarCtx c(Rational(1, 2), u_val);
        c.q = q_val;
        return c;
    }

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational integer(long n) const { return Rational(n); }
    Rational from_rational(const Rational& r) const { return r; }
    Rational from_qfun(const QFun& f) const { return f.evaluate(q); }
    Rational q_pow(long k) const { return q.pow(k); }
    Rational u_pow(long k) const { return u.pow(k); }
    Rational inv_one_minus_q_pow(long k) const {
        if (k == 0) throw std::domain_error("ScalarCtx: 1 - q^0 is not invertible");
        return (Rational(1) - q.pow(k)).inv();
    }
    bool is_zero(const Rational& s) const { return s.is_zero(); }
};

template <>
struct ScalarCtx<double> {
    using scalar = double;
    double q = 0.0, u = 0.0;

    ScalarCtx(double q_val, double u_val) : q(q_val), u(u_val) {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("ScalarCtx<double>: q must satisfy 0 < q < 1");
    }

    double zero() const { return 0.0; }
    double one() const { return 1.0; }
    double integer(long n) const { return static_cast<double>(n); }
    double from_rational(const Rational& r) const { return r.to_double(); }
    double from_qfun(const QFun& f) const { return f.evaluate(q); }
    double q_pow(long k) const { return std::pow(q, static_cast<double>(k)); }
    double u_pow(long k) const { return std::pow(u, static_cast<double>(k)); }
    double inv_one_minus_q_pow(long k) const {
        if (k == 0) throw std::domain_error("ScalarCtx: 1 - q^0 is not invertible");
        return 1.0 / (1.0 - q_pow(k));
    }
    bool is_zero(double s) const { return s == 0.0; }
};

}  // namespace qmb
