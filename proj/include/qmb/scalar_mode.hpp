#pragma once

#include <stdexcept>

#include "qmb/qufun.hpp"

namespace qmb {

enum class ScalarKind {
    exact_q,       /* formal q, u specialized through an integer parameter */
    exact_qu,      /* formal q and formal u */
    numeric_exact, /* rational values for q and u */
    numeric_float, /* double values for q and u */
};

/* Evaluation regime for scalar coefficients.  Numeric modes carry the
 * values of q (deformation parameter, 0 < q < 1) and u. */
struct ScalarMode {
    ScalarKind kind = ScalarKind::exact_q;
    Rational q, u;
    double qf = 0.0, uf = 0.0;

    static ScalarMode exact_q() { return {ScalarKind::exact_q, Rational(0), Rational(0), 0, 0}; }
    static ScalarMode exact_qu() { return {ScalarKind::exact_qu, Rational(0), Rational(0), 0, 0}; }
    static ScalarMode numeric_exact(const Rational& q, const Rational& u) {
        if (q.sign() <= 0 || q >= Rational(1))
            throw std::invalid_argument("ScalarMode: q must satisfy 0 < q < 1");
        return {ScalarKind::numeric_exact, q, u, 0, 0};
    }
    static ScalarMode numeric_float(double q, double u) {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("ScalarMode: q must satisfy 0 < q < 1");
        return {ScalarKind::numeric_float, Rational(0), Rational(0), q, u};
    }
};

/* Evaluate an exact scalar under a numeric mode. */
inline Rational evaluate_exact(const QUFun& s, const ScalarMode& mode) {
    if (mode.kind != ScalarKind::numeric_exact)
        throw std::invalid_argument("evaluate_exact requires a NumericExact mode");
    return s.evaluate(mode.q, mode.u);
}

inline double evaluate_float(const QUFun& s, const ScalarMode& mode) {
    switch (mode.kind) {
        case ScalarKind::numeric_exact: return s.evaluate(mode.q, mode.u).to_double();
        case ScalarKind::numeric_float: return s.evaluate(mode.qf, mode.uf);
        default:
            throw std::invalid_argument("evaluate_float requires a numeric mode");
    }
}

}  // namespace qmb
