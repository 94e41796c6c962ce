#pragma once

#include "qmb/algebra.hpp"

namespace qmb {

/* Commutative polynomial in the variables z_{alpha a} and zbar_{alpha a}
 * with rational coefficients; the exponent vector stores the z block
 * first, then the zbar block, slot-wise.  Reference arithmetic for the
 * q -> 1 comparisons — deliberately independent of the rewrite engine. */
class CommutativePoly {
public:
    using Exponents = std::vector<std::uint32_t>;

    explicit CommutativePoly(const Shape& sh) : sh_(sh) {}

    static CommutativePoly constant(const Shape& sh, const Rational& c) {
        CommutativePoly p(sh);
        if (!c.is_zero()) p.t_.emplace(Exponents(2 * static_cast<size_t>(sh.slots()), 0), c);
        return p;
    }
    static CommutativePoly variable(const Shape& sh, int alpha, int a, bool bar) {
        CommutativePoly p(sh);
        Exponents e(2 * static_cast<size_t>(sh.slots()), 0);
        e[static_cast<size_t>(sh.slot(alpha, a)) + (bar ? static_cast<size_t>(sh.slots()) : 0)] = 1;
        p.t_.emplace(std::move(e), Rational(1));
        return p;
    }

    const Shape& shape() const { return sh_; }
    const std::map<Exponents, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    CommutativePoly operator+(const CommutativePoly& o) const {
        CommutativePoly out = *this;
        for (const auto& [e, c] : o.t_) out.add_term(e, c);
        return out;
    }
    CommutativePoly operator-(const CommutativePoly& o) const {
        CommutativePoly out = *this;
        for (const auto& [e, c] : o.t_) out.add_term(e, -c);
        return out;
    }
    CommutativePoly operator*(const CommutativePoly& o) const {
        CommutativePoly out(sh_);
        for (const auto& [e1, c1] : t_)
            for (const auto& [e2, c2] : o.t_) {
                Exponents e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }

    friend bool operator==(const CommutativePoly& a, const CommutativePoly& b) {
        return a.sh_ == b.sh_ && a.t_ == b.t_;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

private:
    Shape sh_;
    std::map<Exponents, Rational> t_;
};

/* det(1 - z z*) as the signed sum over pairs of equal minors,
 * 1 + sum_k (-1)^k sum_{J', J''} minor_z minor_zbar. */
CommutativePoly classical_det_expansion(const Shape& sh);

/* The same determinant computed directly: the Leibniz expansion of the
 * m x m matrix delta_{alpha beta} - sum_a z_{alpha a} zbar_{beta a}. */
CommutativePoly classical_det_direct(const Shape& sh);

/* Image of a normally ordered element under z -> z, z* -> zbar. */
CommutativePoly commutative_image(const PolElement<Rational>& p);

/* Degree-i coefficient of the one-variable weighted kernel series:
 * prod_{r=0}^{i-1}(1 - u q^{2r}) / prod_{r=1}^{i}(1 - q^{2r}). */
QUFun q_binomial_coefficient_series(int i);

/* binomial(lambda + i - 1, i) = prod_{r=1}^{i}(lambda + r - 1)/r, the
 * degree-i Taylor coefficient of (1 - x)^{-lambda}. */
Rational classical_kernel_coefficient(const Rational& lambda, int i);

/* <w1 f0, w2 f0> by exhaustive word rewriting that applies only the
 * literal mixed two-letter exchange rule; no normal ordering, no PBW
 * basis.  Hard caps: word length <= 5, m, n <= 2. */
QFun brute_force_inner(const Shape& sh, const Word& w1, const Word& w2);

}  // namespace qmb
