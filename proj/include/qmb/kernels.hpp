#pragma once

#include "qmb/algebra.hpp"
#include "qmb/matrix.hpp"

namespace qmb {

/* Monomial of the bigraded kernel algebra: a holomorphic left leg
 * (multiplied in the opposite order) tensored with an antiholomorphic
 * right leg.  Bidegree is (sum left.E, -sum right.F). */
struct KernelMonomial {
    NormalMonomial left, right;

    friend auto operator<=>(const KernelMonomial&, const KernelMonomial&) = default;
};

template <class S>
struct KernelElement {
    Shape shape;
    std::map<KernelMonomial, S> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const KernelElement& a, const KernelElement& b) {
        return a.shape == b.shape && a.terms == b.terms;
    }
};

/* Degree-truncated series of diagonal bidegree: terms[d] is the
 * homogeneous component of bidegree (d, -d), for d = 0..D. */
template <class S>
struct KernelSeries {
    Shape shape;
    int D = 0;
    std::vector<KernelElement<S>> terms;
};

/* Kernel-algebra operations for one shape and one coefficient regime.
 * Owns the underlying *-algebra (and its rewrite memo), so confine one
 * instance to one thread. */
template <class S>
class KernelAlgebra {
public:
    KernelAlgebra(const Shape& sh, const ScalarCtx<S>& ctx,
                  RedexStrategy strategy = RedexStrategy::leftmost)
        : alg_(sh, ctx, strategy) {}

    const Shape& shape() const { return alg_.shape(); }
    const ScalarCtx<S>& ctx() const { return alg_.ctx(); }
    const Algebra<S>& algebra() const { return alg_; }

    KernelElement<S> zero() const { return {shape(), {}}; }
    KernelElement<S> one() const {
        KernelElement<S> k{shape(), {}};
        k.terms.emplace(KernelMonomial{unit_monomial(shape()), unit_monomial(shape())},
                        ctx().one());
        return k;
    }

    /* Tensor product of a holomorphic and an antiholomorphic polynomial. */
    KernelElement<S> from_legs(const PolElement<S>& left, const PolElement<S>& right) const {
        KernelElement<S> out{shape(), {}};
        for (const auto& [lm, lc] : left.terms) {
            if (!lm.is_holomorphic())
                throw std::invalid_argument("from_legs: left leg must be holomorphic");
            for (const auto& [rm, rc] : right.terms) {
                for (auto e : rm.E)
                    if (e != 0)
                        throw std::invalid_argument(
                            "from_legs: right leg must be antiholomorphic");
                accumulate(out, {lm, rm}, lc * rc);
            }
        }
        return out;
    }

    KernelElement<S> add(const KernelElement<S>& a, const KernelElement<S>& b) const {
        KernelElement<S> out = a;
        for (const auto& [mono, c] : b.terms) accumulate(out, mono, c);
        return out;
    }

    KernelElement<S> scale(const KernelElement<S>& a, const S& c) const {
        KernelElement<S> out{shape(), {}};
        if (ctx().is_zero(c)) return out;
        for (const auto& [mono, v] : a.terms) accumulate(out, mono, v * c);
        return out;
    }

    /* Product: left legs in the opposite algebra, right legs straight. */
    KernelElement<S> kernel_mul(const KernelElement<S>& x, const KernelElement<S>& y) const {
        KernelElement<S> out{shape(), {}};
        for (const auto& [xm, xc] : x.terms)
            for (const auto& [ym, yc] : y.terms) {
                Word lw = canonical_word(shape(), ym.left);
                Word xw = canonical_word(shape(), xm.left);
                lw.insert(lw.end(), xw.begin(), xw.end());
                PolElement<S> lp = alg_.normal_form(lw);
                Word rw = canonical_word(shape(), xm.right);
                Word yw = canonical_word(shape(), ym.right);
                rw.insert(rw.end(), yw.begin(), yw.end());
                PolElement<S> rp = alg_.normal_form(rw);
                S c = xc * yc;
                for (const auto& [lm, lc] : lp.terms)
                    for (const auto& [rm, rc] : rp.terms) accumulate(out, {lm, rm}, lc * rc * c);
            }
        return out;
    }

    /* k_i: sum over all i x i minors of minor (x) minor^*. */
    const KernelElement<S>& poly_kernel(int i) const {
        if (i < 1 || i > shape().m)
            throw std::invalid_argument("poly_kernel: need 1 <= i <= m");
        auto it = kcache_.find(i);
        if (it == kcache_.end()) {
            KernelElement<S> k = zero();
            std::vector<int> rows, cols;
            Algebra<S>::for_each_subset(shape().m, i, rows, [&](const std::vector<int>& J1) {
                Algebra<S>::for_each_subset(shape().n, i, cols, [&](const std::vector<int>& J2) {
                    PolElement<S> mnr = alg_.q_minor(J1, J2);
                    k = add(k, from_legs(mnr, alg_.star(mnr)));
                });
            });
            it = kcache_.emplace(i, std::move(k)).first;
        }
        return it->second;
    }

    /* Legs swapped and starred; fixes every k_i and every component of
     * the weighted kernel. */
    KernelElement<S> conjugate(const KernelElement<S>& k) const {
        KernelElement<S> out = zero();
        for (const auto& [mono, c] : k.terms) {
            PolElement<S> new_left = alg_.star(alg_.monomial(mono.right));
            PolElement<S> new_right = alg_.star(alg_.monomial(mono.left));
            out = add(out, scale(from_legs(new_left, new_right), c));
        }
        return out;
    }

    /* One of the two infinite products, expanded through the functional
     * equation G(t) = F(t) G(q^2 t): only divisions by 1 - q^{2d}
     * occur.  In numerator mode each k_i carries the extra u^i. */
    KernelSeries<S> product_series(int D, bool numerator) const {
        require_degree(D);
        KernelSeries<S> s{shape(), D, {}};
        s.terms.reserve(static_cast<size_t>(D) + 1);
        s.terms.push_back(one());
        for (int d = 1; d <= D; ++d) {
            KernelElement<S> acc = zero();
            for (int i = 1; i <= std::min(shape().m, d); ++i) {
                S c = ctx().q_pow(2L * (d - i));
                if (numerator) c = c * ctx().u_pow(i);
                if (i % 2 == 1) c = -c;
                acc = add(acc, scale(kernel_mul(poly_kernel(i),
                                                s.terms[static_cast<size_t>(d - i)]),
                                     c));
            }
            s.terms.push_back(scale(acc, ctx().inv_one_minus_q_pow(2L * d)));
        }
        return s;
    }

    /* Inverse of the plain product, from F(t) H(t) = H(q^2 t). */
    KernelSeries<S> inverse_series(int D) const {
        require_degree(D);
        KernelSeries<S> s{shape(), D, {}};
        s.terms.reserve(static_cast<size_t>(D) + 1);
        s.terms.push_back(one());
        for (int d = 1; d <= D; ++d) {
            KernelElement<S> acc = zero();
            for (int i = 1; i <= std::min(shape().m, d); ++i) {
                S c = ctx().one();
                if (i % 2 == 0) c = -c;
                acc = add(acc, scale(kernel_mul(poly_kernel(i),
                                                s.terms[static_cast<size_t>(d - i)]),
                                     c));
            }
            s.terms.push_back(scale(acc, ctx().inv_one_minus_q_pow(2L * d)));
        }
        return s;
    }

    /* Degreewise product of two truncated series. */
    KernelSeries<S> series_mul(const KernelSeries<S>& a, const KernelSeries<S>& b) const {
        int D = std::min(a.D, b.D);
        KernelSeries<S> s{shape(), D, {}};
        s.terms.reserve(static_cast<size_t>(D) + 1);
        for (int d = 0; d <= D; ++d) {
            KernelElement<S> acc = zero();
            for (int e = 0; e <= d; ++e)
                acc = add(acc, kernel_mul(a.terms[static_cast<size_t>(e)],
                                          b.terms[static_cast<size_t>(d - e)]));
            s.terms.push_back(std::move(acc));
        }
        return s;
    }

    /* The weighted kernel: numerator product times inverse of the plain
     * product.  The scalar context supplies u. */
    KernelSeries<S> bergman_kernel(int D) const {
        return series_mul(product_series(D, /*numerator=*/true), inverse_series(D));
    }

    /* The unweighted kernel: the finite product over j = 0..m+n-1 of
     * (1 + sum_i (-q^{2j})^i k_i)^{-1}, each factor inverted by its own
     * triangular recursion, then all factors convolved. */
    KernelSeries<S> ordinary_bergman_kernel(int D) const {
        require_degree(D);
        KernelSeries<S> out{shape(), D, {}};
        for (int j = 0; j < shape().m + shape().n; ++j) {
            KernelSeries<S> x{shape(), D, {}};
            x.terms.reserve(static_cast<size_t>(D) + 1);
            x.terms.push_back(one());
            for (int d = 1; d <= D; ++d) {
                KernelElement<S> acc = zero();
                for (int i = 1; i <= std::min(shape().m, d); ++i) {
                    S c = ctx().q_pow(2L * j * i);
                    if (i % 2 == 0) c = -c; /* minus (-q^{2j})^i */
                    acc = add(acc, scale(kernel_mul(poly_kernel(i),
                                                    x.terms[static_cast<size_t>(d - i)]),
                                         c));
                }
                x.terms.push_back(std::move(acc));
            }
            out = (j == 0) ? std::move(x) : series_mul(out, x);
        }
        return out;
    }

    /* Degree-d component in the bases z^E (rows) and (z^{E'})^* (columns):
     * the right legs are rewritten from the zeta-monomial basis into the
     * starred-monomial basis.  Row/column order follows
     * holomorphic_basis(d); chosen so that C_d times the weighted Gram
     * matrix of degree d is the identity. */
    Matrix<S> coefficient_matrix(const KernelSeries<S>& s, int d) const {
        if (d < 0 || d > s.D)
            throw std::invalid_argument("coefficient_matrix: degree out of range");
        std::vector<NormalMonomial> basis = holomorphic_basis(shape(), d);
        size_t nb = basis.size();
        const Matrix<QFun>& tinv = star_basis_inverse(d, basis);
        std::map<NormalMonomial, size_t> findex;
        for (size_t i = 0; i < nb; ++i) {
            NormalMonomial f(shape());
            f.F = basis[i].E;
            findex.emplace(f, i);
        }
        std::map<NormalMonomial, size_t> eindex;
        for (size_t i = 0; i < nb; ++i) eindex.emplace(basis[i], i);

        Matrix<S> c(nb, nb, ctx().zero());
        for (const auto& [mono, v] : s.terms[static_cast<size_t>(d)].terms) {
            size_t r = eindex.at(mono.left);
            size_t fcol = findex.at(mono.right);
            for (size_t ep = 0; ep < nb; ++ep) {
                const QFun& t = tinv.at(ep, fcol);
                if (t.is_zero()) continue;
                c.at(r, ep) += v * ctx().from_qfun(t);
            }
        }
        return c;
    }

private:
    void require_degree(int D) const {
        if (D < 0) throw std::invalid_argument("kernel series: negative truncation degree");
    }

    void accumulate(KernelElement<S>& k, const KernelMonomial& mono, const S& c) const {
        if (ctx().is_zero(c)) return;
        auto it = k.terms.find(mono);
        if (it == k.terms.end()) {
            k.terms.emplace(mono, c);
        } else {
            it->second += c;
            if (ctx().is_zero(it->second)) k.terms.erase(it);
        }
    }

    /* T[F][E'] = coefficient of zeta^F in star(z^{E'}) depends only on
     * q, so the change of basis is computed once over exact q-functions
     * and embedded into S.  Returns T^{-1}, cached per degree. */
    const Matrix<QFun>& star_basis_inverse(int d, const std::vector<NormalMonomial>& basis) const {
        auto it = tcache_.find(d);
        if (it != tcache_.end()) return it->second;
        size_t nb = basis.size();
        std::map<NormalMonomial, size_t> findex;
        for (size_t i = 0; i < nb; ++i) {
            NormalMonomial f(shape());
            f.F = basis[i].E;
            findex.emplace(f, i);
        }
        ScalarCtx<QFun> qctx;
        Algebra<QFun> qalg(shape(), qctx);
        Matrix<QFun> t(nb, nb, QFun());
        for (size_t col = 0; col < nb; ++col) {
            PolElement<QFun> st = qalg.star(qalg.monomial(basis[col]));
            for (const auto& [mono, coeff] : st.terms) t.at(findex.at(mono), col) = coeff;
        }
        return tcache_.emplace(d, field_inverse(std::move(t), QFun(1), QFun())).first->second;
    }

    Algebra<S> alg_;
    mutable std::map<int, KernelElement<S>> kcache_;
    mutable std::map<int, Matrix<QFun>> tcache_;
};

}  // namespace qmb
