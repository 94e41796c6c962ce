#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "qmb/algebra.hpp"
#include "qmb/matrix.hpp"

namespace qmb {

/* Vector in the Fock space H = (holomorphic polynomials)·f0; the
 * trailing vacuum factor is implicit, so only F = 0 monomials appear. */
template <class S>
struct HVector {
    Shape shape;
    std::map<NormalMonomial, S> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const HVector& a, const HVector& b) {
        return a.shape == b.shape && a.terms == b.terms;
    }
};

template <class S>
HVector<S> vacuum(const Algebra<S>& alg) {
    HVector<S> v{alg.shape(), {}};
    v.terms.emplace(unit_monomial(alg.shape()), alg.ctx().one());
    return v;
}

template <class S>
HVector<S> basis_vector(const Algebra<S>& alg, const NormalMonomial& mono) {
    if (!mono.is_holomorphic())
        throw std::invalid_argument("basis_vector: monomial has starred part");
    HVector<S> v{alg.shape(), {}};
    v.terms.emplace(mono, alg.ctx().one());
    return v;
}

/* T(f)v: normal-order f·p and drop every monomial whose starred part
 * survives (it annihilates the vacuum). */
template <class S>
HVector<S> act(const Algebra<S>& alg, const PolElement<S>& f, const HVector<S>& v) {
    if (!(f.shape == alg.shape()) || !(v.shape == alg.shape()))
        throw std::invalid_argument("act: shape mismatch");
    HVector<S> out{alg.shape(), {}};
    for (const auto& [mf, cf] : f.terms) {
        Word wf = canonical_word(alg.shape(), mf);
        for (const auto& [mv, cv] : v.terms) {
            Word w = wf;
            Word wv = canonical_word(alg.shape(), mv);
            w.insert(w.end(), wv.begin(), wv.end());
            S c = cf * cv;
            PolElement<S> nf = alg.normal_form(w);
            for (const auto& [mono, coeff] : nf.terms) {
                if (!mono.is_holomorphic()) continue;
                auto it = out.terms.find(mono);
                if (it == out.terms.end()) {
                    S val = coeff * c;
                    if (!alg.ctx().is_zero(val)) out.terms.emplace(mono, std::move(val));
                } else {
                    it->second += coeff * c;
                    if (alg.ctx().is_zero(it->second)) out.terms.erase(it);
                }
            }
        }
    }
    return out;
}

template <class S>
S vacuum_coeff(const HVector<S>& v) {
    for (const auto& [mono, c] : v.terms)
        if (mono.is_unit()) return c;
    return S();
}

/* T(f0): rank-one projector onto the vacuum. */
template <class S>
HVector<S> act_vacuum_projector(const HVector<S>& v) {
    HVector<S> out{v.shape, {}};
    for (const auto& [mono, c] : v.terms)
        if (mono.is_unit()) {
            out.terms.emplace(mono, c);
            break;
        }
    return out;
}

/* Canonical (unweighted) scalar product: vacuum coefficient of
 * star(p1)·p2 acting on the vacuum. */
template <class S>
S inner(const Algebra<S>& alg, const HVector<S>& v1, const HVector<S>& v2) {
    if (!(v1.shape == v2.shape)) throw std::invalid_argument("inner: shape mismatch");
    PolElement<S> p1{alg.shape(), v1.terms};
    return vacuum_coeff(act(alg, alg.star(p1), v2));
}

/* Eigenvalue of Gamma(rho-check) on z^E f0.  The generator weight is
 * m+n+1-alpha-a: largest in the top-left corner, 1 at (m, n).  (The
 * naive rho-pairing m+a-alpha labels the modes upside down: it has the
 * same multiset, so the C(lambda) normalization cannot see the
 * difference, but the degree-1 Gram/kernel crosscheck at shape (1,2)
 * forces this orientation.) */
inline long weight_exponent(const Shape& sh, const NormalMonomial& mono) {
    if (!mono.is_holomorphic())
        throw std::invalid_argument("weight_exponent: monomial has starred part");
    long w = 0;
    for (int s = 0; s < sh.slots(); ++s)
        w += static_cast<long>(mono.E[static_cast<size_t>(s)]) *
             (sh.m + sh.n + 1 - sh.slot_row(s) - sh.slot_col(s));
    return w;
}

/* ------------------------------------------------------------------ */
/* Degree blocks                                                       */
/* ------------------------------------------------------------------ */

/* One finite piece of the Fock space: an ordered holomorphic basis
 * with the action of y, the canonical Gram matrix, and the weight
 * exponents on it. */
template <class S>
struct DegreeBlock {
    int degree = 0;
    std::vector<NormalMonomial> basis;
    Matrix<S> ty;    /* [r][c] = coefficient of basis[r] in y·basis[c] */
    Matrix<S> gram0; /* canonical scalar product */
    std::vector<long> weights;
};

template <class S>
DegreeBlock<S> block_from_basis(const Algebra<S>& alg, int degree,
                                std::vector<NormalMonomial> basis, bool with_gram = true) {
    DegreeBlock<S> b;
    b.degree = degree;
    b.basis = std::move(basis);
    size_t n = b.basis.size();
    std::map<NormalMonomial, size_t> index;
    for (size_t i = 0; i < n; ++i) index.emplace(b.basis[i], i);
    b.ty = Matrix<S>(n, n, alg.ctx().zero());
    for (size_t c = 0; c < n; ++c) {
        HVector<S> img = act(alg, alg.y_element(), basis_vector(alg, b.basis[c]));
        for (const auto& [mono, coeff] : img.terms) {
            auto it = index.find(mono);
            if (it == index.end())
                throw std::logic_error("degree_block: y image left the block");
            b.ty.at(it->second, c) = coeff;
        }
    }
    if (with_gram) {
        b.gram0 = Matrix<S>(n, n, alg.ctx().zero());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                S v = inner(alg, basis_vector(alg, b.basis[i]), basis_vector(alg, b.basis[j]));
                b.gram0.at(i, j) = v;
                b.gram0.at(j, i) = v;
            }
    }
    b.weights.reserve(n);
    for (const auto& mono : b.basis) b.weights.push_back(weight_exponent(alg.shape(), mono));
    return b;
}

template <class S>
DegreeBlock<S> degree_block(const Algebra<S>& alg, int d, bool with_gram = true) {
    if (d < 0) throw std::invalid_argument("degree_block: negative degree");
    return block_from_basis(alg, d, holomorphic_basis(alg.shape(), d), with_gram);
}

template <class S>
DegreeBlock<S> degree_block_class(const Algebra<S>& alg, const std::vector<long>& rho,
                                  const std::vector<long>& kappa, bool with_gram = true) {
    long d = 0;
    for (long r : rho) d += r;
    return block_from_basis(alg, static_cast<int>(d), class_basis(alg.shape(), rho, kappa),
                            with_gram);
}

/* Exact integer power of the block action of y. */
template <class S>
Matrix<S> ty_power_block(const DegreeBlock<S>& block, long lambda, const ScalarCtx<S>& ctx) {
    return block.ty.pow(lambda, ctx.one(), ctx.zero());
}

inline DegreeBlock<double> block_to_double(const DegreeBlock<Rational>& b) {
    DegreeBlock<double> out;
    out.degree = b.degree;
    out.basis = b.basis;
    out.weights = b.weights;
    out.ty = Matrix<double>(b.ty.rows(), b.ty.cols(), 0.0);
    for (size_t i = 0; i < b.ty.rows(); ++i)
        for (size_t j = 0; j < b.ty.cols(); ++j) out.ty.at(i, j) = b.ty.at(i, j).to_double();
    out.gram0 = Matrix<double>(b.gram0.rows(), b.gram0.cols(), 0.0);
    for (size_t i = 0; i < b.gram0.rows(); ++i)
        for (size_t j = 0; j < b.gram0.cols(); ++j)
            out.gram0.at(i, j) = b.gram0.at(i, j).to_double();
    return out;
}

/* Real (possibly non-integer) power of Ty through the generalized
 * symmetric eigenproblem: Ty is self-adjoint for the canonical Gram
 * matrix S = L L^T, so M = L^T Ty L^{-T} is symmetric and
 * Ty^lambda = L^{-T} Q diag(mu^lambda) Q^T L^T. */
inline Matrix<double> ty_power_block_float(const DegreeBlock<double>& block, double lambda) {
    size_t n = block.ty.rows();
    if (n == 0) return {};
    Matrix<double> l = cholesky_lower(block.gram0);
    Matrix<double> li = solve_lower(l, Matrix<double>::identity(n, 1.0, 0.0));
    Matrix<double> m = l.transpose() * block.ty * li.transpose();
    Matrix<double> v;
    std::vector<double> eig = jacobi_eigensymm(m, v);
    Matrix<double> d(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (eig[i] <= 0.0)
            throw std::domain_error("ty_power_block_float: nonpositive eigenvalue");
        d.at(i, i) = std::pow(eig[i], lambda);
    }
    return li.transpose() * v * d * v.transpose() * l.transpose();
}

/* ------------------------------------------------------------------ */
/* Integrals                                                           */
/* ------------------------------------------------------------------ */

/* Invariant integral of the finite-rank function p_left · f0 · p_right:
 * the trace is a finite exactly-computable sum over the monomials of
 * p_left·f0. */
template <class S>
S invariant_integral(const Algebra<S>& alg, const PolElement<S>& p_left,
                     const PolElement<S>& p_right) {
    HVector<S> lv = act(alg, p_left, vacuum(alg));
    S total = alg.ctx().zero();
    for (const auto& [mono, c] : lv.terms) {
        HVector<S> img = act(alg, p_right, basis_vector(alg, mono));
        auto it = img.terms.find(unit_monomial(alg.shape()));
        if (it == img.terms.end()) continue;
        total += c * it->second * alg.ctx().q_pow(-2 * weight_exponent(alg.shape(), mono));
    }
    return total;
}

/* C(lambda) = prod_{j<n, k<m} (1 - u q^{2(1-m-n+j+k)}). */
template <class S>
S c_lambda(const ScalarCtx<S>& ctx, const Shape& sh) {
    S acc = ctx.one();
    for (int j = 0; j < sh.n; ++j)
        for (int k = 0; k < sh.m; ++k)
            acc = acc * (ctx.one() - ctx.u_pow(1) * ctx.q_pow(2L * (1 - sh.m - sh.n + j + k)));
    return acc;
}

namespace detail {
inline bool abs_less(const Rational& x, const Rational& tol) { return x.abs() < tol; }
inline bool abs_less(double x, const Rational& tol) { return std::fabs(x) < tol.to_double(); }
}  // namespace detail

template <class S>
struct IntegralResult {
    S value{};
    S last_delta{};
    int degree_used = 0;
    bool stabilized = false;
};

template <class S>
struct GramResult {
    std::vector<NormalMonomial> basis;
    Matrix<S> matrix;
    S max_delta{};
    bool stabilized = true;
};

/* Scalar context with u locked to q^(2*lambda). */
inline ScalarCtx<Rational> weighted_ctx(const Rational& q, long lambda) {
    return ScalarCtx<Rational>(q, q.pow(2 * lambda));
}
inline ScalarCtx<double> weighted_ctx(double q, long lambda) {
    return ScalarCtx<double>(q, std::pow(q, 2.0 * static_cast<double>(lambda)));
}

/* Weighted integral against d nu_lambda = C(lambda) tr(T(f) T(y)^lambda
 * q^{-2 Gamma}); blockwise over multidegree classes, truncated when two
 * consecutive degree contributions fall below the tolerance.  Numeric
 * coefficient types only (Rational or double), integer lambda. */
template <class S>
class WeightedIntegrator {
public:
    WeightedIntegrator(const Shape& sh, const S& q, long lambda, Rational tolerance,
                       int max_degree = 64)
        : alg_(sh, weighted_ctx(q, lambda)), lambda_(lambda), tol_(std::move(tolerance)),
          max_degree_(max_degree) {
        if (lambda <= sh.m + sh.n - 1)
            throw std::invalid_argument("WeightedIntegrator: need lambda > m+n-1");
        c_ = c_lambda(alg_.ctx(), sh);
    }

    const Algebra<S>& algebra() const { return alg_; }
    long lambda() const { return lambda_; }
    const S& normalization() const { return c_; }

    /* Truncated trace for a Z-degree-0 polynomial integrand. */
    IntegralResult<S> integrate(const PolElement<S>& f) {
        PolElement<S> diag = diagonal_part(f);
        IntegralResult<S> res;
        if (diag.terms.empty()) {
            res.stabilized = true;
            return res;
        }
        bool f_is_unit = (diag.terms.size() == 1 && diag.terms.begin()->first.is_unit());
        S unit_coeff = f_is_unit ? diag.terms.begin()->second : alg_.ctx().zero();
        int floor = 0;
        for (const auto& [mono, c] : diag.terms) {
            long fdeg = 0;
            for (auto e : mono.F) fdeg += e;
            floor = std::max(floor, static_cast<int>(fdeg));
        }
        bool prev_small = false;
        for (int d = 0; d <= max_degree_; ++d) {
            S contrib = alg_.ctx().zero();
            for_each_class(d, [&](const ClassBlock& cb) {
                if (f_is_unit) {
                    contrib += cb.a.trace() * unit_coeff;
                    return;
                }
                for (size_t k = 0; k < cb.basis.size(); ++k) {
                    HVector<S> img = act(alg_, diag, basis_vector(alg_, cb.basis[k]));
                    for (const auto& [mono, c] : img.terms) {
                        auto it = cb.index.find(mono);
                        if (it == cb.index.end()) continue;
                        contrib += cb.a.at(k, it->second) * c;
                    }
                }
            });
            contrib = contrib * c_;
            res.value += contrib;
            res.last_delta = contrib;
            res.degree_used = d;
            bool small = detail::abs_less(contrib, tol_);
            if (d > floor && small && prev_small) {
                res.stabilized = true;
                return res;
            }
            prev_small = small;
        }
        res.stabilized = false;
        return res;
    }

    /* Exact value for the finite-rank function p_left f0 p_right. */
    S integrate_finite(const PolElement<S>& p_left, const PolElement<S>& p_right) {
        HVector<S> lv = act(alg_, p_left, vacuum(alg_));
        S total = alg_.ctx().zero();
        for (const auto& [mono, c] : lv.terms) {
            /* T(y)^lambda q^{-2 Gamma} e, then project through p_right */
            HVector<S> v = basis_vector(alg_, mono);
            for (long i = 0; i < lambda_; ++i) v = act(alg_, alg_.y_element(), v);
            HVector<S> img = act(alg_, p_right, v);
            auto it = img.terms.find(unit_monomial(alg_.shape()));
            if (it == img.terms.end()) continue;
            total += c * it->second * alg_.ctx().q_pow(-2 * weight_exponent(alg_.shape(), mono));
        }
        return total * c_;
    }

    GramResult<S> gram(int degree) {
        GramResult<S> out;
        out.basis = holomorphic_basis(alg_.shape(), degree);
        size_t n = out.basis.size();
        out.matrix = Matrix<S>(n, n, alg_.ctx().zero());
        out.max_delta = alg_.ctx().zero();
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i; j < n; ++j) {
                if (row_sums(alg_.shape(), out.basis[i].E) != row_sums(alg_.shape(), out.basis[j].E) ||
                    col_sums(alg_.shape(), out.basis[i].E) != col_sums(alg_.shape(), out.basis[j].E))
                    continue; /* exact zero by multidegree orthogonality */
                PolElement<S> f = alg_.multiply(alg_.star(alg_.monomial(out.basis[i])),
                                                alg_.monomial(out.basis[j]));
                IntegralResult<S> r = integrate(f);
                out.matrix.at(i, j) = r.value;
                out.matrix.at(j, i) = r.value;
                if (!r.stabilized) out.stabilized = false;
                out.max_delta = max_abs(out.max_delta, r.last_delta);
            }
        }
        return out;
    }

private:
    struct ClassBlock {
        std::vector<NormalMonomial> basis;
        std::map<NormalMonomial, size_t> index;
        Matrix<S> a; /* Ty^lambda * diag(q^{-2w}) */
    };

    static S max_abs(const S& a, const S& b);

    PolElement<S> diagonal_part(const PolElement<S>& f) const {
        PolElement<S> out{alg_.shape(), {}};
        for (const auto& [mono, c] : f.terms) {
            if (row_sums(alg_.shape(), mono.E) == row_sums(alg_.shape(), mono.F) &&
                col_sums(alg_.shape(), mono.E) == col_sums(alg_.shape(), mono.F))
                out.terms.emplace(mono, c);
        }
        return out;
    }

    template <class F>
    void for_each_margin(int total, int parts, std::vector<long>& buf, F&& f) {
        if (parts == 1) {
            buf.push_back(total);
            f();
            buf.pop_back();
            return;
        }
        for (int v = 0; v <= total; ++v) {
            buf.push_back(v);
            for_each_margin(total - v, parts - 1, buf, f);
            buf.pop_back();
        }
    }

    template <class F>
    void for_each_class(int degree, F&& f) {
        std::vector<long> rho, kappa;
        for_each_margin(degree, alg_.shape().m, rho, [&] {
            for_each_margin(degree, alg_.shape().n, kappa, [&] {
                auto key = std::make_pair(rho, kappa);
                auto it = cache_.find(key);
                if (it == cache_.end()) {
                    ClassBlock cb;
                    cb.basis = class_basis(alg_.shape(), rho, kappa);
                    if (!cb.basis.empty()) {
                        for (size_t i = 0; i < cb.basis.size(); ++i)
                            cb.index.emplace(cb.basis[i], i);
                        DegreeBlock<S> blk =
                            block_from_basis(alg_, degree, cb.basis, /*with_gram=*/false);
                        cb.a = blk.ty.pow(lambda_, alg_.ctx().one(), alg_.ctx().zero());
                        for (size_t r = 0; r < cb.a.rows(); ++r)
                            for (size_t c = 0; c < cb.a.cols(); ++c)
                                cb.a.at(r, c) =
                                    cb.a.at(r, c) *
                                    alg_.ctx().q_pow(-2 * blk.weights[c]);
                    }
                    it = cache_.emplace(std::move(key), std::move(cb)).first;
                }
                if (!it->second.basis.empty()) f(it->second);
            });
        });
    }

    Algebra<S> alg_;
    long lambda_;
    Rational tol_;
    int max_degree_;
    S c_{};
    std::map<std::pair<std::vector<long>, std::vector<long>>, ClassBlock> cache_;
};

template <>
inline Rational WeightedIntegrator<Rational>::max_abs(const Rational& a, const Rational& b) {
    return a.abs() < b.abs() ? b.abs() : a.abs();
}
template <>
inline double WeightedIntegrator<double>::max_abs(const double& a, const double& b) {
    return std::max(std::fabs(a), std::fabs(b));
}

}  // namespace qmb
