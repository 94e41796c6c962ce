#pragma once

#include <algorithm>
#include <optional>
#include <set>

#include "qmb/normal_order.hpp"

namespace qmb {

/* Element of the coordinate *-algebra of the matrix ball: a finite
 * linear combination of normally ordered monomials. */
template <class S>
struct PolElement {
    Shape shape;
    std::map<NormalMonomial, S> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const PolElement& a, const PolElement& b) {
        return a.shape == b.shape && a.terms == b.terms;
    }
};

/* The *-algebra for one shape and one coefficient regime.  Owns the
 * rewrite engine (and its memo table), so confine one instance to one
 * thread; distinct instances are independent. */
template <class S>
class Algebra {
public:
    Algebra(const Shape& sh, const ScalarCtx<S>& ctx,
            RedexStrategy strategy = RedexStrategy::leftmost)
        : engine_(sh, ctx, strategy) {}

    const Shape& shape() const { return engine_.shape(); }
    const ScalarCtx<S>& ctx() const { return engine_.ctx(); }

    PolElement<S> zero() const { return {shape(), {}}; }
    PolElement<S> one() const {
        PolElement<S> p{shape(), {}};
        p.terms.emplace(unit_monomial(shape()), ctx().one());
        return p;
    }
    PolElement<S> scalar(const S& c) const {
        PolElement<S> p{shape(), {}};
        if (!ctx().is_zero(c)) p.terms.emplace(unit_monomial(shape()), c);
        return p;
    }
    PolElement<S> generator(int alpha, int a, bool starred = false) const {
        NormalMonomial mono(shape());
        auto& part = starred ? mono.F : mono.E;
        part[static_cast<size_t>(shape().slot(alpha, a))] = 1;
        return monomial(mono);
    }
    PolElement<S> monomial(const NormalMonomial& mono, std::optional<S> coeff = {}) const {
        PolElement<S> p{shape(), {}};
        S c = coeff ? *coeff : ctx().one();
        if (!ctx().is_zero(c)) p.terms.emplace(mono, c);
        return p;
    }

    PolElement<S> normal_form(const Word& w) const {
        return {shape(), engine_.normal_form_word(w)};
    }

    PolElement<S> add(const PolElement<S>& a, const PolElement<S>& b) const {
        check_shape(a);
        check_shape(b);
        PolElement<S> r = a;
        for (const auto& [mono, c] : b.terms) accumulate(r, mono, c);
        return r;
    }
    PolElement<S> negate(const PolElement<S>& a) const {
        PolElement<S> r = a;
        for (auto& [mono, c] : r.terms) c = -c;
        return r;
    }
    PolElement<S> sub(const PolElement<S>& a, const PolElement<S>& b) const {
        return add(a, negate(b));
    }
    PolElement<S> scale(const PolElement<S>& a, const S& c) const {
        check_shape(a);
        PolElement<S> r{shape(), {}};
        if (ctx().is_zero(c)) return r;
        for (const auto& [mono, x] : a.terms) {
            S v = x * c;
            if (!ctx().is_zero(v)) r.terms.emplace(mono, std::move(v));
        }
        return r;
    }

    PolElement<S> multiply(const PolElement<S>& a, const PolElement<S>& b) const {
        check_shape(a);
        check_shape(b);
        PolElement<S> r{shape(), {}};
        for (const auto& [ma, ca] : a.terms) {
            Word wa = canonical_word(shape(), ma);
            for (const auto& [mb, cb] : b.terms) {
                Word w = wa;
                Word wb = canonical_word(shape(), mb);
                w.insert(w.end(), wb.begin(), wb.end());
                S c = ca * cb;
                for (const auto& [mono, coeff] : engine_.normal_form_word(w))
                    accumulate(r, mono, coeff * c);
            }
        }
        return r;
    }

    /* The involution: reverses words, stars letters, fixes coefficients
     * (all scalars here are real in q). */
    PolElement<S> star(const PolElement<S>& p) const {
        check_shape(p);
        PolElement<S> r{shape(), {}};
        for (const auto& [mono, c] : p.terms) {
            Word w = canonical_word(shape(), mono);
            std::reverse(w.begin(), w.end());
            for (auto& g : w) g.starred = !g.starred;
            for (const auto& [nm, coeff] : engine_.normal_form_word(w))
                accumulate(r, nm, coeff * c);
        }
        return r;
    }

    /* Quantum minor: sum over permutations s of (-q)^{l(s)}
     * z_{a_1}^{alpha_{s(1)}} ... z_{a_k}^{alpha_{s(k)}} for the chosen
     * rows alpha_1 < ... < alpha_k and columns a_1 < ... < a_k. */
    PolElement<S> q_minor(const std::vector<int>& rows, const std::vector<int>& cols) const {
        const int k = static_cast<int>(rows.size());
        if (k == 0 || rows.size() != cols.size())
            throw std::invalid_argument("q_minor: need equally many rows and columns");
        auto check_indices = [](const std::vector<int>& v, int bound, const char* what) {
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i] < 1 || v[i] > bound)
                    throw std::invalid_argument(std::string("q_minor: ") + what +
                                                " index out of range");
                if (i > 0 && v[i] <= v[i - 1])
                    throw std::invalid_argument(std::string("q_minor: ") + what +
                                                " indices must strictly increase");
            }
        };
        check_indices(rows, shape().m, "row");
        check_indices(cols, shape().n, "column");

        PolElement<S> r{shape(), {}};
        std::vector<int> perm(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) perm[static_cast<size_t>(i)] = i;
        do {
            long inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inv;
            Word w;
            for (int i = 0; i < k; ++i)
                w.push_back({static_cast<std::uint8_t>(rows[static_cast<size_t>(
                                 perm[static_cast<size_t>(i)])]),
                             static_cast<std::uint8_t>(cols[static_cast<size_t>(i)]), false});
            S c = ctx().q_pow(inv);
            if (inv % 2 == 1) c = -c;
            for (const auto& [mono, coeff] : engine_.normal_form_word(w))
                accumulate(r, mono, coeff * c);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return r;
    }

    /* y = 1 + sum_{k=1}^m (-1)^k sum_{rows J', cols J''} minor (minor)*;
     * the quantum analogue of det(1 - z z*).  Cached per algebra. */
    const PolElement<S>& y_element() const {
        if (!y_) {
            PolElement<S> y = one();
            std::vector<int> rows, cols;
            for (int k = 1; k <= shape().m; ++k) {
                PolElement<S> level = zero();
                for_each_subset(shape().m, k, rows, [&](const std::vector<int>& J1) {
                    for_each_subset(shape().n, k, cols, [&](const std::vector<int>& J2) {
                        PolElement<S> mnr = q_minor(J1, J2);
                        level = add(level, multiply(mnr, star(mnr)));
                    });
                });
                y = (k % 2 == 1) ? sub(y, level) : add(y, level);
            }
            y_ = std::move(y);
        }
        return *y_;
    }

    std::set<std::pair<long, long>> z_degrees(const PolElement<S>& p) const {
        check_shape(p);
        std::set<std::pair<long, long>> out;
        for (const auto& [mono, c] : p.terms) out.insert({mono.z_degree(), mono.total_degree()});
        return out;
    }

    /* Visit every strictly increasing k-subset of {1..bound}. */
    template <class F>
    static void for_each_subset(int bound, int k, std::vector<int>& buf, F&& f) {
        buf.clear();
        subset_rec(1, bound, k, buf, f);
    }

private:
    template <class F>
    static void subset_rec(int from, int bound, int k, std::vector<int>& buf, F&& f) {
        if (k == 0) {
            f(buf);
            return;
        }
        for (int v = from; v + k - 1 <= bound; ++v) {
            buf.push_back(v);
            subset_rec(v + 1, bound, k - 1, buf, f);
            buf.pop_back();
        }
    }

    void check_shape(const PolElement<S>& p) const {
        if (!(p.shape == shape()))
            throw std::invalid_argument("Algebra: element shape mismatch");
    }
    void accumulate(PolElement<S>& p, const NormalMonomial& mono, const S& c) const {
        auto it = p.terms.find(mono);
        if (it == p.terms.end()) {
            if (!ctx().is_zero(c)) p.terms.emplace(mono, c);
        } else {
            it->second += c;
            if (ctx().is_zero(it->second)) p.terms.erase(it);
        }
    }

    RewriteEngine<S> engine_;
    mutable std::optional<PolElement<S>> y_;
};

}  // namespace qmb
