#pragma once

#include <array>
#include <map>
#include <tuple>

#include "qmb/scalar_ctx.hpp"
#include "qmb/shape.hpp"

namespace qmb {

enum class RedexStrategy { leftmost, rightmost };

/* Normal ordering for words in the generators.  The defining relations
 * are quadratic, so a memoized table of two-letter reductions drives
 * everything:
 *
 *   unstarred pair, left key > right key (keys compare (a, alpha)):
 *     same column            ->  q^{-1} (swap)
 *     same row               ->  q^{-1} (swap)
 *     col >, row <           ->  (swap)
 *     col >, row >           ->  (swap) - (q - q^{-1}) (cross pair)
 *   starred pair: image of the unstarred rule under the involution
 *     (reverse products, keep coefficients), so q^{-1} -> q and the
 *     cross term enters with +(q - q^{-1});
 *   starred letter left of an unstarred one:
 *     zeta_b^beta z_a^alpha = q^2 sum R(b,a,b',a') R(beta,alpha,beta',alpha')
 *                             z_{a'}^{alpha'} zeta_{b'}^{beta'}
 *                             + (1-q^2) delta_{ab} delta^{alpha beta}
 *     with R(i,j,i',j') = q^{-1} if i != j, i'=i, j'=j;
 *                         1 if i=j=i'=j';
 *                         -(q^{-2}-1) if i=j, i'=j', j'>j;  0 otherwise.
 *
 * Every step strictly decreases the word measure
 *   ( #(starred left of unstarred) pairs,
 *     same-part column inversions,
 *     same-part same-column row inversions )
 * lexicographically; the engine asserts this on each rewrite.  Rewrite
 * order (leftmost vs rightmost redex) is configurable so confluence is
 * testable.  The memo table is not synchronized: keep each engine
 * instance confined to one thread.
 */
template <class S>
class RewriteEngine {
public:
    RewriteEngine(const Shape& sh, const ScalarCtx<S>& ctx,
                  RedexStrategy strategy = RedexStrategy::leftmost)
        : shape_(sh), ctx_(ctx), strategy_(strategy) {}

    const Shape& shape() const { return shape_; }
    const ScalarCtx<S>& ctx() const { return ctx_; }

    /* Expand a free word into the PBW basis. */
    std::map<NormalMonomial, S> normal_form_word(const Word& w) const {
        std::map<NormalMonomial, S> out;
        std::map<Word, S> pending;
        pending.emplace(w, ctx_.one());
        while (!pending.empty()) {
            auto node = pending.extract(pending.begin());
            const Word& word = node.key();
            const S& coeff = node.mapped();
            int idx = find_redex(word);
            if (idx < 0) {
                accumulate(out, monomial_from_canonical(shape_, word), coeff);
                continue;
            }
            auto old_local = local_measure(word, static_cast<size_t>(idx));
            for (const RuleTerm& t : pair_rule(word[static_cast<size_t>(idx)],
                                               word[static_cast<size_t>(idx) + 1])) {
                Word nw;
                nw.reserve(word.size());
                nw.assign(word.begin(), word.begin() + idx);
                for (int k = 0; k < t.n_out; ++k) nw.push_back(t.out[static_cast<size_t>(k)]);
                nw.insert(nw.end(), word.begin() + idx + 2, word.end());
                if (!(local_measure(nw, static_cast<size_t>(idx), t.n_out) < old_local))
                    throw std::logic_error("RewriteEngine: termination measure failed to decrease");
                S c = coeff * t.coeff;
                auto it = pending.find(nw);
                if (it == pending.end()) {
                    pending.emplace(std::move(nw), std::move(c));
                } else {
                    it->second += c;
                    if (ctx_.is_zero(it->second)) pending.erase(it);
                }
            }
        }
        return out;
    }

private:
    struct RuleTerm {
        S coeff;
        std::array<Generator, 2> out{};
        int n_out = 0;
    };

    static bool is_redex(const Generator& l, const Generator& r) {
        if (l.starred && !r.starred) return true;
        if (l.starred == r.starred) return gen_key(l) > gen_key(r);
        return false;
    }

    int find_redex(const Word& w) const {
        if (strategy_ == RedexStrategy::leftmost) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (is_redex(w[i], w[i + 1])) return static_cast<int>(i);
            return -1;
        }
        for (size_t i = w.size(); i >= 2; --i)
            if (is_redex(w[i - 2], w[i - 1])) return static_cast<int>(i - 2);
        return -1;
    }

    /* Measure contributions of all pairs touching the letters at
     * positions [idx, idx+span); all other pairs are unaffected by a
     * local rewrite, so comparing local triples decides the global
     * lexicographic comparison. */
    std::tuple<long, long, long> local_measure(const Word& w, size_t idx, int span = 2) const {
        long mixed = 0, col_inv = 0, row_inv = 0;
        size_t hi = idx + static_cast<size_t>(span);
        auto count = [&](const Generator& l, const Generator& r) {
            if (l.starred && !r.starred) {
                ++mixed;
                return;
            }
            if (l.starred != r.starred) return;
            if (l.a > r.a) ++col_inv;
            else if (l.a == r.a && l.alpha > r.alpha) ++row_inv;
        };
        for (size_t i = 0; i < w.size(); ++i) {
            bool i_in = (i >= idx && i < hi);
            for (size_t j = i + 1; j < w.size(); ++j) {
                bool j_in = (j >= idx && j < hi);
                if (i_in || j_in) count(w[i], w[j]);
            }
        }
        return {mixed, col_inv, row_inv};
    }

    /* R(i,j,i',j') from the mixed relation; zero coefficients are
     * represented by absence. */
    bool r_coeff(int i, int j, int ip, int jp, S& out) const {
        if (i != j) {
            if (ip == i && jp == j) {
                out = ctx_.q_pow(-1);
                return true;
            }
            return false;
        }
        if (ip != jp) return false;
        if (ip == i) {
            out = ctx_.one();
            return true;
        }
        if (ip > i) {
            out = ctx_.one() - ctx_.q_pow(-2);
            return true;
        }
        return false;
    }

    const std::vector<RuleTerm>& pair_rule(const Generator& l, const Generator& r) const {
        auto key = std::make_pair(l, r);
        auto it = rules_.find(key);
        if (it != rules_.end()) return it->second;
        std::vector<RuleTerm> terms;
        if (l.starred == r.starred) {
            bool st = l.starred;
            /* swap coefficient: q^{-1} on the unstarred side when the
             * letters share a row or column, q on the starred side */
            S swap_coeff = (l.a == r.a || l.alpha == r.alpha)
                               ? ctx_.q_pow(st ? 1 : -1)
                               : ctx_.one();
            terms.push_back({swap_coeff, {r, l}, 2});
            if (l.a != r.a && l.alpha > r.alpha) {
                S cross = ctx_.q_pow(1) - ctx_.q_pow(-1);
                if (!st) cross = -cross;
                Generator g1{l.alpha, r.a, st};
                Generator g2{r.alpha, l.a, st};
                terms.push_back({cross, {g1, g2}, 2});
            }
        } else {
            /* l = zeta_b^beta, r = z_a^alpha */
            int b = l.a, a = r.a, beta = l.alpha, alpha = r.alpha;
            S q2 = ctx_.q_pow(2);
            for (int bp = 1; bp <= shape_.n; ++bp)
                for (int ap = 1; ap <= shape_.n; ++ap) {
                    S rc;
                    if (!r_coeff(b, a, bp, ap, rc)) continue;
                    for (int betap = 1; betap <= shape_.m; ++betap)
                        for (int alphap = 1; alphap <= shape_.m; ++alphap) {
                            S rr;
                            if (!r_coeff(beta, alpha, betap, alphap, rr)) continue;
                            Generator gz{static_cast<std::uint8_t>(alphap),
                                         static_cast<std::uint8_t>(ap), false};
                            Generator gs{static_cast<std::uint8_t>(betap),
                                         static_cast<std::uint8_t>(bp), true};
                            terms.push_back({q2 * rc * rr, {gz, gs}, 2});
                        }
                }
            if (a == b && alpha == beta)
                terms.push_back({ctx_.one() - q2, {}, 0});
        }
        return rules_.emplace(key, std::move(terms)).first->second;
    }

    void accumulate(std::map<NormalMonomial, S>& out, const NormalMonomial& mono,
                    const S& coeff) const {
        auto it = out.find(mono);
        if (it == out.end()) {
            if (!ctx_.is_zero(coeff)) out.emplace(mono, coeff);
        } else {
            it->second += coeff;
            if (ctx_.is_zero(it->second)) out.erase(it);
        }
    }

    Shape shape_;
    ScalarCtx<S> ctx_;
    RedexStrategy strategy_;
    mutable std::map<std::pair<Generator, Generator>, std::vector<RuleTerm>> rules_;
};

}  // namespace qmb
