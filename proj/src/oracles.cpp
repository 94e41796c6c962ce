#include "qmb/oracles.hpp"

#include <algorithm>

namespace qmb {

namespace {

/* Classical (sign-only) minor over the chosen rows and columns. */
CommutativePoly classical_minor(const Shape& sh, const std::vector<int>& rows,
                                const std::vector<int>& cols, bool bar) {
    const size_t k = rows.size();
    std::vector<int> perm(k);
    for (size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
    CommutativePoly out(sh);
    do {
        int inv = 0;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        CommutativePoly term =
            CommutativePoly::constant(sh, inv % 2 == 0 ? Rational(1) : Rational(-1));
        for (size_t i = 0; i < k; ++i)
            term = term * CommutativePoly::variable(sh, rows[static_cast<size_t>(perm[i])],
                                                    cols[i], bar);
        out = out + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

template <class F>
void subsets(int from, int bound, int k, std::vector<int>& buf, F&& f) {
    if (k == 0) {
        f(buf);
        return;
    }
    for (int v = from; v + k - 1 <= bound; ++v) {
        buf.push_back(v);
        subsets(v + 1, bound, k - 1, buf, f);
        buf.pop_back();
    }
}

/* The exchange-table entry R(i, j, i', j'). */
QFun brute_r(int i, int j, int ip, int jp) {
    if (i != j) return (ip == i && jp == j) ? QFun::q_power(-1) : QFun();
    if (ip == i && jp == j) return QFun(1);
    if (ip == jp && jp > j) return QFun(1) - QFun::q_power(-2);
    return QFun();
}

}  // namespace

CommutativePoly classical_det_expansion(const Shape& sh) {
    CommutativePoly out = CommutativePoly::constant(sh, Rational(1));
    std::vector<int> rows, cols;
    for (int k = 1; k <= sh.m; ++k) {
        CommutativePoly level(sh);
        subsets(1, sh.m, k, rows, [&](const std::vector<int>& J1) {
            subsets(1, sh.n, k, cols, [&](const std::vector<int>& J2) {
                level = level + classical_minor(sh, J1, J2, false) *
                                    classical_minor(sh, J1, J2, true);
            });
        });
        CommutativePoly sign = CommutativePoly::constant(
            sh, k % 2 == 1 ? Rational(-1) : Rational(1));
        out = out + sign * level;
    }
    return out;
}

CommutativePoly classical_det_direct(const Shape& sh) {
    /* entries of 1 - z z^t-bar */
    std::vector<std::vector<CommutativePoly>> a(
        static_cast<size_t>(sh.m), std::vector<CommutativePoly>(static_cast<size_t>(sh.m),
                                                                CommutativePoly(sh)));
    for (int alpha = 1; alpha <= sh.m; ++alpha)
        for (int beta = 1; beta <= sh.m; ++beta) {
            CommutativePoly e = alpha == beta
                                    ? CommutativePoly::constant(sh, Rational(1))
                                    : CommutativePoly(sh);
            for (int col = 1; col <= sh.n; ++col)
                e = e - CommutativePoly::variable(sh, alpha, col, false) *
                            CommutativePoly::variable(sh, beta, col, true);
            a[static_cast<size_t>(alpha - 1)][static_cast<size_t>(beta - 1)] = e;
        }

    std::vector<int> perm(static_cast<size_t>(sh.m));
    for (int i = 0; i < sh.m; ++i) perm[static_cast<size_t>(i)] = i;
    CommutativePoly det(sh);
    do {
        int inv = 0;
        for (int i = 0; i < sh.m; ++i)
            for (int j = i + 1; j < sh.m; ++j)
                if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inv;
        CommutativePoly term = CommutativePoly::constant(
            sh, inv % 2 == 0 ? Rational(1) : Rational(-1));
        for (int i = 0; i < sh.m; ++i)
            term = term * a[static_cast<size_t>(i)][static_cast<size_t>(
                              perm[static_cast<size_t>(i)])];
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

CommutativePoly commutative_image(const PolElement<Rational>& p) {
    const Shape& sh = p.shape;
    CommutativePoly out(sh);
    for (const auto& [mono, c] : p.terms) {
        CommutativePoly::Exponents e(2 * static_cast<size_t>(sh.slots()), 0);
        for (int s = 0; s < sh.slots(); ++s) {
            e[static_cast<size_t>(s)] = mono.E[static_cast<size_t>(s)];
            e[static_cast<size_t>(s) + static_cast<size_t>(sh.slots())] =
                mono.F[static_cast<size_t>(s)];
        }
        out.add_term(e, c);
    }
    return out;
}

QUFun q_binomial_coefficient_series(int i) {
    if (i < 0) throw std::invalid_argument("q_binomial_coefficient_series: negative degree");
    QUFun num(1);
    QFun den(1);
    for (int r = 0; r < i; ++r) {
        num *= QUFun(1) - QUFun::u_power(1, QFun::q_power(2 * r));
        den = den * (QFun(1) - QFun::q_power(2 * (r + 1)));
    }
    return num * QUFun(den.inv());
}

Rational classical_kernel_coefficient(const Rational& lambda, int i) {
    if (i < 0) throw std::invalid_argument("classical_kernel_coefficient: negative degree");
    Rational out(1);
    for (int r = 1; r <= i; ++r)
        out *= (lambda + Rational(r - 1)) / Rational(r);
    return out;
}

QFun brute_force_inner(const Shape& sh, const Word& w1, const Word& w2) {
    if (sh.m > 2 || sh.n > 2)
        throw std::invalid_argument("brute_force_inner: shape cap is m, n <= 2");
    if (w1.size() > 5 || w2.size() > 5)
        throw std::invalid_argument("brute_force_inner: word cap is length 5");

    /* <w1 f0, w2 f0> = vacuum coefficient of (w1)^* w2 applied to f0 */
    Word start;
    start.reserve(w1.size() + w2.size());
    for (auto it = w1.rbegin(); it != w1.rend(); ++it)
        start.push_back({it->alpha, it->a, !it->starred});
    start.insert(start.end(), w2.begin(), w2.end());

    std::map<Word, QFun> work;
    work.emplace(std::move(start), QFun(1));
    QFun q2 = QFun::q_power(2);
    QFun result;

    auto push = [&](std::map<Word, QFun>& dst, Word w, QFun c) {
        if (c.is_zero()) return;
        auto it = dst.find(w);
        if (it == dst.end()) {
            dst.emplace(std::move(w), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) dst.erase(it);
        }
    };

    while (!work.empty()) {
        Word w = work.begin()->first;
        QFun c = work.begin()->second;
        work.erase(work.begin());

        if (w.empty()) {
            result += c;
            continue;
        }
        if (w.back().starred) continue; /* annihilates the vacuum */

        size_t p = w.size();
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i].starred && !w[i + 1].starred) {
                p = i;
                break;
            }
        if (p == w.size()) continue; /* pure z-word, orthogonal to f0 */

        const Generator zeta = w[p], z = w[p + 1];
        /* zeta_b^beta z_a^alpha = q^2 sum R(b,a,b',a') R(beta,alpha,beta',alpha')
         * z_{a'}^{alpha'} zeta_{b'}^{beta'} + (1-q^2) delta_{ab} delta^{alpha beta} */
        for (int bp = 1; bp <= sh.n; ++bp)
            for (int ap = 1; ap <= sh.n; ++ap) {
                QFun rc = brute_r(zeta.a, z.a, bp, ap);
                if (rc.is_zero()) continue;
                for (int betap = 1; betap <= sh.m; ++betap)
                    for (int alphap = 1; alphap <= sh.m; ++alphap) {
                        QFun rr = brute_r(zeta.alpha, z.alpha, betap, alphap);
                        if (rr.is_zero()) continue;
                        Word nw = w;
                        nw[p] = {static_cast<std::uint8_t>(alphap),
                                 static_cast<std::uint8_t>(ap), false};
                        nw[p + 1] = {static_cast<std::uint8_t>(betap),
                                     static_cast<std::uint8_t>(bp), true};
                        push(work, std::move(nw), c * q2 * rc * rr);
                    }
            }
        if (zeta.a == z.a && zeta.alpha == z.alpha) {
            Word nw = w;
            nw.erase(nw.begin() + static_cast<std::ptrdiff_t>(p),
                     nw.begin() + static_cast<std::ptrdiff_t>(p) + 2);
            push(work, std::move(nw), c * (QFun(1) - q2));
        }
    }
    return result;
}

}  // namespace qmb
