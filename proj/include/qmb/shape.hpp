#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmb {

/* Size of the matrix ball: m rows, n columns, m <= n throughout. */
struct Shape {
    int m = 1;
    int n = 1;

    Shape() = default;
    Shape(int rows, int cols) : m(rows), n(cols) {
        if (m < 1 || n < m) throw std::invalid_argument("Shape: need 1 <= m <= n");
        if (m * n > 64) throw std::invalid_argument("Shape: m*n exceeds supported limit 64");
    }

    int slots() const { return m * n; }

    /* Slot of generator (alpha, a); ascending slot = the canonical
     * (a, then alpha) generator order. */
    int slot(int alpha, int a) const {
        if (alpha < 1 || alpha > m || a < 1 || a > n)
            throw std::out_of_range("Shape: generator index out of range");
        return (a - 1) * m + (alpha - 1);
    }
    int slot_row(int s) const { return s % m + 1; }    /* alpha */
    int slot_col(int s) const { return s / m + 1; }    /* a */

    friend bool operator==(const Shape&, const Shape&) = default;
};

struct Generator {
    std::uint8_t alpha = 1; /* row, 1..m */
    std::uint8_t a = 1;     /* column, 1..n */
    bool starred = false;

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

/* Canonical order key: column first, then row. */
inline std::pair<int, int> gen_key(const Generator& g) {
    return {static_cast<int>(g.a), static_cast<int>(g.alpha)};
}

using Word = std::vector<Generator>;

/* Exponent matrices of a normally ordered monomial z^E (z^*)^F, stored
 * slot-wise in canonical order.  E holds the unstarred part, F the
 * starred part. */
struct NormalMonomial {
    std::vector<std::uint32_t> E, F;

    NormalMonomial() = default;
    explicit NormalMonomial(const Shape& sh)
        : E(static_cast<size_t>(sh.slots()), 0), F(static_cast<size_t>(sh.slots()), 0) {}

    friend auto operator<=>(const NormalMonomial&, const NormalMonomial&) = default;

    long total_degree() const {
        long s = 0;
        for (auto e : E) s += e;
        for (auto f : F) s += f;
        return s;
    }
    long z_degree() const {
        long s = 0;
        for (auto e : E) s += e;
        for (auto f : F) s -= f;
        return s;
    }
    bool is_unit() const {
        return total_degree() == 0;
    }
    bool is_holomorphic() const {
        for (auto f : F)
            if (f != 0) return false;
        return true;
    }
};

inline NormalMonomial unit_monomial(const Shape& sh) { return NormalMonomial(sh); }

/* Multiplicities per row / per column of one exponent matrix. */
inline std::vector<long> row_sums(const Shape& sh, const std::vector<std::uint32_t>& M) {
    std::vector<long> r(static_cast<size_t>(sh.m), 0);
    for (int s = 0; s < sh.slots(); ++s) r[static_cast<size_t>(sh.slot_row(s) - 1)] += M[static_cast<size_t>(s)];
    return r;
}
inline std::vector<long> col_sums(const Shape& sh, const std::vector<std::uint32_t>& M) {
    std::vector<long> c(static_cast<size_t>(sh.n), 0);
    for (int s = 0; s < sh.slots(); ++s) c[static_cast<size_t>(sh.slot_col(s) - 1)] += M[static_cast<size_t>(s)];
    return c;
}

/* The canonical word of a monomial: unstarred generators ascending in
 * (a, alpha), then starred generators ascending likewise. */
inline Word canonical_word(const Shape& sh, const NormalMonomial& mono) {
    Word w;
    w.reserve(static_cast<size_t>(mono.total_degree()));
    for (int s = 0; s < sh.slots(); ++s)
        for (std::uint32_t k = 0; k < mono.E[static_cast<size_t>(s)]; ++k)
            w.push_back({static_cast<std::uint8_t>(sh.slot_row(s)),
                         static_cast<std::uint8_t>(sh.slot_col(s)), false});
    for (int s = 0; s < sh.slots(); ++s)
        for (std::uint32_t k = 0; k < mono.F[static_cast<size_t>(s)]; ++k)
            w.push_back({static_cast<std::uint8_t>(sh.slot_row(s)),
                         static_cast<std::uint8_t>(sh.slot_col(s)), true});
    return w;
}

/* All holomorphic exponent matrices of total degree d, ascending. */
inline std::vector<NormalMonomial> holomorphic_basis(const Shape& sh, int d) {
    std::vector<NormalMonomial> out;
    NormalMonomial mono(sh);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == sh.slots() - 1) {
            mono.E[static_cast<size_t>(slot)] = static_cast<std::uint32_t>(left);
            out.push_back(mono);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            mono.E[static_cast<size_t>(slot)] = static_cast<std::uint32_t>(e);
            rec(slot + 1, left - e);
        }
        mono.E[static_cast<size_t>(slot)] = 0;
    };
    if (sh.slots() == 0) return out;
    rec(0, d);
    return out;
}

/* Holomorphic monomials with prescribed row and column sums
 * (one multidegree class), ascending. */
inline std::vector<NormalMonomial> class_basis(const Shape& sh, const std::vector<long>& rho,
                                               const std::vector<long>& kappa) {
    if (rho.size() != static_cast<size_t>(sh.m) || kappa.size() != static_cast<size_t>(sh.n))
        throw std::invalid_argument("class_basis: margin size mismatch");
    std::vector<NormalMonomial> out;
    NormalMonomial mono(sh);
    std::vector<long> row_left = rho, col_left = kappa;
    /* slots ascend column-major, so fill column by column */
    std::function<void(int)> rec = [&](int s) {
        if (s == sh.slots()) {
            for (long r : row_left)
                if (r != 0) return;
            out.push_back(mono);
            return;
        }
        int row = sh.slot_row(s) - 1, col = sh.slot_col(s) - 1;
        long cap = std::min(row_left[static_cast<size_t>(row)], col_left[static_cast<size_t>(col)]);
        /* remaining slots of this column must be able to absorb the rest */
        for (long e = 0; e <= cap; ++e) {
            mono.E[static_cast<size_t>(s)] = static_cast<std::uint32_t>(e);
            row_left[static_cast<size_t>(row)] -= e;
            col_left[static_cast<size_t>(col)] -= e;
            bool col_done = (sh.slot_row(s) == sh.m);
            if (!col_done || col_left[static_cast<size_t>(col)] == 0) rec(s + 1);
            row_left[static_cast<size_t>(row)] += e;
            col_left[static_cast<size_t>(col)] += e;
        }
        mono.E[static_cast<size_t>(s)] = 0;
    };
    rec(0);
    return out;
}

/* Inverse of canonical_word; rejects words that are not canonical. */
inline NormalMonomial monomial_from_canonical(const Shape& sh, const Word& w) {
    NormalMonomial mono(sh);
    for (size_t i = 0; i < w.size(); ++i) {
        if (i + 1 < w.size()) {
            const Generator &l = w[i], &r = w[i + 1];
            bool ok = (!l.starred && r.starred) ||
                      (l.starred == r.starred && gen_key(l) <= gen_key(r));
            if (!ok) throw std::invalid_argument("monomial_from_canonical: word not canonical");
        }
        auto& part = w[i].starred ? mono.F : mono.E;
        part[static_cast<size_t>(sh.slot(w[i].alpha, w[i].a))] += 1;
    }
    return mono;
}

}  // namespace qmb
