#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmb/rational.hpp"

namespace qmb {

/* Dense matrix over an arbitrary commutative coefficient ring. */
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill = T())
        : r_(rows), c_(cols), v_(rows * cols, fill) {}

    static Matrix identity(size_t n, const T& one, const T& zero = T()) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& at(size_t i, size_t j) { return v_[i * c_ + j]; }
    const T& at(size_t i, size_t j) const { return v_[i * c_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.v_ == b.v_;
    }

    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw std::invalid_argument("Matrix: size mismatch in product");
        Matrix out(r_, o.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                const T& a = at(i, k);
                for (size_t j = 0; j < o.c_; ++j) out.at(i, j) += a * o.at(k, j);
            }
        return out;
    }
    Matrix operator+(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Matrix: size mismatch in sum");
        Matrix out = *this;
        for (size_t i = 0; i < v_.size(); ++i) out.v_[i] += o.v_[i];
        return out;
    }
    Matrix operator-(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_)
            throw std::invalid_argument("Matrix: size mismatch in difference");
        Matrix out = *this;
        for (size_t i = 0; i < v_.size(); ++i) out.v_[i] = out.v_[i] - o.v_[i];
        return out;
    }

    Matrix transpose() const {
        Matrix out(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    T trace() const {
        if (r_ != c_) throw std::invalid_argument("Matrix: trace of non-square matrix");
        T s = T();
        for (size_t i = 0; i < r_; ++i) s += at(i, i);
        return s;
    }

    /* Nonnegative integer power by repeated squaring. */
    Matrix pow(long e, const T& one, const T& zero = T()) const {
        if (r_ != c_) throw std::invalid_argument("Matrix: power of non-square matrix");
        if (e < 0) throw std::invalid_argument("Matrix: negative matrix power");
        Matrix acc = identity(r_, one, zero);
        Matrix base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> v_;
};

/* Leading principal minors by fraction-preserving Gaussian elimination;
 * used for exact positive-definiteness tests. */
inline std::vector<Rational> leading_principal_minors(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("minors: non-square matrix");
    size_t n = m.rows();
    std::vector<Rational> out;
    for (size_t k = 1; k <= n; ++k) {
        Matrix<Rational> a(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) a.at(i, j) = m.at(i, j);
        /* determinant via elimination with exact rationals */
        Rational det(1);
        bool zero = false;
        for (size_t col = 0; col < k && !zero; ++col) {
            size_t piv = col;
            while (piv < k && a.at(piv, col).is_zero()) ++piv;
            if (piv == k) {
                zero = true;
                break;
            }
            if (piv != col) {
                for (size_t j = 0; j < k; ++j) std::swap(a.at(piv, j), a.at(col, j));
                det = -det;
            }
            det *= a.at(col, col);
            Rational inv = a.at(col, col).inv();
            for (size_t i = col + 1; i < k; ++i) {
                Rational f = a.at(i, col) * inv;
                if (f.is_zero()) continue;
                for (size_t j = col; j < k; ++j) a.at(i, j) -= f * a.at(col, j);
            }
        }
        out.push_back(zero ? Rational(0) : det);
    }
    return out;
}

/* Coefficients of det(x I - M), ascending in x, by the
 * Faddeev-LeVerrier recursion (exact over the rationals). */
inline std::vector<Rational> char_poly(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: non-square matrix");
    size_t n = m.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = Rational(1);
    Matrix<Rational> mk = Matrix<Rational>::identity(n, Rational(1));
    for (size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational ck = -(mk.trace() / Rational(static_cast<long>(k)));
        c[n - k] = ck;
        for (size_t i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return c;
}

/* Substitute x -> x + 1 in an ascending coefficient vector. */
inline std::vector<Rational> taylor_shift_one(const std::vector<Rational>& c) {
    std::vector<Rational> out = c;
    size_t n = c.size();
    /* repeated synthetic division by (x - 1) accumulates p(x+1) */
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 1; j > i; --j) out[j - 1] += out[j];
    return out;
}

/* Gauss-Jordan inverse over an exact field-like T (needs inv() and
 * is_zero()); throws on singular input. */
template <class T>
Matrix<T> field_inverse(Matrix<T> a, const T& one, const T& zero) {
    if (a.rows() != a.cols()) throw std::invalid_argument("field_inverse: non-square matrix");
    size_t n = a.rows();
    Matrix<T> inv = Matrix<T>::identity(n, one, zero);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw std::domain_error("field_inverse: singular matrix");
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        T pinv = a.at(col, col).inv();
        for (size_t j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) * pinv;
            inv.at(col, j) = inv.at(col, j) * pinv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            T f = a.at(r, col);
            for (size_t j = 0; j < n; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

/* ---------------- double-precision helpers ---------------- */

/* Cholesky factor L (lower) of a symmetric positive definite matrix. */
inline Matrix<double> cholesky_lower(const Matrix<double>& a) {
    size_t n = a.rows();
    Matrix<double> l(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double s = a.at(i, j);
            for (size_t k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::domain_error("cholesky: matrix not positive definite");
                l.at(i, i) = std::sqrt(s);
            } else {
                l.at(i, j) = s / l.at(j, j);
            }
        }
    }
    return l;
}

/* Forward/back substitution against a lower-triangular factor. */
inline Matrix<double> solve_lower(const Matrix<double>& l, const Matrix<double>& b) {
    size_t n = l.rows();
    Matrix<double> x = b;
    for (size_t col = 0; col < b.cols(); ++col)
        for (size_t i = 0; i < n; ++i) {
            double s = x.at(i, col);
            for (size_t k = 0; k < i; ++k) s -= l.at(i, k) * x.at(k, col);
            x.at(i, col) = s / l.at(i, i);
        }
    return x;
}

/* Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations;
 * returns eigenvalues and fills V with orthonormal eigenvectors
 * (columns). */
inline std::vector<double> jacobi_eigensymm(Matrix<double> a, Matrix<double>& v) {
    size_t n = a.rows();
    v = Matrix<double>::identity(n, 1.0, 0.0);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1e-30) break;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (size_t k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<double> eig(n);
    for (size_t i = 0; i < n; ++i) eig[i] = a.at(i, i);
    return eig;
}

}  // namespace qmb
