#pragma once

#include <vector>

#include "cmhk/poly.hpp"

namespace cmhk {

// Dense matrix over a commutative ring.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    static Matrix identity(size_t n, const T& one) {
        Matrix m(n, n, ring_zero_like(one));
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw domain_error("matrix product shape mismatch");
        T z = ring_zero_like(x.a_.empty() ? y.a_.front() : x.a_.front());
        Matrix r(x.rows_, y.cols_, z);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                const T& v = x(i, k);
                if (ring_is_zero(v)) continue;
                for (size_t j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + v * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw domain_error("matrix sum shape mismatch");
        Matrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw domain_error("matrix diff shape mismatch");
        Matrix r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (size_t i = 0; i < x.a_.size(); ++i)
            if (!ring_is_zero(static_cast<T>(x.a_[i] - y.a_[i]))) return false;
        return true;
    }

    Matrix transpose() const {
        if (a_.empty()) return Matrix(cols_, rows_, T());
        Matrix r(cols_, rows_, ring_zero_like(a_.front()));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    template <class F>
    Matrix map(F&& f) const {
        Matrix r = *this;
        for (auto& v : r.a_) v = f(v);
        return r;
    }

private:
    size_t rows_, cols_;
    std::vector<T> a_;
};

// Characteristic polynomial by the Berkowitz algorithm: division-free, valid
// over any commutative ring. Returned ascending, monic.
template <class T>
Poly<T> char_poly(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw domain_error("char_poly: non-square matrix");
    const size_t n = m.rows();
    if (n == 0) throw domain_error("char_poly: empty matrix");
    const T zero = ring_zero_like(m(0, 0));
    const T one = ring_one_like(m(0, 0));
    std::vector<T> c{one};  // descending coefficients of char poly of the leading k x k block
    for (size_t k = 1; k <= n; ++k) {
        // First column of the (k+1) x k Toeplitz transform:
        // [1, -a, -R*S, -R*M*S, -R*M^2*S, ...] with M the (k-1) block, R the
        // last row, S the last column, a the corner entry.
        std::vector<T> col(k + 1, zero);
        col[0] = one;
        col[1] = zero - m(k - 1, k - 1);
        if (k >= 2) {
            std::vector<T> s(k - 1);
            for (size_t i = 0; i + 1 < k; ++i) s[i] = m(i, k - 1);
            for (size_t t = 2; t <= k; ++t) {
                T dot = zero;
                for (size_t j = 0; j + 1 < k; ++j) dot = dot + m(k - 1, j) * s[j];
                col[t] = zero - dot;
                if (t == k) break;
                std::vector<T> ns(k - 1, zero);
                for (size_t i = 0; i + 1 < k; ++i)
                    for (size_t j = 0; j + 1 < k; ++j) ns[i] = ns[i] + m(i, j) * s[j];
                s = std::move(ns);
            }
        }
        std::vector<T> next(k + 1, zero);
        for (size_t i = 0; i <= k; ++i)
            for (size_t j = 0; j < c.size() && j <= i; ++j) next[i] = next[i] + col[i - j] * c[j];
        c = std::move(next);
    }
    std::vector<T> asc(c.rbegin(), c.rend());
    return Poly<T>(std::move(asc));
}

// Determinant from the Berkowitz coefficients: det = (-1)^n * charpoly(0).
template <class T>
T det(const Matrix<T>& m) {
    Poly<T> cp = char_poly(m);
    T c0 = cp.coeff_or(0, ring_zero_like(m(0, 0)));
    if (m.rows() % 2 == 1) return ring_zero_like(c0) - c0;
    return c0;
}

template <class T>
T trace(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw domain_error("trace: non-square matrix");
    T t = ring_zero_like(m(0, 0));
    for (size_t i = 0; i < m.rows(); ++i) t = t + m(i, i);
    return t;
}

using RatMatrix = Matrix<Rat>;

// Gaussian elimination over the rationals.
size_t rat_rank(RatMatrix m);
// Solves A x = b; throws domain_error when the system is singular/inconsistent.
std::vector<Rat> rat_solve(RatMatrix a, std::vector<Rat> b);
// Basis of the right kernel, each vector of length cols.
std::vector<std::vector<Rat>> rat_kernel(RatMatrix m);
RatMatrix rat_inverse(const RatMatrix& m);

}  // namespace cmhk
