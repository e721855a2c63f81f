#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "miop/errors.hpp"
#include "miop/laurent.hpp"
#include "miop/poly.hpp"
#include "miop/scalar.hpp"

namespace miop {

// Exact division for the scalar towers, so the determinant kernels work on
// scalars, polynomials and Laurent polynomials alike.
inline Rational exact_div(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InexactDivision("rational division by zero");
    return a / b;
}
inline GaussianRational exact_div(const GaussianRational& a, const GaussianRational& b) { return a / b; }
inline SqrtQRational exact_div(const SqrtQRational& a, const SqrtQRational& b) { return a / b; }

/// Dense row-major square-or-rectangular matrix over a commutative ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw ConfigurationError("matrix dimensions must be positive");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    /// The matrix with row r and column c removed.
    Matrix minor(std::size_t r, std::size_t c) const {
        Matrix m(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
                if (j == c) continue;
                m(mi, mj++) = (*this)(i, j);
            }
            ++mi;
        }
        return m;
    }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(data_.front()));
        Matrix<U> out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class S>
using PolyMatrix = Matrix<Poly<S>>;

/// Laplace expansion along the first row. Exponential; intended for n < 4.
template <class T>
T det_cofactor(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw ConfigurationError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    T acc = m(0, 0) - m(0, 0);
    for (std::size_t c = 0; c < n; ++c) {
        if (is_zero(m(0, c))) continue;
        T term = m(0, c) * det_cofactor(m.minor(0, c));
        if (c % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

/// Bareiss fraction-free elimination. Every division is exact in an integral
/// domain; a nonzero remainder surfaces as InexactDivision.
template <class T>
T det_bareiss(Matrix<T> m) {
    if (m.rows() != m.cols()) throw ConfigurationError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    bool negate = false;
    T prev = m(0, 0) - m(0, 0);
    bool have_prev = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return m(0, 0) - m(0, 0);
            m.swap_rows(k, p);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = have_prev ? exact_div(v, prev) : std::move(v);
            }
        }
        prev = m(k, k);
        have_prev = true;
    }
    T d = m(n - 1, n - 1);
    return negate ? -d : d;
}

/// Exact determinant: cofactor expansion below 4x4, Bareiss otherwise.
template <class T>
T det_fraction_free(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw ConfigurationError("determinant of a non-square matrix");
    if (m.rows() < 4) return det_cofactor(m);
    return det_bareiss(m);
}

/// Signed cofactors along the last column: det = sum_r m(r, n-1) * result[r].
/// Lets a family of determinants that differ only in the last column share work.
template <class T>
std::vector<T> last_column_cofactors(const Matrix<T>& m, const T& one) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw ConfigurationError("cofactors of a non-square matrix");
    std::vector<T> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(one);
        return out;
    }
    for (std::size_t r = 0; r < n; ++r) {
        T c = det_fraction_free(m.minor(r, n - 1));
        if ((r + n - 1) % 2 == 1) c = -c;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace miop
