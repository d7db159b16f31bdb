/*
   Copyright 2026 The vbc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <optional>
#include <vector>

#include "vbc/gf.hpp"

namespace vbc {

/**
 * Dense matrix over a field-like value type T. T must provide +, -, *, /,
 * unary -, is_zero(), zero_like() and one_like(); a prototype zero is stored
 * so that empty shapes stay typed.
 */
template <class T>
class Mat {
  public:
    size_t r = 0, c = 0;
    T z{};
    std::vector<T> a;

    Mat() = default;
    Mat(size_t rows, size_t cols, const T& zero) : r(rows), c(cols), z(zero.zero_like()), a(rows * cols, z) {}
    static Mat identity(size_t n, const T& one) {
        Mat m(n, n, one.zero_like());
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }
    static Mat column(const std::vector<T>& v, const T& zero) {
        Mat m(v.size(), 1, zero);
        for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    T& operator()(size_t i, size_t j) { return a[i * c + j]; }
    const T& operator()(size_t i, size_t j) const { return a[i * c + j]; }
    T one() const { return z.one_like(); }
    bool is_square() const { return r == c; }

    Mat operator*(const Mat& o) const {
        if (c != o.r) throw MathError("matrix shape mismatch in product");
        Mat m(r, o.c, z);
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < c; ++k) {
                const T& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (size_t j = 0; j < o.c; ++j) {
                    const T& y = o(k, j);
                    if (y.is_zero()) continue;
                    m(i, j) += x * y;
                }
            }
        return m;
    }
    std::vector<T> operator*(const std::vector<T>& v) const {
        if (c != v.size()) throw MathError("matrix-vector shape mismatch");
        std::vector<T> out(r, z);
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < c; ++k)
                if (!(*this)(i, k).is_zero() && !v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
        return out;
    }
    Mat operator+(const Mat& o) const {
        if (r != o.r || c != o.c) throw MathError("matrix shape mismatch in sum");
        Mat m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
        return m;
    }
    Mat operator-(const Mat& o) const {
        if (r != o.r || c != o.c) throw MathError("matrix shape mismatch in difference");
        Mat m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] -= o.a[i];
        return m;
    }
    Mat operator-() const {
        Mat m = *this;
        for (auto& x : m.a) x = -x;
        return m;
    }
    Mat scaled(const T& s) const {
        Mat m = *this;
        for (auto& x : m.a)
            if (!x.is_zero()) x = x * s;
        return m;
    }
    bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const {
        for (auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat transpose() const {
        Mat m(c, r, z);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    std::vector<T> col(size_t j) const {
        std::vector<T> v(r, z);
        for (size_t i = 0; i < r; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(size_t i) const { return std::vector<T>(a.begin() + i * c, a.begin() + (i + 1) * c); }
    void set_col(size_t j, const std::vector<T>& v) {
        for (size_t i = 0; i < r; ++i) (*this)(i, j) = v[i];
    }
    Mat sub(size_t r0, size_t c0, size_t nr, size_t nc) const {
        Mat m(nr, nc, z);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    Mat cols(const std::vector<size_t>& idx) const {
        Mat m(r, idx.size(), z);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }
    void put(size_t r0, size_t c0, const Mat& b) {
        for (size_t i = 0; i < b.r; ++i)
            for (size_t j = 0; j < b.c; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Mat hcat(const Mat& b) const {
        if (r != b.r) throw MathError("hcat row mismatch");
        Mat m(r, c + b.c, z);
        m.put(0, 0, *this);
        m.put(0, c, b);
        return m;
    }
    Mat vcat(const Mat& b) const {
        if (c != b.c) throw MathError("vcat column mismatch");
        Mat m(r + b.r, c, z);
        m.put(0, 0, *this);
        m.put(r, 0, b);
        return m;
    }
    Mat kron(const Mat& b) const {
        Mat m(r * b.r, c * b.c, z);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) {
                const T& x = (*this)(i, j);
                if (x.is_zero()) continue;
                for (size_t k = 0; k < b.r; ++k)
                    for (size_t l = 0; l < b.c; ++l)
                        if (!b(k, l).is_zero()) m(i * b.r + k, j * b.c + l) = x * b(k, l);
            }
        return m;
    }
    Mat block_diag(const Mat& b) const {
        Mat m(r + b.r, c + b.c, z);
        m.put(0, 0, *this);
        m.put(r, c, b);
        return m;
    }
};

template <class T>
struct Echelon {
    Mat<T> R;                   // reduced row echelon form
    std::vector<size_t> pivots;  // pivot column per nonzero row
};

template <class T>
Echelon<T> rref(Mat<T> m) {
    std::vector<size_t> piv;
    size_t row = 0;
    for (size_t col = 0; col < m.c && row < m.r; ++col) {
        size_t sel = m.r;
        for (size_t i = row; i < m.r; ++i)
            if (!m(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel == m.r) continue;
        if (sel != row)
            for (size_t j = 0; j < m.c; ++j) std::swap(m(sel, j), m(row, j));
        T inv = m.one() / m(row, col);
        for (size_t j = col; j < m.c; ++j)
            if (!m(row, j).is_zero()) m(row, j) = m(row, j) * inv;
        for (size_t i = 0; i < m.r; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            T f = m(i, col);
            for (size_t j = col; j < m.c; ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(piv)};
}

template <class T>
size_t rank(const Mat<T>& m) {
    return rref(m).pivots.size();
}

template <class T>
T det(Mat<T> m) {
    if (!m.is_square()) throw MathError("determinant of non-square matrix");
    T d = m.one();
    for (size_t col = 0; col < m.c; ++col) {
        size_t sel = m.r;
        for (size_t i = col; i < m.r; ++i)
            if (!m(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel == m.r) return m.z;
        if (sel != col) {
            for (size_t j = 0; j < m.c; ++j) std::swap(m(sel, j), m(col, j));
            d = -d;
        }
        d = d * m(col, col);
        T inv = m.one() / m(col, col);
        for (size_t i = col + 1; i < m.r; ++i) {
            if (m(i, col).is_zero()) continue;
            T f = m(i, col) * inv;
            for (size_t j = col; j < m.c; ++j)
                if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

template <class T>
std::optional<Mat<T>> try_inverse(const Mat<T>& m) {
    if (!m.is_square()) return std::nullopt;
    auto e = rref(m.hcat(Mat<T>::identity(m.r, m.one())));
    if (e.pivots.size() < m.r || e.pivots[m.r - 1] != m.r - 1) return std::nullopt;
    return e.R.sub(0, m.c, m.r, m.r);
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
    auto i = try_inverse(m);
    if (!i) throw MathError("singular matrix");
    return *i;
}

// Basis of the right kernel {v : m v = 0} as columns.
template <class T>
Mat<T> kernel(const Mat<T>& m) {
    auto e = rref(m);
    std::vector<bool> is_piv(m.c, false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<size_t> free;
    for (size_t j = 0; j < m.c; ++j)
        if (!is_piv[j]) free.push_back(j);
    Mat<T> k(m.c, free.size(), m.z);
    for (size_t t = 0; t < free.size(); ++t) {
        k(free[t], t) = m.one();
        for (size_t i = 0; i < e.pivots.size(); ++i) k(e.pivots[i], t) = -e.R(i, free[t]);
    }
    return k;
}

// Particular solution of m x = b (b may have several columns), if any.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& m, const Mat<T>& b) {
    auto e = rref(m.hcat(b));
    Mat<T> x(m.c, b.c, m.z);
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        size_t p = e.pivots[i];
        if (p >= m.c) return std::nullopt;
        for (size_t j = 0; j < b.c; ++j) x(p, j) = e.R(i, m.c + j);
    }
    return x;
}

template <class T>
std::optional<std::vector<T>> solve_vec(const Mat<T>& m, const std::vector<T>& b) {
    auto x = solve(m, Mat<T>::column(b, m.z));
    if (!x) return std::nullopt;
    return x->col(0);
}

// Column basis of the column space (pivot columns of m).
template <class T>
Mat<T> image(const Mat<T>& m) {
    auto e = rref(m);
    return m.cols(e.pivots);
}

}  // namespace vbc
