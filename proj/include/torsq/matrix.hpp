// Dense exact matrices over an arbitrary field scalar (Rational,
// GaussianRational, FFElem).  Column convention: matrices act on column
// vectors, kernel() is the right kernel.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace torsq {

template <class K>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(size_t r, size_t c, const K& fill) : rows(r), cols(c), a(r * c, fill) {}

    static Matrix zeros(size_t r, size_t c, const K& exemplar) {
        return Matrix(r, c, zero_like(exemplar));
    }
    static Matrix identity(size_t n, const K& exemplar) {
        Matrix m = zeros(n, n, exemplar);
        K one = one_like(exemplar);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    K& at(size_t i, size_t j) { return a[i * cols + j]; }
    const K& at(size_t i, size_t j) const { return a[i * cols + j]; }

    bool operator==(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == o.a[i])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] - o.a[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a) x = -x;
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("Matrix: shape mismatch");
        K z = a.empty() ? (o.a.empty() ? K() : zero_like(o.a[0])) : zero_like(a[0]);
        Matrix r(rows, o.cols, z);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                const K& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < o.cols; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }
    Matrix operator*(const K& s) const {
        Matrix r = *this;
        for (auto& x : r.a) x = x * s;
        return r;
    }

    Matrix transpose() const {
        if (a.empty()) {
            Matrix r;
            r.rows = cols;
            r.cols = rows;
            return r;
        }
        Matrix r(cols, rows, zero_like(a[0]));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != cols) throw std::invalid_argument("Matrix::apply: size");
        K z = a.empty() ? K() : zero_like(a[0]);
        std::vector<K> r(rows, z);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix pow(size_t e, const K& exemplar) const {
        Matrix r = identity(rows, exemplar), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    bool is_square() const { return rows == cols; }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < rows; ++i) {
            s += i ? "; " : "";
            for (size_t j = 0; j < cols; ++j) s += (j ? " " : "") + at(i, j).to_string();
        }
        return s + "]";
    }
};

// Row echelon reduction in place; returns pivot columns.  det_out (optional)
// receives the determinant when the matrix is square.
template <class K>
std::vector<size_t> rref(Matrix<K>& m, K* det_out = nullptr) {
    std::vector<size_t> pivots;
    if (m.a.empty()) {
        if (det_out && m.rows == 0) *det_out = K();
        return pivots;
    }
    K det = one_like(m.a[0]);
    bool det_zero = false;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t piv = row;
        while (piv < m.rows && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows) {
            det_zero = true;
            continue;
        }
        if (piv != row) {
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
            det = -det;
        }
        K inv = one_like(m.a[0]) / m.at(row, col);
        det = det * m.at(row, col);
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            K f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    if (det_out) {
        if (m.rows != m.cols || det_zero || pivots.size() != m.rows)
            *det_out = m.a.empty() ? K() : zero_like(m.a[0]);
        else
            *det_out = det;
    }
    return pivots;
}

template <class K>
size_t rank(Matrix<K> m) {
    return rref(m).size();
}

template <class K>
K det(Matrix<K> m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    if (m.rows == 0) throw std::invalid_argument("det: empty");
    K d = zero_like(m.a[0]);
    rref(m, &d);
    return d;
}

template <class K>
bool try_inverse(const Matrix<K>& m, Matrix<K>& out) {
    if (!m.is_square()) return false;
    size_t n = m.rows;
    if (n == 0) {
        out = m;
        return true;
    }
    Matrix<K> aug(n, 2 * n, zero_like(m.a[0]));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = one_like(m.a[0]);
    }
    auto piv = rref(aug);
    if (piv.size() != n || piv[n - 1] != n - 1) return false;
    out = Matrix<K>::zeros(n, n, m.a[0]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return true;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
    Matrix<K> out;
    if (!try_inverse(m, out)) throw std::domain_error("Matrix: singular");
    return out;
}

// Basis of { x : m x = 0 } as columns.
template <class K>
std::vector<std::vector<K>> right_kernel(Matrix<K> m) {
    if (m.cols == 0) return {};
    K exemplar = m.a.empty() ? K() : m.a[0];
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (size_t freecol = 0; freecol < m.cols; ++freecol) {
        if (is_pivot[freecol]) continue;
        std::vector<K> v(m.cols, zero_like(exemplar));
        v[freecol] = one_like(exemplar);
        for (size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < freecol) v[pivots[r]] = -m.at(r, freecol);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, if any.
template <class K>
bool solve(const Matrix<K>& m, const std::vector<K>& b, std::vector<K>& x) {
    K exemplar = m.a.empty() ? (b.empty() ? K() : b[0]) : m.a[0];
    Matrix<K> aug(m.rows, m.cols + 1, zero_like(exemplar));
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto pivots = rref(aug);
    for (size_t p : pivots)
        if (p == m.cols) return false;  // inconsistent
    x.assign(m.cols, zero_like(exemplar));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return true;
}

// Characteristic polynomial det(lambda I - A), coefficients low-to-high,
// leading coefficient 1.  Berkowitz: division-free, any characteristic.
template <class K>
std::vector<K> charpoly(const Matrix<K>& A) {
    if (!A.is_square()) throw std::invalid_argument("charpoly: not square");
    size_t n = A.rows;
    K one = one_like(A.a[0]);
    K zero = zero_like(A.a[0]);
    // p holds coefficients highest-degree-first
    std::vector<K> p = {one};
    for (size_t k = 1; k <= n; ++k) {
        // principal k x k block data
        std::vector<K> R(k - 1), C(k - 1);
        for (size_t j = 0; j < k - 1; ++j) {
            R[j] = A.at(k - 1, j);
            C[j] = A.at(j, k - 1);
        }
        std::vector<K> c(k + 1, zero);
        c[0] = one;
        c[1] = -A.at(k - 1, k - 1);
        std::vector<K> w = C;
        for (size_t j = 2; j <= k; ++j) {
            K dot = zero;
            for (size_t t = 0; t < k - 1; ++t) dot += R[t] * w[t];
            c[j] = -dot;
            if (j < k) {
                std::vector<K> w2(k - 1, zero);
                for (size_t i2 = 0; i2 < k - 1; ++i2)
                    for (size_t t = 0; t < k - 1; ++t) w2[i2] += A.at(i2, t) * w[t];
                w = std::move(w2);
            }
        }
        std::vector<K> pn(k + 1, zero);
        for (size_t i2 = 0; i2 < p.size(); ++i2)
            for (size_t j = 0; j + i2 <= k; ++j) pn[i2 + j] += c[j] * p[i2];
        p = std::move(pn);
    }
    std::reverse(p.begin(), p.end());  // low-to-high
    return p;
}

// det(I - t A) as a polynomial in t: the coefficient-reversal of charpoly.
template <class K>
std::vector<K> det_one_minus_t(const Matrix<K>& A) {
    auto chi = charpoly(A);
    std::reverse(chi.begin(), chi.end());
    return chi;
}

}  // namespace torsq
