#pragma once

// Dense linear algebra over exact fields (rationals or number field
// elements) and Smith-style elimination over a discrete valuation ring.

#include <functional>
#include <utility>
#include <vector>

#include "dii/error.hpp"
#include "dii/exactnum.hpp"

namespace dii::linalg {

template <class T>
using Mat = std::vector<std::vector<T>>;
template <class T>
using Vec = std::vector<T>;

using QMat = Mat<exactnum::Rational>;
using QVec = Vec<exactnum::Rational>;
using KMat = Mat<exactnum::NFElem>;
using KVec = Vec<exactnum::NFElem>;

// Zero test usable for both scalar kinds.
inline bool is_zero(const exactnum::Rational& x) { return x == 0; }
inline bool is_zero(const exactnum::NFElem& x) { return x.is_zero(); }

template <class T>
Mat<T> transpose(const Mat<T>& a) {
    if (a.empty()) return {};
    Mat<T> t(a[0].size(), Vec<T>(a.size(), a[0][0]));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

template <class T>
Mat<T> multiply(const Mat<T>& a, const Mat<T>& b, const T& zero) {
    size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    Mat<T> c(n, Vec<T>(m, zero));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (size_t j = 0; j < m; ++j)
                if (!is_zero(b[l][j])) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

template <class T>
Vec<T> apply(const Mat<T>& a, const Vec<T>& v, const T& zero) {
    Vec<T> r(a.size(), zero);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!is_zero(a[i][j]) && !is_zero(v[j])) r[i] += a[i][j] * v[j];
    return r;
}

// In-place reduced row echelon form; returns pivot columns.
template <class T>
std::vector<size_t> rref(Mat<T>& a) {
    std::vector<size_t> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        T inv = T(a[r][c]);
        if constexpr (std::is_same_v<T, exactnum::Rational>) {
            inv = 1 / inv;
        } else {
            inv = inv.inverse();
        }
        for (size_t j = c; j < cols; ++j)
            if (!is_zero(a[r][j])) a[r][j] = a[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            T t = a[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!is_zero(a[r][j])) a[i][j] -= t * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    return pivots;
}

template <class T>
size_t rank(Mat<T> a) {
    return rref(a).size();
}

// Basis of the right kernel {v : a v = 0}; a has ncols columns.
template <class T>
Mat<T> kernel(Mat<T> a, size_t ncols, const T& zero, const T& one) {
    Mat<T> basis;
    auto piv = rref(a);
    std::vector<bool> is_piv(ncols, false);
    for (auto c : piv) is_piv[c] = true;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Vec<T> v(ncols, zero);
        v[f] = one;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves x * B = target for row vector x, where the rows of B are linearly
// independent; returns false if target is not in the row span.
template <class T>
bool solve_in_span(const Mat<T>& B, const Vec<T>& target, Vec<T>& x, const T& zero, const T& one) {
    size_t k = B.size();
    if (k == 0) {
        for (auto& t : target)
            if (!is_zero(t)) return false;
        x.clear();
        return true;
    }
    size_t n = target.size();
    // augmented system: columns are B rows; solve B^t x = target
    Mat<T> aug(n, Vec<T>(k + 1, zero));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) aug[i][j] = B[j][i];
        aug[i][k] = target[i];
    }
    auto piv = rref(aug);
    x.assign(k, zero);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == k) return false;
        x[piv[r]] = aug[r][k];
    }
    (void)one;
    return true;
}

template <class T>
Mat<T> identity(size_t n, const T& zero, const T& one) {
    Mat<T> m(n, Vec<T>(n, zero));
    for (size_t i = 0; i < n; ++i) m[i][i] = one;
    return m;
}

// Converts a rational matrix into one over the field K.
KMat to_field(const QMat& a, const exactnum::FieldPtr& K);
KVec to_field(const QVec& a, const exactnum::FieldPtr& K);

// Integer matrix helpers.
using ZMat = Mat<exactnum::Integer>;

// Hermite normal form (row-style, upper triangular, positive pivots) of the
// row lattice; zero rows dropped.
ZMat hermite_rows(ZMat a);

// Basis of the saturation (L tensor Q) cap Z^n of the row lattice L.
ZMat saturate_rows(const ZMat& a);

// Smallest common denominator of all entries.
exactnum::Integer common_denominator(const QMat& a);

// Valuation of the determinant (index) of a square matrix over the local
// ring at P, by elimination with pivots of minimal P-order. Entries must be
// P-integral for the answer to be an index; general entries give ord(det).
int ord_det(const KMat& a, const exactnum::PrimeIdeal& P);

} // namespace dii::linalg
