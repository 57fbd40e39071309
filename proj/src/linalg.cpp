#include "dii/linalg.hpp"

#include <algorithm>

namespace dii::linalg {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::Rational;

KMat to_field(const QMat& a, const FieldPtr& K) {
    KMat r;
    for (auto& row : a) r.push_back(to_field(row, K));
    return r;
}

KVec to_field(const QVec& a, const FieldPtr& K) {
    KVec r;
    for (auto& x : a) r.push_back(K->from_rational(x));
    return r;
}

ZMat hermite_rows(ZMat a) {
    if (a.empty()) return a;
    size_t cols = a[0].size(), row = 0;
    for (size_t c = 0; c < cols && row < a.size(); ++c) {
        for (;;) {
            size_t piv = a.size();
            for (size_t r = row; r < a.size(); ++r)
                if (a[r][c] != 0 && (piv == a.size() || abs(a[r][c]) < abs(a[piv][c]))) piv = r;
            if (piv == a.size()) break;
            std::swap(a[row], a[piv]);
            bool done = true;
            for (size_t r = row + 1; r < a.size(); ++r) {
                if (a[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
                for (size_t j = c; j < cols; ++j) a[r][j] -= q * a[row][j];
                if (a[r][c] != 0) done = false;
            }
            if (done) {
                if (a[row][c] < 0)
                    for (size_t j = c; j < cols; ++j) a[row][j] = -a[row][j];
                // reduce entries above the pivot
                for (size_t r = 0; r < row; ++r) {
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
                    if (q != 0)
                        for (size_t j = c; j < cols; ++j) a[r][j] -= q * a[row][j];
                }
                ++row;
                break;
            }
        }
    }
    a.resize(row);
    return a;
}

ZMat saturate_rows(const ZMat& a) {
    if (a.empty()) return a;
    size_t n = a[0].size();
    // Saturation = integer kernel of the rational kernel.
    QMat q;
    for (auto& r : a) {
        QVec v;
        for (auto& x : r) v.emplace_back(x);
        q.push_back(v);
    }
    QMat ker = kernel(q, n, Rational(0), Rational(1));
    if (ker.empty()) return identity(n, Integer(0), Integer(1));
    // integer basis of the kernel of ker (as rows): solve via HNF of the
    // integer relation lattice using the standard extended-column trick.
    size_t k = ker.size();
    Integer den = common_denominator(ker);
    // Matrix M (n x k) with integer entries; we want {x in Z^n : x M = 0}.
    ZMat aug(n, std::vector<Integer>(k + n, Integer(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) aug[i][j] = Rational(ker[j][i] * den).get_num();
        aug[i][k + i] = 1;
    }
    ZMat h = hermite_rows(aug);
    ZMat out;
    for (auto& r : h) {
        bool zero = true;
        for (size_t j = 0; j < k; ++j)
            if (r[j] != 0) zero = false;
        if (zero) out.emplace_back(r.begin() + k, r.end());
    }
    return hermite_rows(out);
}

Integer common_denominator(const QMat& a) {
    Integer d = 1;
    for (auto& r : a)
        for (auto& x : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
    return d;
}

int ord_det(const KMat& a, const exactnum::PrimeIdeal& P) {
    size_t n = a.size();
    KMat m = a;
    int total = 0;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        int best = 0;
        for (size_t r = c; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            int o = P.ord(m[r][c]);
            if (piv == n || o < best) {
                piv = r;
                best = o;
            }
        }
        require(piv != n, "singular matrix in ord_det");
        std::swap(m[piv], m[c]);
        total += best;
        NFElem inv = m[c][c].inverse();
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            NFElem t = m[r][c] * inv;
            for (size_t j = c; j < n; ++j)
                if (!m[c][j].is_zero()) m[r][j] -= t * m[c][j];
        }
    }
    return total;
}

} // namespace dii::linalg
