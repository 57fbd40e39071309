#pragma once

// Half-integral symmetric matrices: discriminant splitting, Hilbert symbols
// and Hasse invariants, enumeration of positive definite classes of small
// degree, and constructive search for lattices with prescribed determinant.

#include <string>
#include <vector>

#include "dii/exactnum.hpp"

namespace dii::qforms {

using exactnum::Integer;
using exactnum::Rational;

// Stored through the even integral matrix 2T (row-major).
class HalfIntegralMatrix {
public:
    HalfIntegralMatrix() = default;
    // Entries of 2T; the diagonal must be even and the matrix symmetric.
    HalfIntegralMatrix(int n, std::vector<long> twice);
    static HalfIntegralMatrix from_rationals(const std::vector<std::vector<Rational>>& t);
    static HalfIntegralMatrix identity(int n);
    // [[a, b/2], [b/2, c]]
    static HalfIntegralMatrix binary(long a, long b, long c);

    int degree() const { return n_; }
    long twice(int i, int j) const { return g_[static_cast<size_t>(i * n_ + j)]; }
    const std::vector<long>& twice_entries() const { return g_; }
    Rational entry(int i, int j) const;

    // det(2T).
    Integer det2() const;
    bool is_positive_definite() const;
    // gcd of the diagonal entries of T and the off-diagonal entries of 2T.
    Integer content() const;

    HalfIntegralMatrix direct_sum(const HalfIntegralMatrix& o) const;
    // T[U] = U^t T U for an integer n x n matrix U (row-major).
    HalfIntegralMatrix transform(const std::vector<long>& U) const;
    HalfIntegralMatrix scaled(long s) const;

    // Row-major 2T as "[[2,1],[1,2]]".
    std::string serialize() const;
    std::string to_string() const; // rational entries of T

    bool operator==(const HalfIntegralMatrix& o) const { return n_ == o.n_ && g_ == o.g_; }
    bool operator!=(const HalfIntegralMatrix& o) const { return !(*this == o); }
    bool operator<(const HalfIntegralMatrix& o) const;

private:
    int n_ = 0;
    std::vector<long> g_;
};

// (-1)^(n/2) det(2T) = d f^2 with d a fundamental discriminant or 1.
struct DiscriminantData {
    Integer d;
    Integer f;
    Integer det2T;
};

DiscriminantData disc_split(const HalfIntegralMatrix& T);

// Hilbert symbol (a, b)_p; p = 0 denotes the real place.
int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p);
// Diagonal entries of a form rationally equivalent to T (leading minors must
// be nonzero).
std::vector<Rational> diagonalize(const HalfIntegralMatrix& T);
// prod_{i<j} (a_i, a_j)_p.
int hasse_invariant(const std::vector<Rational>& diag, const Integer& p);

// Gram matrices (halved) of built-in lattices.
HalfIntegralMatrix e8();
HalfIntegralMatrix d4(); // 1_3 extended by (1/2, 1/2, 1/2, 1); det(2T) = 4

enum class LatticeMode {
    fundamental, // (-1)^(n/2) det(2T) = d, d != 1 fundamental
    unimodular,  // det(2T) = 1, n = 0 mod 8
    q_squared,   // det(2T) = q^2, n = 4 mod 8
};

struct SearchLimits {
    long max_diagonal = 40; // largest diagonal entry of 2T tried
};

// Positive definite T of degree n with the requested determinant; search
// failure raises search_exhausted (which says nothing about existence).
HalfIntegralMatrix construct_lattice(int n, const Integer& d, LatticeMode mode, long q = 0,
                                     const SearchLimits& limits = {});

// Representatives of the GL_n(Z) classes of positive definite T with
// det(2T) <= max_det2 (n even) or det(2T)/2 <= max_det2 (n odd), n <= 4,
// sorted by determinant then entries.
std::vector<HalfIntegralMatrix> enumerate_pd(int n, long max_det2);

// Whether S[U] = T for some U in GL_n(Z).
bool equivalent(const HalfIntegralMatrix& S, const HalfIntegralMatrix& T);

// Canonical GL_2(Z) representative [[a, b/2], [b/2, c]] with 0 <= b <= a <= c.
HalfIntegralMatrix reduce_binary(const HalfIntegralMatrix& T);

} // namespace dii::qforms
