#pragma once

// Modular forms of weight lambda + 1/2 on Gamma0(4): the basis of monomials
// theta^(2 lambda + 1 - 4j) F^j, the Kohnen plus space, the Hecke operators
// T(p^2) for odd p and matching of plus-space eigenforms with level-one
// newforms of weight 2 lambda.

#include <string>
#include <vector>

#include "dii/exactnum.hpp"
#include "dii/forms1.hpp"
#include "dii/linalg.hpp"
#include "dii/qexp.hpp"

namespace dii::halfint {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::Rational;
using qexp::KSeries;
using qexp::QSeries;
using qexp::ZSeries;

struct HalfIntForm {
    int lambda = 0; // weight lambda + 1/2
    KSeries q_expansion;
    bool plus = false;

    const NFElem& coeff(size_t e) const { return q_expansion.c.at(e); }
    size_t precision() const { return q_expansion.precision(); }
};

// 1 + 2 sum q^(n^2), weight 1/2.
ZSeries theta(size_t prec);
// sum over odd m of sigma_1(m) q^m, weight 2.
ZSeries f2_generator(size_t prec);

// theta^(2 lambda + 1 - 4j) F^j for j = 0 .. floor(lambda/2); element j
// starts with q^j.
std::vector<ZSeries> basis_halfint(int lambda, size_t prec);

// Whether (-1)^lambda e = 0, 1 mod 4.
bool plus_index(int lambda, long e);

struct PlusSpace {
    int lambda = 0;
    size_t precision = 0;
    // Coordinates on basis_halfint, reduced echelon on the coefficients.
    std::vector<linalg::QVec> modular_coords;
    std::vector<linalg::QVec> cusp_coords;
    std::vector<QSeries> modular;
    std::vector<QSeries> cusp;
    // cusp[i] has coefficient 1 at cusp_pivots[i] and 0 at the other pivots
    std::vector<size_t> cusp_pivots;
};

// Plus space of weight lambda + 1/2 and its cuspidal part; dimensions are
// checked against level one in weight 2 lambda.
PlusSpace plus_space(int lambda, size_t prec = 0);

// c(n) -> c(p^2 n) + ((-1)^lambda n / p) p^(lambda-1) c(n) + p^(2 lambda - 1) c(n/p^2);
// output precision floor(N / p^2).
HalfIntForm hecke_Tp2(const HalfIntForm& g, long p);
QSeries hecke_Tp2(const QSeries& g, long p, int lambda);

// Matrix of T(p^2) on the cuspidal plus-space basis (column j = image of
// element j).
linalg::QMat hecke_matrix_plus(const PlusSpace& S, long p);

struct PlusEigenform {
    HalfIntForm form;
    forms1::PrimitiveForm matched;
    // index e of the coefficient scaled to 1: the first e with
    // (-1)^lambda e a fundamental discriminant (or 1) and c(e) != 0
    long normalizing_index = 0;
    std::string scaling = "earliest-fundamental-coefficient-one";
    // coordinates on the cuspidal plus-space basis, after scaling
    std::vector<NFElem> coords;
};

// Pairs each eigenform of the cuspidal plus space with the level-one form of
// weight 2 lambda having the same eigenvalues at p = 3, 5, 7. Output q-expansions
// have at least prec coefficients.
std::vector<PlusEigenform> shimura_match(int lambda, size_t prec = 0);

// Recomputes the q-expansion of a matched eigenform to a new precision.
HalfIntForm extend(const PlusEigenform& g, int lambda, size_t prec);

// Expansions of a form of weight k = lambda + 1/2 at the three cusps of
// Gamma0(4), from its coordinates b_j on basis_halfint:
//   g(-1/(4z))       = (-2iz)^k G0(z),   G0   = sum_j b_j 16^-j theta^(a_j) U^j,
//   g(1/2 - 1/(4z))  = (-2iz)^k Ghalf(z), Ghalf = sum_j b_j 2^(a_j) (-1/16)^j W^(a_j) U^j,
// with a_j = 2 lambda + 1 - 4j, U = eta(z)^8 / eta(2z)^4 and
// W = eta(4z)^2 / eta(2z) = sum_{n>=0} q^((2n+1)^2/4).
struct CuspExpansions {
    int lambda = 0;
    KSeries infinity;
    KSeries zero;      // G0 in integral powers of q
    KSeries half;      // Ghalf = q^half_offset * sum half[m] q^m
    Rational half_offset; // 1/4 (lambda even) or 3/4 (lambda odd)
};

// Coordinates of a matched eigenform on basis_halfint.
std::vector<NFElem> monomial_coords(const PlusEigenform& g, int lambda);
CuspExpansions cusp_expansions(int lambda, const std::vector<NFElem>& monomial_coords, size_t prec);

// Nonzero coefficients c(e), e < bound, generating the coefficient ideal.
std::vector<NFElem> coefficient_generators(const HalfIntForm& g, size_t bound);

} // namespace dii::halfint
