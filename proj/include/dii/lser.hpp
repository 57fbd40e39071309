#pragma once

// Numerical L-values of level-one eigenforms: Hecke L-functions at critical
// integers, Petersson norms and adjoint L-values by Rankin–Selberg against
// the real-analytic Eisenstein series, and recovery of exact values in the
// Hecke field from their real embeddings.

#include <vector>

#include "dii/exactnum.hpp"
#include "dii/forms1.hpp"
#include "dii/mp.hpp"

namespace dii::lser {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::Rational;
using mp::Ball;
using mp::Real;

// Real roots of the defining polynomial of K in increasing order, at the
// working precision. Fields with complex embeddings are rejected.
std::vector<Real> real_embeddings(const FieldPtr& K);
Real embed(const NFElem& x, const Real& root);

// Number of q-expansion coefficients needed so that the tail of f at
// Im z >= y_min is below 2^-bits.
size_t coefficients_needed(int w, double y_min, long bits);

// The form f under one real embedding, with enough coefficients for the
// working precision.
struct EmbeddedForm {
    int weight = 0;
    std::vector<Real> a; // a[0] = 0, a[1] = 1, ...
};

EmbeddedForm embed_form(const forms1::PrimitiveForm& f, size_t embedding, size_t count = 0);

// L(l, f x chi_D) at an integer 1 <= l <= w-1. The root number of the twist
// is fixed by evaluating the splitting identity at two points.
Ball hecke_L(const EmbeddedForm& f, int l, long D = 1);

// Real-analytic Eisenstein series E(z, m) = sum over Gamma_oo \ Gamma of
// Im(gz)^m at an integer m >= 2.
Real eisenstein_real_analytic(const Real& x, const Real& y, int m);

// <f, f> = integral over the fundamental domain of |f|^2 y^w dx dy / y^2.
Ball petersson_numeric(const EmbeddedForm& f);
// Same integral weighted by E(z, m).
Ball rankin_selberg_integral(const EmbeddedForm& f, int m);

// A form of weight lambda + 1/2 on Gamma0(4) under one real embedding, given
// by its expansions at the cusps oo, 0 and 1/2 (see halfint::cusp_expansions).
struct HalfIntegralCharts {
    int lambda = 0;
    std::vector<Real> infinity; // g = sum infinity[n] q^n
    std::vector<Real> zero;     // G0 = sum zero[n] q^n
    std::vector<Real> half;     // Ghalf = q^half_offset sum half[m] q^m
    Rational half_offset;
};

// <g, g> = (1/6) integral over Gamma0(4) \ H of |g|^2 y^(lambda + 1/2) dx dy / y^2,
// as the sum over the six translates of the level-one fundamental domain.
Ball petersson_halfint(const HalfIntegralCharts& g);

// Local factor of L(s, Ad f) at p as a cubic in X = p^-s:
// (1 - X)(1 - (a_p^2 / p^(w-1) - 2) X + X^2). Entry i is the coefficient of X^i.
std::vector<NFElem> adjoint_local_factor(const NFElem& ap, long p, int w);

// L(m, Ad f) = L(m + w - 1, Sym^2 f) for an integer m >= 2.
Ball L_adjoint_numeric(const EmbeddedForm& f, int m);

// Gamma_C(m) Gamma_C(m + w - 1) L(m, Ad f) / <f, f>.
Ball adjoint_normalized_numeric(const EmbeddedForm& f, int m);
// Same for several embeddings of one form, sharing the quadrature.
std::vector<Ball> adjoint_normalized_numeric(const std::vector<EmbeddedForm>& fs, int m);

// Rational with denominator at most max_den closest to x, by continued
// fractions; fails when the residual is not below tol.
bool recognize_rational(const Real& x, const Integer& max_den, const Real& tol, Rational& out);

// Element of K whose images under the real embeddings are the given values.
// Power-basis coordinates are recovered as rationals; fails with
// insufficient_precision when no candidate of bounded height fits.
NFElem reconstruct(const FieldPtr& K, const std::vector<Real>& values);

struct AdjointValue {
    forms1::PrimitiveForm form;
    int m = 0;
    NFElem value;
    long precision_bits = 0;
    bool verified = false; // reconstruction unchanged after doubling precision_bits
    std::vector<Ball> numeric; // one per real embedding, at the lower precision
};

// Exact normalized adjoint value for odd m >= 3, certified by stability of
// the reconstruction under doubling the precision.
AdjointValue adjoint_normalized(const forms1::PrimitiveForm& f, int m, long bits = 256);

} // namespace dii::lser
