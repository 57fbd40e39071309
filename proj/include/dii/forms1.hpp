#pragma once

// Level-one elliptic modular forms: Miller basis, Hecke operators and
// normalized eigenforms over their Hecke fields.

#include <vector>

#include "dii/exactnum.hpp"
#include "dii/linalg.hpp"
#include "dii/qexp.hpp"

namespace dii::forms1 {

using exactnum::FieldPtr;
using exactnum::NFElem;
using exactnum::Rational;
using qexp::KSeries;
using qexp::QSeries;

int dim_modular(int w);
int dim_cusp(int w);
// Default coefficient count: max(2 * (w/12 + 1), 50).
size_t default_precision(int w);

struct MillerBasis {
    int weight = 0;
    size_t precision = 0;
    // Reduced echelon basis of M_w: element i starts with q^i.
    std::vector<QSeries> modular;
    // Cuspidal part: element i starts with q^(i+1).
    std::vector<QSeries> cusp;
};

MillerBasis miller_basis(int w, size_t prec);

// a(n) -> a(pn) + p^(w-1) a(n/p); output precision floor(N/p).
QSeries hecke_Tp(const QSeries& F, long p, int w);
KSeries hecke_Tp(const KSeries& F, long p, int w);

// Matrix of T_p on the cuspidal Miller basis; column j holds the
// coordinates of T_p applied to basis element j.
linalg::QMat hecke_matrix(const MillerBasis& B, long p);

struct PrimitiveForm {
    int weight = 0;
    FieldPtr hecke_field;
    KSeries q_expansion;
    bool normalized = true;

    const NFElem& coeff(size_t n) const { return q_expansion.c.at(n); }
    size_t precision() const { return q_expansion.precision(); }
};

// Normalized eigenforms of S_w, one per Galois orbit; for quadratic orbits
// the conjugate form is included as well, sharing the same field.
std::vector<PrimitiveForm> eigenforms(int w, size_t prec = 0);

// Galois conjugate of a form over a quadratic field.
PrimitiveForm conjugate(const PrimitiveForm& f);

// Checks a(mn) = a(m)a(n) for coprime m, n and the prime-power recursion on
// all indices below the precision.
bool check_multiplicativity(const PrimitiveForm& f);

// Sturm bound w/12 for level one.
long sturm_bound(int w);

} // namespace dii::forms1
