#pragma once

// Level-one modular symbols of weight w with polynomial coefficients:
// Hecke and star actions, eigen-functionals, exact critical L-values
// relative to an integral lattice, and the congruence-number valuation.

#include <vector>

#include "dii/exactnum.hpp"
#include "dii/forms1.hpp"
#include "dii/linalg.hpp"

namespace dii::msym {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::PrimeIdeal;
using exactnum::Rational;
using linalg::QMat;
using linalg::QVec;

// Homogeneous polynomial of degree w-2: entry i is the coefficient of X^i Y^(w-2-i).
using Poly = std::vector<Rational>;

struct ModularSymbolSpace {
    int weight = 0;
    // Generators are the symbols X^i Y^(w-2-i) {0, oo}, i = 0 .. w-2.
    size_t num_generators = 0;
    // Coordinates of every generator in the quotient basis (rows).
    QMat reduce;
    // Generators that form the quotient basis.
    std::vector<size_t> basis_generators;
    // Boundary map on the quotient (one cusp): row vector.
    QVec boundary;
    // Basis of the cuspidal subspace, in quotient coordinates.
    QMat cusp_basis;

    size_t dimension() const { return basis_generators.size(); }
    size_t cuspidal_dimension() const { return cusp_basis.size(); }
};

ModularSymbolSpace build_space(int w);

// P(aX + bY, cX + dY).
Poly act(const Poly& P, const Integer& a, const Integer& b, const Integer& c, const Integer& d);

// Quotient coordinates of P {alpha, oo}; alpha = num/den with den > 0.
QVec symbol_to_infinity(const ModularSymbolSpace& S, const Poly& P, const Integer& num, const Integer& den);
// Quotient coordinates of the generator combination given by P {0, oo}.
QVec symbol_zero_infinity(const ModularSymbolSpace& S, const Poly& P);

// Matrix of T_p on the quotient; column j is the image of basis vector j.
QMat hecke_on_symbols(const ModularSymbolSpace& S, long p);
// Matrix of the star involution X^i Y^j {0,oo} -> (-1)^i X^i Y^j {0,oo}.
QMat star_involution(const ModularSymbolSpace& S);
// Restriction of a matrix to the cuspidal subspace (in cusp_basis coordinates).
QMat restrict_to_cusp(const ModularSymbolSpace& S, const QMat& M);

// Winding element X^(l-1) Y^(w-1-l) {0, oo}, in quotient coordinates.
QVec winding_element(const ModularSymbolSpace& S, int l);
// Sum over a mod |D| of chi_D(a) (|D| X - a Y)^(l-1) Y^(w-1-l) {a/|D|, oo}.
QVec twisted_winding_element(const ModularSymbolSpace& S, int l, long D);

// Which lattice the periods are normalized against.
enum class Lattice {
    cuspidal,  // integral symbols with zero boundary
    full,      // image of all integral symbols (relative homology)
};

// Hecke eigen-functional attached to a primitive form in one star eigenspace,
// together with the generators of the ideal it takes on the integral lattice.
struct IntegralEigenclassPair {
    forms1::PrimitiveForm form;
    int sign = 1;
    std::vector<NFElem> functional;   // values on the quotient basis
    std::vector<NFElem> lattice_gens; // values on a Z-basis of the lattice
    Lattice lattice = Lattice::cuspidal;

    NFElem pair(const QVec& v) const;
    // ord_P of the lattice ideal (the period normalization at P).
    int lattice_ord(const PrimeIdeal& P) const;
    Rational lattice_norm() const;
};

IntegralEigenclassPair eigen_functional(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, int sign,
                                        Lattice lattice = Lattice::cuspidal);

// Normalized critical value relative to the lattice: value / period with
// the period represented by the lattice ideal.
struct CriticalValue {
    int l = 0;
    long D = 1;
    int sign = 1;
    NFElem raw; // pairing of the (twisted) winding element, divided by D |D|^(l-1)
    std::vector<NFElem> lattice_gens;

    // ord_P of the normalized value.
    int ord(const PrimeIdeal& P) const;
    // Norm of the normalized value: N(raw) / N(lattice ideal).
    Rational norm() const;
    // A field element equal to the normalized value up to a unit at P.
    NFElem element_at(const PrimeIdeal& P) const;
    bool is_zero() const { return raw.is_zero(); }
};

// Both star eigen-functionals for f.
struct PeriodData {
    IntegralEigenclassPair plus;
    IntegralEigenclassPair minus;
    const IntegralEigenclassPair& for_sign(int s) const { return s > 0 ? plus : minus; }
};

PeriodData periods(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, Lattice lattice = Lattice::cuspidal);

// Rejects residue characteristic 2 or 3.
PeriodData periods_eta(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, const PrimeIdeal& P);

CriticalValue critical_Lvalue(const ModularSymbolSpace& S, const PeriodData& pd, int l, long D = 1);

// ord_P of the congruence number of f inside S_w, computed from the
// integral q-expansion lattice up to the Sturm bound.
int adjoint_period_ord(int w, const forms1::PrimitiveForm& f, const PrimeIdeal& P);

} // namespace dii::msym
