#pragma once

// Siegel series polynomials F_p(T, X) for the shapes the lift formulas need,
// and local representation densities by the hyperbolic space, counted
// exactly, as an independent check.

#include <string>
#include <vector>

#include "dii/exactnum.hpp"
#include "dii/qforms.hpp"

namespace dii::siegel {

using exactnum::Integer;
using exactnum::Rational;
using qforms::HalfIntegralMatrix;

struct SiegelPolynomial {
    long p = 0;
    int n = 0;
    int ord_det = 0; // ord_p det(2T)
    int nu = 0;      // ord_p of the conductor f_T (n even); ord_p(T) for n = 1
    int chi = 0;     // chi_{d_T}(p) (n even)
    std::vector<Integer> coeffs; // coefficient of X^i
    std::string family;
    bool oracle_checked = false; // agreed with the counting oracle for this invariant class

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rational eval(const Rational& X) const;
    // "p=2 n=2 ord=2 nu=1 chi=-1 [1,-2,8]"
    std::string serialize() const;
};

// Supported shapes: n = 1; n even with nu_p(f_T) = 0; n = 2 arbitrary; n = 4 mod 8
// with det(2T) = p^2. Anything else raises ErrorKind::unsupported.
SiegelPolynomial siegel_series(const HalfIntegralMatrix& T, long p);

// For n even: X^-nu F(p^-(n+1)/2 X) is invariant under X -> 1/X.
bool check_functional_equation(const SiegelPolynomial& F);

// Local factor gamma_p(T, X) with b_p(T, X) = gamma_p(T, X) F_p(T, X), n <= 2 or n even.
Rational gamma_factor(const HalfIntegralMatrix& T, long p, const Rational& X);

struct LocalDensityRequest {
    HalfIntegralMatrix T; // degree 1 or 2
    int rank = 0;         // the representing form is a sum of rank/2 hyperbolic planes
    long p = 0;
    int nu = 0;           // count modulo p^nu
};

// Smallest exponent at which the count has stabilized: ord_p det(2T) + 2,
// one more at p = 2.
int stable_exponent(const HalfIntegralMatrix& T, long p);

// p^(nu (n(n+1)/2 - rank n)) #{X mod p^nu : H[X] = T mod p^nu}, where H[X] = T
// is read on the diagonal of T and on the off-diagonal of 2T. Equals
// gamma_p(T, p^(-rank/2)) F_p(T, p^(-rank/2)).
Rational local_density_count(const LocalDensityRequest& req);

// Same count by direct enumeration of all X (tiny cases only).
Rational local_density_bruteforce(const LocalDensityRequest& req);

} // namespace dii::siegel
