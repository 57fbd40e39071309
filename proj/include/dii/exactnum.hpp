#pragma once

// Exact arithmetic: big rationals, polynomials over Q, small-degree number
// fields, prime ideals and valuations, Bernoulli numbers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dii/error.hpp"

namespace dii::exactnum {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den = 1);
std::string to_string(const Integer& x);
// "num/den" (den omitted when 1).
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

// p-adic valuation; x must be nonzero.
int valuation(const Integer& x, const Integer& p);
int valuation(const Rational& x, const Integer& p);

bool is_probable_prime(const Integer& n);
// Prime factorization of |n| (n != 0) as ascending (prime, exponent) pairs.
std::vector<std::pair<Integer, int>> factor_integer(Integer n);
// Numerator and denominator factorizations merged with signed exponents.
std::vector<std::pair<Integer, int>> factor_rational(const Rational& x);
std::string factorization_string(const std::vector<std::pair<Integer, int>>& f);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

Integer binomial(long n, long k);
Integer factorial(long n);

// Kronecker symbol (D/n) for any integer D and n >= 1.
int kronecker(const Integer& D, const Integer& n);
int kronecker(long D, long n);
bool is_fundamental_discriminant(const Integer& d);
// Squarefree-kernel decomposition x = d * f^2 with d a fundamental
// discriminant (or 1); x must be a nonzero discriminant-like integer
// (x = 0 or 1 mod 4).
std::pair<Integer, Integer> fundamental_split(const Integer& x);

// B_m with B_1 = -1/2 and B_2 = 1/6.
Rational bernoulli(int m);
// Gamma_C(m) zeta(m) = (-1)^{m/2+1} B_m / m for even m >= 2.
Rational xi_tilde(int m);
// Generalized Bernoulli number B_{m, chi_D} for the Kronecker character
// of a fundamental discriminant D (D = 1 gives the ordinary B_m except
// B_1 = +1/2).
Rational generalized_bernoulli(int m, long D);
// L(1 - m, chi_D) = -B_{m, chi_D} / m.
Rational dirichlet_l_negative(int m, long D);

// Dense univariate polynomial over Q, coefficients from degree 0 upward.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly monomial(int degree, const Rational& c = 1);
    static QPoly constant(const Rational& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational leading() const;
    Rational eval(const Rational& x) const;
    QPoly derivative() const;
    QPoly monic() const;
    // Algebraic integrality (minimal polynomial test beyond degree 2).
    bool is_integral() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    // Euclidean division; divisor nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly operator%(const QPoly& d) const { return divmod(d).second; }
    QPoly operator/(const QPoly& d) const { return divmod(d).first; }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

QPoly gcd(QPoly a, QPoly b);
Rational discriminant(const QPoly& f);
Rational resultant(const QPoly& f, const QPoly& g);
// Monic irreducible factors over Q with multiplicity, sorted by degree then
// coefficients. Input must be nonconstant.
std::vector<QPoly> factor_over_q(const QPoly& f);
bool is_squarefree(const QPoly& f);
// Characteristic polynomial det(x I - M) of a square rational matrix.
QPoly charpoly(const std::vector<std::vector<Rational>>& m);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of Q[x]/(h) in power-basis coordinates.
class NFElem {
public:
    NFElem() = default;
    NFElem(FieldPtr field, std::vector<Rational> coords);
    NFElem(FieldPtr field, const Rational& r);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()); }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator-() const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator*(const Rational& s) const;
    NFElem operator/(const NFElem& o) const;
    NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
    NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
    NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
    bool operator==(const NFElem& o) const;
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    NFElem inverse() const;
    NFElem pow(long e) const;
    Rational norm() const;
    Rational trace() const;
    QPoly minimal_polynomial() const;
    QPoly as_poly() const { return QPoly(c_); }
    // Coordinates relative to the field's integral basis.
    std::vector<Rational> integral_coords() const;
    // Algebraic integrality (minimal polynomial test beyond degree 2).
    bool is_integral() const;

    std::string to_string(const std::string& var = "a") const;

private:
    FieldPtr field_;
    std::vector<Rational> c_;
};

inline NFElem operator*(const Rational& s, const NFElem& x) { return x * s; }

// Q[x]/(h) for a monic irreducible integer polynomial h. For degree <= 2
// the maximal order is known exactly; for higher degree arithmetic of
// ideals is restricted to primes not dividing disc(h).
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr create(const QPoly& minpoly, bool check_irreducible = true);
    static FieldPtr rationals();

    const QPoly& minpoly() const { return h_; }
    int degree() const { return h_.degree(); }
    const std::vector<std::vector<Rational>>& integral_basis() const { return basis_; }
    const Integer& discriminant() const { return disc_; } // disc of the maximal order when known
    bool maximal_order_known() const { return degree() <= 2; }
    // Fundamental discriminant d_K for quadratic fields.
    const Integer& quadratic_discriminant() const;

    NFElem zero() const;
    NFElem one() const;
    NFElem gen() const;
    NFElem from_rational(const Rational& r) const;
    NFElem element(std::vector<Rational> coords) const;

    bool same(const NumberField& o) const { return h_ == o.h_; }
    // Multiplication table reduction of x^i for i < 2*degree - 1.
    const std::vector<std::vector<Rational>>& power_reduction() const { return xpow_; }
    // Matrix of the integral basis in power-basis coordinates and its inverse.
    const std::vector<std::vector<Rational>>& basis_inverse() const { return basis_inv_; }

private:
    NumberField() = default;
    QPoly h_;
    Integer disc_;
    Integer dk_;
    std::vector<std::vector<Rational>> basis_;
    std::vector<std::vector<Rational>> basis_inv_;
    std::vector<std::vector<Rational>> xpow_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

// Prime ideal of the maximal order (degree <= 2) or of Z[x] at a prime not
// dividing the polynomial discriminant.
class PrimeIdeal {
public:
    enum class Kind { rational, split, inert, ramified, unramified_general };

    const FieldPtr& field() const { return field_; }
    const Integer& p() const { return p_; }
    int residue_degree() const { return f_; }
    int ramification() const { return e_; }
    const NFElem& generator() const { return alpha_; } // P = (p, generator)
    Integer norm() const;
    Kind kind() const { return kind_; }

    // ord_P of a nonzero element.
    int ord(const NFElem& x) const;
    int ord(const Rational& x) const;
    // ord_P of the fractional ideal generated by the given elements (min).
    int ord(const std::vector<NFElem>& gens) const;
    // Reduction of a P-integral element to the residue field, as an
    // integer mod p when the residue degree is 1.
    Integer reduce_mod(const NFElem& x) const;

    std::string to_string() const;

private:
    friend std::vector<PrimeIdeal> prime_split(const FieldPtr& K, const Integer& p);
    FieldPtr field_;
    Integer p_;
    int e_ = 1;
    int f_ = 1;
    Kind kind_ = Kind::rational;
    NFElem alpha_;
    // split: p-adic root of h to precision p^k is recomputed on demand from
    // root0 by Hensel lifting. unramified_general: factor of h mod p.
    Integer root0_;
    std::vector<Integer> factor_mod_p_;
    std::vector<std::vector<Integer>> factor_mod_p_others_;
};

std::vector<PrimeIdeal> prime_split(const FieldPtr& K, const Integer& p);

// Absolute norm of the fractional ideal generated by gens (degree <= 2, or
// Z[x]-module index when the order is the power basis order).
Rational ideal_norm(const std::vector<NFElem>& gens);

// Conjugate of an element of a quadratic field under the nontrivial
// automorphism.
NFElem quadratic_conjugate(const NFElem& x);

// Serialization of an element: "[c0,c1,...]" with rationals "num/den".
std::string serialize(const NFElem& x);
std::string serialize(const PrimeIdeal& P);

} // namespace dii::exactnum
