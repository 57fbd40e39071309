#pragma once

// Fourier coefficients of the Ikeda lift of a plus-space eigenform, its
// Satake parameters at p, the degree-2 Hecke operator T(p) on coefficient
// tables, and valuation reports for the standard zeta value of the lift.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dii/exactnum.hpp"
#include "dii/forms1.hpp"
#include "dii/halfint.hpp"
#include "dii/lser.hpp"
#include "dii/msym.hpp"
#include "dii/qforms.hpp"

namespace dii::lift {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::PrimeIdeal;
using exactnum::Rational;
using qforms::HalfIntegralMatrix;

// a + b*gamma in K[gamma] / (gamma^2 - t gamma + N). For the lift at p,
// gamma = p^(k - n/2 - 1/2) beta_p, t = c_f(p) and N = p^(2k - n - 1), so
// beta_p + beta_p^-1 = p^(-k + n/2 + 1/2) c_f(p) becomes gamma + N/gamma = t
// and no half-integral power of p is ever formed.
class BetaElement {
public:
    BetaElement() = default;
    BetaElement(NFElem a, NFElem b, NFElem trace, Rational norm);
    static BetaElement scalar(const NFElem& a, const NFElem& trace, const Rational& norm);
    static BetaElement gamma(const NFElem& trace, const Rational& norm);

    const NFElem& scalar_part() const { return a_; }
    const NFElem& gamma_part() const { return b_; }
    const NFElem& trace() const { return t_; }
    const Rational& norm() const { return n_; }
    bool is_scalar() const { return b_.is_zero(); }

    BetaElement operator+(const BetaElement& o) const;
    BetaElement operator-(const BetaElement& o) const;
    BetaElement operator*(const BetaElement& o) const;
    BetaElement operator*(const Rational& s) const;
    bool operator==(const BetaElement& o) const { return a_ == o.a_ && b_ == o.b_; }

    // gamma -> t - gamma
    BetaElement conjugate() const;
    BetaElement inverse() const;
    BetaElement pow(long e) const;

private:
    void check_compatible(const BetaElement& o) const;
    NFElem a_, b_, t_;
    Rational n_;
};

// The lift of degree n and weight k of a plus eigenform of weight
// k - n/2 + 1/2, matched to f of weight 2k - n.
class LiftSpec {
public:
    LiftSpec(int n, int k, halfint::PlusEigenform g);

    int n() const { return n_; }
    int k() const { return k_; }
    int lambda() const { return k_ - n_ / 2; }
    const forms1::PrimitiveForm& f() const { return g_.matched; }
    const halfint::PlusEigenform& g() const { return g_; }
    const FieldPtr& field() const { return g_.matched.hecke_field; }

    // c_g(e), extending the expansion when needed.
    NFElem g_coeff(long e) const;
    // c_f(p), extending f when needed.
    NFElem f_coeff(long p) const;
    // gamma at p.
    BetaElement gamma(long p) const;

    // Lift coefficients already computed, keyed by serialized 2T.
    std::map<std::string, NFElem> cache_snapshot() const;

private:
    friend NFElem lift_coefficient(const LiftSpec&, const HalfIntegralMatrix&);
    int n_, k_;
    halfint::PlusEigenform g_;
    mutable std::mutex mu_;
    mutable halfint::HalfIntForm g_ext_;
    mutable forms1::PrimitiveForm f_ext_;
    mutable std::map<std::string, NFElem> cache_;
};

// Matched plus eigenform of weight k - n/2 + 1/2 number `which` in
// halfint::shimura_match order.
std::shared_ptr<LiftSpec> make_lift(int n, int k, size_t which = 0);

// c_g(|d_T|) prod_{p | f_T} gamma_p^nu F_p(T, p^(k-n-1) gamma_p^-1); the
// product is checked to lie in K.
NFElem lift_coefficient(const LiftSpec& spec, const HalfIntegralMatrix& T);

// Local factor gamma^nu F_p(T, p^(k-n-1)/gamma) in the algebra.
BetaElement lift_local_factor(const LiftSpec& spec, const HalfIntegralMatrix& T, long p);

// sum over d | content(T) of d^(k-1) c_g(det(2T) / d^2), for degree 2.
NFElem maass_coefficient(const halfint::HalfIntForm& g, int k, const HalfIntegralMatrix& T);

// alpha_0, alpha_1, ..., alpha_n with alpha_i = gamma p^(i-k) and
// alpha_0 = p^(nk - n(n+1)/2) gamma^(-n/2).
std::vector<BetaElement> lift_satake(const LiftSpec& spec, long p);

// (1 - X) prod_i (1 - alpha_i X)(1 - alpha_i^-1 X), coefficients of X^j;
// raises regression when some coefficient leaves K.
std::vector<NFElem> standard_euler_factor(const std::vector<BetaElement>& satake);
// p-factor of zeta(s) prod_{i=1..n} L(s + k - i, f) in X = p^-s.
std::vector<NFElem> standard_euler_factor_expected(const LiftSpec& spec, long p);

// p^(n(k - (n+1)/2)) sum_{i=1..n} (alpha_i + alpha_i^-1).
NFElem satake_trace_scaled(const LiftSpec& spec, long p);
// alpha_0 prod_{i=1..n} (1 + alpha_i): the eigenvalue of T(p).
NFElem spinor_eigenvalue(const LiftSpec& spec, long p);

// Coefficients of a degree-2 form at reduced positive definite T, complete
// for det(2T) <= det_bound.
struct SiegelFourierTable {
    int n = 2;
    int k = 0;
    long det_bound = 0;
    FieldPtr field;
    std::map<HalfIntegralMatrix, NFElem> c;

    // c(T) for any positive definite T; missing entries raise precondition.
    NFElem at(const HalfIntegralMatrix& T) const;
    bool contains(const HalfIntegralMatrix& T) const;
    // One line per entry: "[[2,1],[1,2]]\t[c0,c1]".
    std::string serialize() const;
};

SiegelFourierTable lift_table(const LiftSpec& spec, long det_bound);
SiegelFourierTable maass_table(const LiftSpec& spec, long det_bound);
// Degree-2 Siegel–Eisenstein series of weight k, up to a constant factor:
// L(2-k, chi_d) f^(2k-3) prod_p F_p(T, p^-k).
SiegelFourierTable eisenstein_table(int k, long det_bound);

// c'(B) = c(pB) + p^(k-2) sum_D c(D B D^t / p) + p^(2k-3) c(B/p) with D over
// [[1, b], [0, p]] (0 <= b < p) and [[p, 0], [0, 1]]; terms are dropped when
// the argument is not half-integral. The output is complete to
// det_bound / p^2. Entries needed but absent from the input are listed in
// the precondition error.
SiegelFourierTable hecke_Tp_siegel(const SiegelFourierTable& table, long p);

// Ratio of two tables as a single scalar, or false when they are not
// proportional on the common entries (entries of `a` at zero entries of `b`
// must vanish as well).
bool table_ratio(const SiegelFourierTable& a, const SiegelFourierTable& b, NFElem& ratio);

// 1 + sum over nonempty subsets {i_1 < ... < i_r} of {1..n} of
// p^-(i_1 + ... + i_r) X^r; entry r is the coefficient of X^r.
std::vector<Rational> h_poly(int n, long p);
Rational h_poly_eval(int n, long p, const Rational& X);

// L-values of f of weight 2k - n shared between reports: critical values
// relative to the cuspidal symbol lattice and certified adjoint values.
class LValueData {
public:
    LValueData(int n, int k, forms1::PrimitiveForm f, long adjoint_bits = 256);

    int n() const { return n_; }
    int k() const { return k_; }
    const forms1::PrimitiveForm& f() const { return f_; }
    long adjoint_bits() const { return bits_; }

    msym::CriticalValue critical(int l, long D = 1);
    const lser::AdjointValue& adjoint(int m);
    int congruence_ord(const PrimeIdeal& P);

private:
    int n_, k_;
    forms1::PrimitiveForm f_;
    long bits_;
    msym::ModularSymbolSpace S_;
    msym::PeriodData pd_;
    std::mutex mu_;
    std::map<std::pair<int, long>, msym::CriticalValue> crit_;
    std::map<int, lser::AdjointValue> adj_;
    std::map<std::string, int> cong_;
};

struct ValuationFactor {
    std::string label;
    int exponent = 1;        // the factor enters as x^exponent
    int ord = 0;             // ord_P of x
    Rational norm;           // |N(x)|, 0 when not applicable
    std::string ambiguity;   // empty when x is known exactly up to P-units
    bool certified = true;
};

struct ValuationReport {
    std::string quantity;
    std::vector<ValuationFactor> factors;
    std::vector<std::string> caveats;
    // sum of exponent * ord; for lambda_standard an upper bound on the true
    // valuation, since the unknown factors have ord <= 0
    int ord = 0;
    bool conditional = false; // some factor is not certified

    void recompute();
};

std::string factor_label_norm(const Rational& norm);

// ord_P of the right-hand side of the Petersson ratio for c_g(|D|)^2:
// |D|^(k-n/2) L(k-n/2, f, chi_D) / (L(k, f) xi(n) prod_{i<n/2} L(2i+1, f, Ad) xi(2i)).
ValuationReport ratio_prop43(LValueData& data, long D, const PrimeIdeal& P);

// ord_P of Lambda(2m, I_n(g), St) times the squared coefficient ideal, from
// a coefficient c_g(|D|) l of the lift with l prime to P.
ValuationReport lambda_standard(const LiftSpec& spec, LValueData& data, int m, long D, const PrimeIdeal& P);

// ord_P of the ideal generated by c_g(e), e < bound.
int coefficient_ideal_ord(const LiftSpec& spec, const PrimeIdeal& P, size_t bound = 0);

// A matrix T with (-1)^(n/2) det(2T) = D f^2 whose lift coefficient is
// c_g(|D|) times a P-unit l, with l. For D = 1 and n = 4 mod 8 it searches
// primes q with det(2T) = q^2.
struct UnitWitness {
    HalfIntegralMatrix T;
    NFElem l;
    long q = 0; // 0 when f_T = 1
};
UnitWitness unit_witness(const LiftSpec& spec, long D, const PrimeIdeal& P, long q_max = 50);

} // namespace dii::lift
