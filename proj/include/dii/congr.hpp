#pragma once

// Congruence primes of Ikeda lifts: the valuation criterion for the
// standard zeta value, the three-condition test assembled from critical and
// adjoint L-values, Sturm comparisons of eigenvalue systems, and the
// weight 32 / degree 4 worked example.

#include <string>
#include <utility>
#include <vector>

#include "dii/lift.hpp"

namespace dii::congr {

using exactnum::PrimeIdeal;
using exactnum::Rational;
using lift::ValuationFactor;
using lift::ValuationReport;

struct SturmResult {
    bool congruent = true;
    long witness = 0;            // first prime q with c1(q) != c2(q) mod P, or 0
    long bound = 0;
    std::vector<long> checked;   // primes compared
};

// Compares c_{f1}(q) and c_{f2}(q) modulo P for the primes q <= bound,
// bound = (2k - n)/12 when 0 is passed. The two fields must agree or one of
// them must be Q; other composita are unsupported.
SturmResult sturm_congruent(const forms1::PrimitiveForm& f1, const forms1::PrimitiveForm& f2, const PrimeIdeal& P,
                            int n, int k, long bound = 0);

struct Theorem31Result {
    int ord = 0;
    std::string verdict; // "congruence-prime" or "not-established"
    ValuationReport report;
};

// ord_P(Lambda(l, I_n(g), St) J^2) for l = 2m, with the witness coefficient
// at discriminant D.
Theorem31Result theorem31_criterion(const lift::LiftSpec& spec, lift::LValueData& data, int l, const PrimeIdeal& P,
                                    long D = 1);

struct Condition {
    std::string name;
    std::vector<ValuationFactor> factors;
    int ord = 0;              // sum of exponent * ord over factors
    bool holds = false;
    bool conditional = false; // depends on an uncertified factor
    int m = 0;                // witness for condition (2)
    long D = 0;
};

struct CrossCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CongruenceReport {
    int n = 0;
    int k = 0;
    std::string form;   // serialized first coefficients of f
    std::string prime;  // serialized P
    long p = 0;
    Condition condition1;
    std::vector<Condition> condition2; // every (m, D) tried, in search order
    Condition condition3;
    std::string verdict;
    std::vector<std::string> caveats;
    std::vector<CrossCheck> cross_checks;

    // index of the first successful condition-(2) witness, or -1
    int witness_index() const;
};

// Condition flags and verdict recomputed from the stored factors alone.
void rederive(CongruenceReport& r);
std::string derive_verdict(const CongruenceReport& r);

struct Theorem47Options {
    int m_min = 0; // 0: n/2 + 1
    int m_max = 0; // 0: k/2 - n/2 - 1
    long D_bound = 1;
    bool stop_at_first = false;
};

CongruenceReport theorem47_check(const lift::LiftSpec& spec, lift::LValueData& data, const PrimeIdeal& P,
                                 const Theorem47Options& opt = {});

struct FactorizationLine {
    std::string label;
    std::string computed;   // full factorization
    std::string expected;   // pinned value away from 2 and 3
    bool matches = false;   // compared away from 2 and 3
};

struct ExampleReport {
    int n = 4;
    int k = 18;
    int field_degree = 0;
    int lift_space_dimension = 0;
    bool splits_211 = false;
    std::vector<FactorizationLine> factorizations;
    Rational xi6;
    std::vector<CongruenceReport> reports; // one per prime above 211
    std::vector<SturmResult> sturm;        // f against the other form, per prime above 211
    std::string conclusion;
};

// Recomputes the worked example; any mismatch with the pinned values raises
// ErrorKind::regression.
ExampleReport example_section4(long adjoint_bits = 256);

std::string to_json(const CongruenceReport& r);
std::string to_json(const ExampleReport& r);
std::string to_json(const ValuationReport& r);

} // namespace dii::congr
