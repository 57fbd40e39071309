#include "doctest.h"

#include <map>

#include "dii/msym.hpp"

using namespace dii;
using namespace dii::msym;
using exactnum::Integer;
using exactnum::Rational;

namespace {

std::map<long, int> norm_exponents(const Rational& x) {
    std::map<long, int> out;
    for (auto& [p, e] : exactnum::factor_rational(x)) out[p.get_si()] = e;
    return out;
}

// drops the primes 2 and 3
std::map<long, int> away_from_6(std::map<long, int> m) {
    m.erase(2);
    m.erase(3);
    return m;
}

const forms1::PrimitiveForm& weight32_form() {
    static auto fs = forms1::eigenforms(32);
    return fs.at(0);
}

PrimeIdeal prime_above(const FieldPtr& K, long p) { return exactnum::prime_split(K, Integer(p)).at(0); }

} // namespace

TEST_CASE("dimensions of the symbol spaces") {
    CHECK(build_space(12).cuspidal_dimension() == 2);
    CHECK(build_space(16).cuspidal_dimension() == 2);
    CHECK(build_space(32).cuspidal_dimension() == 4);
    for (int w = 12; w <= 60; w += 2) {
        auto S = build_space(w);
        CHECK(S.cuspidal_dimension() == static_cast<size_t>(2 * forms1::dim_cusp(w)));
        CHECK(S.dimension() == S.cuspidal_dimension() + 1);
    }
}

TEST_CASE("cuspidal Hecke polynomials are squares of the q-expansion ones") {
    for (int w : {12, 16, 18, 20, 22, 26, 32}) {
        auto S = build_space(w);
        auto B = forms1::miller_basis(w, 120);
        for (long p : {2L, 3L, 5L}) {
            auto cs = exactnum::charpoly(restrict_to_cusp(S, hecke_on_symbols(S, p)));
            auto cq = exactnum::charpoly(forms1::hecke_matrix(B, p));
            CHECK_MESSAGE(cs == cq * cq, "w=" << w << " p=" << p);
        }
    }
}

TEST_CASE("tau(2) on weight 12 symbols") {
    auto S = build_space(12);
    auto T = restrict_to_cusp(S, hecke_on_symbols(S, 2));
    for (size_t i = 0; i < T.size(); ++i)
        for (size_t j = 0; j < T.size(); ++j) CHECK(T[i][j] == (i == j ? -24 : 0));
}

TEST_CASE("boundary class carries the Eisenstein eigenvalue") {
    for (int w : {12, 20, 32}) {
        auto S = build_space(w);
        for (long p : {2L, 3L, 5L}) {
            auto T = hecke_on_symbols(S, p);
            Integer e = 1;
            for (int i = 0; i < w - 1; ++i) e *= p;
            e += 1;
            // the boundary functional is an eigenvector from the left
            for (size_t j = 0; j < S.dimension(); ++j) {
                Rational s = 0;
                for (size_t i = 0; i < S.dimension(); ++i) s += S.boundary[i] * T[i][j];
                CHECK(s == Rational(e) * S.boundary[j]);
            }
        }
    }
}

TEST_CASE("Hecke operators commute with each other and with the star involution") {
    for (int w : {24, 32, 36}) {
        auto S = build_space(w);
        auto T2 = hecke_on_symbols(S, 2), T3 = hecke_on_symbols(S, 3), F = star_involution(S);
        Rational z = 0;
        CHECK(linalg::multiply(T2, T3, z) == linalg::multiply(T3, T2, z));
        CHECK(linalg::multiply(T2, F, z) == linalg::multiply(F, T2, z));
        CHECK(linalg::multiply(T3, F, z) == linalg::multiply(F, T3, z));
        CHECK(linalg::multiply(F, F, z) == linalg::identity(S.dimension(), z, Rational(1)));
        QMat Fc = restrict_to_cusp(S, F);
        QMat Fm = Fc;
        for (size_t i = 0; i < Fm.size(); ++i) Fm[i][i] -= 1;
        size_t plus = Fc.size() - linalg::rank(Fm);
        CHECK(plus == static_cast<size_t>(forms1::dim_cusp(w)));
    }
}

TEST_CASE("symbols transform under translation and compose additively") {
    auto S = build_space(20);
    Poly P(S.num_generators, Rational(0));
    for (size_t i = 0; i < P.size(); ++i) P[i] = exactnum::make_rational(static_cast<long>(i * i) - 7, 3);
    for (long num : {-7L, -1L, 0L, 2L, 5L, 13L})
        for (long den : {1L, 3L, 7L, 10L}) {
            // P {alpha + 1, oo} = (P o [[1,1],[0,1]]) {alpha, oo}
            auto lhs = symbol_to_infinity(S, P, num + den, den);
            auto rhs = symbol_to_infinity(S, act(P, 1, 1, 0, 1), num, den);
            CHECK(lhs == rhs);
        }
    // {0, oo} from the continued-fraction path agrees with the generator itself
    CHECK(symbol_to_infinity(S, P, 0, 1) == symbol_zero_infinity(S, P));
}

TEST_CASE("weight 12 odd period ratios") {
    // odd period polynomial of Delta is proportional to
    // 4X^9 - 25X^7 + 42X^5 - 25X^3 + 4X
    auto S = build_space(12);
    auto f = forms1::eigenforms(12).at(0);
    auto pd = periods(S, f);
    auto r = [&](int l) { return pd.minus.pair(winding_element(S, l)).rational_value(); };
    Rational r2 = r(2), r4 = r(4), r6 = r(6);
    REQUIRE(r2 != 0);
    Rational q1 = r4 / r2, q2 = r6 / r2;
    // r_n = coeff / binom(10, n) up to the common sign (-1)^n
    Rational e1 = exactnum::make_rational(-25, 120) / exactnum::make_rational(4, 10);
    Rational e2 = exactnum::make_rational(42, 252) / exactnum::make_rational(4, 10);
    CHECK(abs(q1) == abs(e1));
    CHECK(abs(q2) == abs(e2));
    CHECK(q1 * e1 > 0);
    CHECK(q2 * e2 > 0);
}

TEST_CASE("Example critical values of the weight 32 form") {
    auto S = build_space(32);
    const auto& f = weight32_form();
    CHECK(f.hecke_field->degree() == 2);
    auto pd = periods(S, f);
    auto n18 = norm_exponents(critical_Lvalue(S, pd, 18).norm());
    CHECK(away_from_6(n18) == std::map<long, int>{{5, 2}, {7, 2}, {11, 1}, {13, 1}, {211, 1}});
    Rational prod = 1;
    for (int i = 1; i <= 4; ++i) prod *= critical_Lvalue(S, pd, 24 - i).norm();
    CHECK(away_from_6(norm_exponents(prod)) ==
          std::map<long, int>{{5, 5}, {7, 8}, {11, 2}, {13, 5}, {17, 5}, {19, 3}, {23, 1}, {503, 1}, {1307, 1},
                              {14243, 1}});
    auto n16 = norm_exponents(critical_Lvalue(S, pd, 16, 1).norm());
    CHECK(away_from_6(n16) == std::map<long, int>{{5, 3}, {7, 2}, {11, 1}, {13, 2}});
}

TEST_CASE("the full lattice picks up the Eisenstein primes") {
    auto S = build_space(32);
    auto pd = periods(S, weight32_form(), Lattice::full);
    auto n21 = norm_exponents(critical_Lvalue(S, pd, 21).norm());
    CHECK(n21.count(37) == 1);
    CHECK(n21.count(683) == 1);
}

TEST_CASE("prime ideal valuations sum to the norm valuation") {
    auto S = build_space(32);
    const auto& f = weight32_form();
    auto pd = periods(S, f);
    for (int l = 1; l <= 31; ++l) {
        auto cv = critical_Lvalue(S, pd, l);
        if (cv.is_zero()) continue;
        auto n = norm_exponents(cv.norm());
        for (long p : {5L, 7L, 11L, 13L, 211L}) {
            int tot = 0;
            for (auto& P : exactnum::prime_split(f.hecke_field, Integer(p))) tot += P.residue_degree() * cv.ord(P);
            CHECK_MESSAGE(tot == (n.count(p) ? n[p] : 0), "l=" << l << " p=" << p);
        }
        CHECK(cv.element_at(prime_above(f.hecke_field, 211)).field() == f.hecke_field);
    }
}

TEST_CASE("twisted values and parities") {
    auto S = build_space(32);
    const auto& f = weight32_form();
    auto pd = periods(S, f);
    for (long D : {-4L, -3L, 5L, 8L, -7L, 12L}) {
        for (int l : {15, 16, 17, 18}) {
            auto cv = critical_Lvalue(S, pd, l, D);
            int j = ((l - 1) % 2 ? -1 : 1) * (D < 0 ? -1 : 1);
            CHECK(cv.sign == j);
            // the twisted symbol lies in the j-eigenspace of the star involution
            auto v = twisted_winding_element(S, l, D);
            auto Fv = linalg::apply(star_involution(S), v, Rational(0));
            for (size_t i = 0; i < v.size(); ++i) CHECK(Fv[i] == j * v[i]);
        }
    }
    CHECK_THROWS_AS(critical_Lvalue(S, pd, 0), dii::Error);
    CHECK_THROWS_AS(critical_Lvalue(S, pd, 32), dii::Error);
    CHECK_THROWS_AS(critical_Lvalue(S, pd, 17, 6), dii::Error);
}

TEST_CASE("ord_P does not depend on rescaling the functional by a P-unit") {
    auto S = build_space(32);
    const auto& f = weight32_form();
    auto pd = periods(S, f);
    auto P = prime_above(f.hecke_field, 211);
    auto scaled = pd;
    NFElem u = f.hecke_field->from_rational(exactnum::make_rational(35, 11)) + f.hecke_field->gen();
    REQUIRE(P.ord(u) == 0);
    for (auto* E : {&scaled.plus, &scaled.minus}) {
        for (auto& x : E->functional) x = x * u;
        for (auto& x : E->lattice_gens) x = x * u;
    }
    for (int l = 14; l <= 20; ++l) CHECK(critical_Lvalue(S, pd, l).ord(P) == critical_Lvalue(S, scaled, l).ord(P));
}

TEST_CASE("periods at small residue characteristic are rejected") {
    auto S = build_space(32);
    const auto& f = weight32_form();
    for (long p : {2L, 3L})
        for (auto& P : exactnum::prime_split(f.hecke_field, Integer(p))) {
            CHECK_THROWS_AS(periods_eta(S, f, P), dii::Error);
            CHECK_THROWS_AS(adjoint_period_ord(32, f, P), dii::Error);
        }
    auto P211 = exactnum::prime_split(f.hecke_field, Integer(211));
    CHECK(P211.size() == 2);
    auto pd = periods_eta(S, f, P211[0]);
    CHECK(critical_Lvalue(S, pd, 18).ord(P211[0]) + critical_Lvalue(S, pd, 18).ord(P211[1]) == 1);
}

TEST_CASE("congruence number valuations") {
    auto f12 = forms1::eigenforms(12).at(0);
    auto Q = f12.hecke_field;
    CHECK(adjoint_period_ord(12, f12, exactnum::prime_split(Q, Integer(5)).at(0)) == 0);
    CHECK(adjoint_period_ord(12, f12, exactnum::prime_split(Q, Integer(691)).at(0)) == 0);
    const auto& f = weight32_form();
    for (auto& P : exactnum::prime_split(f.hecke_field, Integer(211))) CHECK(adjoint_period_ord(32, f, P) == 0);
    auto f24 = forms1::eigenforms(24).at(0);
    int tot = 0;
    for (auto& P : exactnum::prime_split(f24.hecke_field, Integer(144169))) tot += adjoint_period_ord(24, f24, P);
    CHECK(tot >= 1);
}
