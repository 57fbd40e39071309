#include "doctest.h"

#include "dii/lift.hpp"
#include "dii/siegel.hpp"

using namespace dii;
using namespace dii::lift;
using exactnum::Integer;
using exactnum::make_rational;
using qforms::HalfIntegralMatrix;

namespace {

const LiftSpec& sk10() {
    static auto spec = make_lift(2, 10);
    return *spec;
}

Integer ipow(long b, int e) {
    Integer r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

TEST_CASE("quadratic algebra for gamma") {
    const auto& spec = sk10();
    for (long p : {2L, 3L, 5L}) {
        auto g = spec.gamma(p);
        auto one = BetaElement::scalar(spec.field()->one(), g.trace(), g.norm());
        CHECK(g * g.inverse() == one);
        // gamma + N / gamma = c_f(p)
        auto s = g + g.inverse() * g.norm();
        CHECK(s.is_scalar());
        CHECK(s.scalar_part() == spec.f_coeff(p));
        CHECK(g.pow(3) * g.pow(-5) == g.pow(-2));
        CHECK((g * g.conjugate()).scalar_part() == spec.field()->from_rational(g.norm()));
    }
}

TEST_CASE("degree 2: lift coefficients equal the Maass coefficients") {
    const auto& spec = sk10();
    CHECK(spec.lambda() == 9);
    CHECK(spec.f().weight == 18);
    auto lt = lift_table(spec, 40);
    auto mt = maass_table(spec, 40);
    CHECK(lt.c.size() == mt.c.size());
    CHECK(lt.c.size() > 20);
    int nonzero = 0;
    for (auto& [T, v] : lt.c) {
        CHECK_MESSAGE(v == mt.at(T), T.serialize());
        if (!v.is_zero()) ++nonzero;
    }
    CHECK(nonzero > 10);
    const auto& g = spec.g();
    auto A2 = HalfIntegralMatrix::binary(1, 1, 1);
    CHECK(lift_coefficient(spec, A2) == g.form.coeff(3));
    CHECK(lift_coefficient(spec, HalfIntegralMatrix::identity(2)) == spec.g_coeff(4));
    CHECK(lift_coefficient(spec, A2.scaled(2)) == spec.g_coeff(12) + spec.g_coeff(3) * Rational(ipow(2, 9)));
    CHECK_THROWS_AS(lift_coefficient(spec, HalfIntegralMatrix(2, {-2, 0, 0, -2})), Error);
    CHECK_THROWS_AS(lift_coefficient(spec, HalfIntegralMatrix::identity(4)), Error);
}

TEST_CASE("Satake parameters of the lift") {
    struct Case {
        int n, k;
    };
    for (auto c : {Case{2, 10}, Case{4, 18}}) {
        auto spec = make_lift(c.n, c.k);
        const int n = c.n, k = c.k;
        for (long p : {2L, 3L, 5L}) {
            auto al = lift_satake(*spec, p);
            REQUIRE(al.size() == static_cast<size_t>(n + 1));
            // alpha_0^2 alpha_1 ... alpha_n = p^(nk - n(n+1)/2)
            auto prod = al[0] * al[0];
            for (int i = 1; i <= n; ++i) prod = prod * al[static_cast<size_t>(i)];
            CHECK(prod.is_scalar());
            CHECK(prod.scalar_part() == spec->field()->from_rational(Rational(ipow(p, n * k - n * (n + 1) / 2))));
            CHECK(standard_euler_factor(al) == standard_euler_factor_expected(*spec, p));
            Integer s = 0;
            for (int i = 1; i <= n; ++i) s += ipow(p, i);
            CHECK(satake_trace_scaled(*spec, p) ==
                  spec->f_coeff(p) * Rational(ipow(p, (n - 1) * k - n * (n + 1) / 2) * s));
            auto ev = spinor_eigenvalue(*spec, p);
            CHECK(ev.is_integral());
        }
    }
}

TEST_CASE("degree 2 spinor eigenvalue") {
    const auto& spec = sk10();
    for (long p : {2L, 3L, 5L}) {
        auto corrected = spec.f_coeff(p) + spec.field()->from_rational(Rational(ipow(p, 9) + ipow(p, 8)));
        CHECK(spinor_eigenvalue(spec, p) == corrected);
    }
}

TEST_CASE("Hecke T(p) on degree 2 tables") {
    const auto& spec = sk10();
    for (long p : {2L, 3L}) {
        long bound = p == 2 ? 40 : 90;
        auto t = lift_table(spec, bound);
        auto img = hecke_Tp_siegel(t, p);
        CHECK(img.det_bound == bound / (p * p));
        NFElem ratio;
        REQUIRE(table_ratio(img, t, ratio));
        CHECK(ratio == spinor_eigenvalue(spec, p));
        auto paper_form = spec.f_coeff(p) + spec.field()->from_rational(Rational(ipow(p, 17) + ipow(p, 16)));
        CHECK(ratio != paper_form);
    }
    for (int k : {10, 12}) {
        for (long p : {2L, 3L}) {
            auto E = eisenstein_table(k, p == 2 ? 48 : 90);
            auto img = hecke_Tp_siegel(E, p);
            NFElem ratio;
            REQUIRE(table_ratio(img, E, ratio));
            CHECK(ratio.rational_value() == h_poly_eval(2, p, Rational(ipow(p, k))));
            CHECK(ratio.rational_value() == Rational(1 + ipow(p, k - 1) + ipow(p, k - 2) + ipow(p, 2 * k - 3)));
        }
    }
    SiegelFourierTable zero = eisenstein_table(10, 16);
    for (auto& [T, v] : zero.c) v = zero.field->zero();
    for (auto& [T, v] : hecke_Tp_siegel(zero, 2).c) CHECK(v.is_zero());
    // incomplete tables are rejected with the missing entries named
    auto E = eisenstein_table(10, 20);
    E.c.erase(qforms::reduce_binary(HalfIntegralMatrix::identity(2).scaled(2)));
    try {
        hecke_Tp_siegel(E, 2);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
        CHECK(std::string(e.what()).find("[[4,0],[0,4]]") != std::string::npos);
    }
}

TEST_CASE("h polynomial") {
    CHECK(h_poly(1, 3) == std::vector<Rational>{1, make_rational(1, 3)});
    CHECK(h_poly(2, 5) == std::vector<Rational>{1, make_rational(1, 5) + make_rational(1, 25), make_rational(1, 125)});
    CHECK(h_poly_eval(3, 7, 0) == 1);
    CHECK(h_poly(0, 2) == std::vector<Rational>{1});
}

TEST_CASE("degree 4 lift on the q-squared family") {
    auto spec = make_lift(4, 18);
    CHECK(spec->g_coeff(1) == spec->field()->one());
    for (long q : {2L, 3L, 5L, 7L}) {
        auto T = qforms::construct_lattice(4, 1, qforms::LatticeMode::q_squared, q);
        auto expected = spec->g_coeff(1) * (spec->f_coeff(q) - spec->field()->from_rational(Rational(ipow(q, 15) * (q + 1))));
        CHECK(lift_coefficient(*spec, T) == expected);
    }
    auto D5 = qforms::construct_lattice(4, 5, qforms::LatticeMode::fundamental);
    CHECK(lift_coefficient(*spec, D5) == spec->g_coeff(5));
    // independent of the root chosen for gamma
    auto T = qforms::construct_lattice(4, 1, qforms::LatticeMode::q_squared, 3);
    auto local = lift_local_factor(*spec, T, 3);
    CHECK(local.is_scalar());
}
