#include "doctest.h"

#include "dii/forms1.hpp"

using namespace dii;
using namespace dii::forms1;
using exactnum::Integer;
using exactnum::Rational;

namespace {

// Oracle: tau(n) from the product expansion computed independently by
// repeated multiplication with (1 - q^n), done 24 times.
std::vector<Integer> tau_oracle(size_t N) {
    std::vector<Integer> e(N, Integer(0));
    e[0] = 1;
    for (int rep = 0; rep < 24; ++rep)
        for (size_t n = 1; n < N; ++n)
            for (size_t i = N; i-- > n;) e[i] -= e[i - n];
    std::vector<Integer> t(N, Integer(0));
    for (size_t i = 1; i < N; ++i) t[i] = e[i - 1];
    return t;
}

} // namespace

TEST_CASE("eisenstein series") {
    auto e4 = qexp::eisenstein(4, 5);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);
    auto e6 = qexp::eisenstein(6, 5);
    CHECK(e6[1] == -504);
    CHECK(e6[2] == -16632);
    CHECK_THROWS_AS(qexp::eisenstein(3, 5), Error);
    CHECK_THROWS_AS(qexp::eisenstein(2, 5), Error);
}

TEST_CASE("delta against product oracle") {
    auto d = qexp::delta(40);
    auto t = tau_oracle(40);
    for (size_t i = 0; i < 40; ++i) CHECK(d[i] == t[i]);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
}

TEST_CASE("Miller basis dimensions") {
    CHECK(miller_basis(32, 60).cusp.size() == 2);
    auto b12 = miller_basis(12, 20);
    REQUIRE(b12.cusp.size() == 1);
    auto t = tau_oracle(20);
    for (size_t i = 0; i < 20; ++i) CHECK(b12.cusp[0][i] == Rational(t[i]));
    CHECK(miller_basis(2, 20).modular.empty());
    for (int w = 0; w <= 60; w += 2) {
        // classical formula
        int expect = (w == 2) ? 0 : ((w % 12 == 2) ? w / 12 : w / 12 + 1);
        auto B = miller_basis(w, 80);
        CHECK(static_cast<int>(B.modular.size()) == expect);
        CHECK(static_cast<int>(B.cusp.size()) == std::max(0, expect - 1));
        // integrality of the echelon basis
        for (auto& f : B.modular)
            for (auto& c : f.c) CHECK(c.get_den() == 1);
    }
}

TEST_CASE("Hecke operators on expansions") {
    auto d = qexp::to_q(qexp::delta(60));
    auto t2 = hecke_Tp(d, 2, 12);
    CHECK(t2.precision() == 30);
    for (size_t n = 0; n < t2.precision(); ++n) CHECK(t2[n] == -24 * d[n]);
    auto e4 = qexp::eisenstein(4, 60);
    auto t3 = hecke_Tp(e4, 3, 4);
    for (size_t n = 0; n < t3.precision(); ++n) CHECK(t3[n] == 28 * e4[n]);
    qexp::QSeries z{std::vector<Rational>(30, Rational(0))};
    CHECK(qexp::is_zero(hecke_Tp(z, 5, 12)));
    CHECK_THROWS_AS(hecke_Tp(qexp::truncate(d, 3), 5, 12), Error);
}

TEST_CASE("Hecke matrices commute") {
    for (int w = 12; w <= 40; w += 2) {
        auto B = miller_basis(w, 200);
        if (B.cusp.empty()) continue;
        auto T2 = hecke_matrix(B, 2), T3 = hecke_matrix(B, 3);
        CHECK(linalg::multiply(T2, T3, Rational(0)) == linalg::multiply(T3, T2, Rational(0)));
    }
}

TEST_CASE("eigenforms") {
    auto f12 = eigenforms(12);
    REQUIRE(f12.size() == 1);
    CHECK(f12[0].hecke_field->degree() == 1);
    CHECK(f12[0].coeff(2).rational_value() == -24);

    auto f18 = eigenforms(18);
    REQUIRE(f18.size() == 1);
    CHECK(f18[0].coeff(2).rational_value() == -528);

    auto f32 = eigenforms(32);
    REQUIRE(f32.size() == 2);
    CHECK(f32[0].hecke_field->degree() == 2);
    CHECK(exactnum::same_field(f32[0].hecke_field, f32[1].hecke_field));
    CHECK(f32[0].coeff(2) != f32[1].coeff(2));
    CHECK(f32[0].coeff(2) + f32[1].coeff(2) == f32[0].hecke_field->from_rational(f32[0].coeff(2).trace()));

    for (int w : {12, 16, 18, 20, 22, 24, 26, 32, 36}) {
        for (auto& f : eigenforms(w)) {
            CHECK(check_multiplicativity(f));
            for (long p : {2, 3, 5, 7})
                CHECK(f.coeff(p).is_integral());
        }
    }
}
