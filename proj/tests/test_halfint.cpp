#include "doctest.h"

#include "dii/halfint.hpp"

using namespace dii;
using namespace dii::halfint;
using exactnum::Integer;
using exactnum::make_rational;
using exactnum::Rational;

namespace {

int moebius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

// Cohen's H(r, N): coefficients of the Eisenstein series in the plus space
Rational cohen_h(int r, long N) {
    if (N == 0) return exactnum::dirichlet_l_negative(2 * r, 1);
    long s = r % 2 == 0 ? N : -N;
    auto [d, f] = exactnum::fundamental_split(Integer(s));
    long D = d.get_si(), F = f.get_si();
    Rational acc = 0;
    for (long e = 1; e <= F; ++e)
        if (F % e == 0) {
            Integer pw = 1;
            for (int i = 0; i < r - 1; ++i) pw *= e;
            acc += moebius(e) * exactnum::kronecker(D, e) * pw * qexp::sigma(2 * r - 1, F / e);
        }
    return exactnum::dirichlet_l_negative(r, D) * acc;
}

bool in_span(const std::vector<QSeries>& B, const QSeries& v) {
    linalg::QMat rows;
    for (auto& b : B) rows.push_back(b.c);
    linalg::QVec x;
    return linalg::solve_in_span(rows, v.c, x, Rational(0), Rational(1));
}

} // namespace

TEST_CASE("generators") {
    auto th = theta(10);
    CHECK(th.c[0] == 1);
    CHECK(th.c[1] == 2);
    CHECK(th.c[2] == 0);
    CHECK(th.c[3] == 0);
    CHECK(th.c[4] == 2);
    auto F = f2_generator(20);
    CHECK(F.c[1] == 1);
    CHECK(F.c[3] == 4);
    CHECK(F.c[5] == 6);
    CHECK(F.c[9] == 13);
    for (size_t n = 0; n < 20; n += 2) CHECK(F.c[n] == 0);
}

TEST_CASE("monomial basis") {
    CHECK(basis_halfint(16, 40).size() == 9);
    CHECK(basis_halfint(8, 40).size() == 5);
    CHECK_THROWS_AS(basis_halfint(16, 9), Error);
    CHECK_THROWS_AS(basis_halfint(1, 40), Error);
    for (int lambda : {5, 8, 16}) {
        auto B = basis_halfint(lambda, 30);
        size_t J = B.size();
        linalg::QMat m;
        for (size_t j = 0; j < J; ++j) {
            // element j starts with q^j
            for (size_t n = 0; n < j; ++n) CHECK(B[j].c[n] == 0);
            CHECK(B[j].c[j] != 0);
            m.emplace_back(B[j].c.begin(), B[j].c.begin() + static_cast<long>(J + 1));
        }
        CHECK(linalg::rank(m) == J);
    }
    // the cache returns the same series at a smaller precision
    auto big = basis_halfint(8, 200), small = basis_halfint(8, 50);
    for (size_t j = 0; j < big.size(); ++j)
        for (size_t n = 0; n < 50; ++n) CHECK(big[j].c[n] == small[j].c[n]);
}

TEST_CASE("plus space dimensions match level one") {
    for (int lambda : {5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16}) {
        auto S = plus_space(lambda, 100);
        CHECK(static_cast<int>(S.modular.size()) == forms1::dim_modular(2 * lambda));
        CHECK(static_cast<int>(S.cusp.size()) == forms1::dim_cusp(2 * lambda));
        for (auto& s : S.modular)
            for (size_t e = 0; e < 100; ++e)
                if (!plus_index(lambda, static_cast<long>(e))) CHECK(s.c[e] == 0);
        for (auto& s : S.cusp) CHECK(s.c[0] == 0);
    }
    CHECK(plus_space(16).cusp.size() == 2);
    CHECK(plus_space(16).modular.size() == 3);
    CHECK(plus_space(8).cusp.size() == 1);
}

TEST_CASE("Cohen's Eisenstein series lies in the plus space") {
    for (int lambda : {6, 8, 9}) {
        const size_t N = 120;
        auto S = plus_space(lambda, N);
        QSeries H{std::vector<Rational>(N, Rational(0))};
        for (size_t e = 0; e < N; ++e)
            if (plus_index(lambda, static_cast<long>(e))) H.c[e] = cohen_h(lambda, static_cast<long>(e));
        CHECK(in_span(S.modular, H));
        CHECK_FALSE(in_span(S.cusp, H));
    }
}

TEST_CASE("T(p^2) on the plus space") {
    HalfIntForm zero;
    zero.lambda = 8;
    zero.q_expansion = qexp::to_field(QSeries{std::vector<Rational>(100, Rational(0))}, exactnum::NumberField::rationals());
    auto z = hecke_Tp2(zero, 3);
    CHECK(z.precision() == 11);
    for (auto& c : z.q_expansion.c) CHECK(c.is_zero());
    CHECK_THROWS_AS(hecke_Tp2(zero, 2), Error);
    CHECK_THROWS_AS(hecke_Tp2(zero, 11), Error);

    auto S = plus_space(8, 900);
    auto f = forms1::eigenforms(16).at(0);
    auto h = hecke_Tp2(S.cusp[0], 3, 8);
    CHECK(h.precision() == 100);
    for (size_t n = 0; n < h.precision(); ++n) {
        if (!plus_index(8, static_cast<long>(n))) CHECK(h.c[n] == 0);
        CHECK(h.c[n] == f.coeff(3).rational_value() * S.cusp[0].c[n]);
    }

    auto S16 = plus_space(16, 30 * 49);
    auto M9 = hecke_matrix_plus(S16, 3), M25 = hecke_matrix_plus(S16, 5);
    CHECK(linalg::multiply(M9, M25, Rational(0)) == linalg::multiply(M25, M9, Rational(0)));
    CHECK_THROWS_AS(hecke_matrix_plus(plus_space(16, 60), 7), Error);
}

TEST_CASE("weight 13/2 eigenform") {
    auto gs = shimura_match(6, 20);
    REQUIRE(gs.size() == 1);
    auto& g = gs[0].form;
    CHECK(gs[0].normalizing_index == 1);
    std::vector<std::pair<size_t, long>> expected{{1, 1}, {4, -56}, {5, 120}, {8, -240}, {9, 9}, {12, 1440}, {13, -1320}};
    for (auto [e, v] : expected) CHECK(g.coeff(e).rational_value() == v);
}

TEST_CASE("Shimura matching") {
    auto g8 = shimura_match(8, 60);
    REQUIRE(g8.size() == 1);
    CHECK(g8[0].matched.weight == 16);

    auto gs = shimura_match(16, 200);
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].matched.hecke_field->degree() == 2);
    CHECK(exactnum::same_field(gs[0].form.q_expansion.field, gs[1].form.q_expansion.field));
    CHECK(gs[0].matched.coeff(3) != gs[1].matched.coeff(3));
    CHECK(gs[0].matched.coeff(3) == exactnum::quadratic_conjugate(gs[1].matched.coeff(3)));
    for (auto& g : gs) {
        CHECK(g.form.coeff(static_cast<size_t>(g.normalizing_index)) == g.form.q_expansion.field->one());
        for (long p : {3L, 11L}) {
            auto h = hecke_Tp2(g.form, p);
            for (size_t n = 0; n < h.precision(); ++n) CHECK(h.coeff(n) == g.form.coeff(n) * g.matched.coeff(static_cast<size_t>(p)));
        }
        // the two eigenforms are conjugate
        for (size_t n = 0; n < 60; ++n)
            CHECK(exactnum::quadratic_conjugate(gs[0].form.coeff(n)) == gs[1].form.coeff(n));
        auto longer = extend(g, 16, 300);
        for (size_t n = 0; n < 200; ++n) CHECK(longer.coeff(n) == g.form.coeff(n));
        CHECK(!coefficient_generators(g.form, 50).empty());
    }
}
