#include "doctest.h"

#include <random>

#include "dii/halfint.hpp"
#include "dii/lser.hpp"
#include "dii/msym.hpp"

using namespace dii;
using namespace dii::lser;
using exactnum::Integer;
using exactnum::make_rational;
using mp::Complex;

namespace {

const forms1::PrimitiveForm& delta() {
    static auto fs = forms1::eigenforms(12);
    return fs.at(0);
}

const forms1::PrimitiveForm& weight32_form() {
    static auto fs = forms1::eigenforms(32);
    return fs.at(0);
}

double rel(const Real& a, const Real& b) { return (mp::abs(a - b) / mp::abs(b)).to_double(); }

} // namespace

TEST_CASE("balls enclose closed forms") {
    mp::WorkingPrecision wp(160);
    Real pi = Real::pi();
    Real z6 = mp::pow(pi, 6) / Real(945);
    CHECK(Ball(mp::zeta(6), mp::ldexp(Real(1), -150)).contains(z6));
    CHECK(Ball(mp::gamma(Real(7)), Real(0)).contains(make_rational(720)));
    Ball third = Ball::exact(make_rational(1, 3));
    CHECK((third * Ball(Real(3))).contains(make_rational(1)));
    CHECK_FALSE(Ball(Real(1), mp::ldexp(Real(1), -100)).contains(make_rational(1) + make_rational(1, 1 << 20)));
}

TEST_CASE("Petersson norm of Delta") {
    mp::WorkingPrecision wp(128);
    Ball p = petersson_numeric(embed_form(delta(), 0));
    CHECK(p.positive());
    CHECK(p.contains(Real::from_string("1.035362056804320922347816812225164593245e-6")));
    CHECK(p.relative_radius() < 1e-30);
}

TEST_CASE("too few coefficients are rejected") {
    mp::WorkingPrecision wp(128);
    EmbeddedForm ef = embed_form(delta(), 0, 10);
    CHECK_THROWS_AS(petersson_numeric(ef), Error);
}

TEST_CASE("conjugate weight 32 forms have distinct positive norms") {
    mp::WorkingPrecision wp(96);
    Ball a = petersson_numeric(embed_form(weight32_form(), 0));
    Ball b = petersson_numeric(embed_form(weight32_form(), 1));
    CHECK(a.positive());
    CHECK(b.positive());
    CHECK(rel(a.mid(), b.mid()) > 1e-3);
}

TEST_CASE("real-analytic Eisenstein series is invariant under inversion") {
    mp::WorkingPrecision wp(128);
    Real x(0.13), y(1.1);
    Real r2 = x * x + y * y;
    for (int m : {2, 3, 5}) {
        Real a = eisenstein_real_analytic(x, y, m);
        Real b = eisenstein_real_analytic(-x / r2, y / r2, m);
        CHECK(rel(a, b) < 1e-30);
    }
}

TEST_CASE("adjoint local factor") {
    // compare with (1 - X)(1 - b^2 X)(1 - b^-2 X) for the unitary b with
    // b + 1/b = a_p p^(-(w-1)/2)
    mp::WorkingPrecision wp(128);
    const auto& f = delta();
    for (long p : {2L, 3L, 5L, 7L}) {
        auto c = adjoint_local_factor(f.coeff(p), p, 12);
        REQUIRE(c.size() == 4);
        Real t = Real(f.coeff(p).rational_value()) / mp::pow(mp::sqrt(Real(p)), 11);
        Real im = mp::sqrt(Real(4) - t * t);
        Complex b(t / Real(2), im / Real(2));
        Complex b2 = b * b, bi2 = b2.conj();
        Complex X(Real(0.3), Real(0.2));
        Complex one(Real(1));
        Complex lhs = (one - X) * (one - b2 * X) * (one - bi2 * X);
        Complex rhs(Real(0));
        Complex Xi(Real(1));
        for (int i = 0; i < 4; ++i) {
            rhs = rhs + Xi * Real(c[i].rational_value());
            Xi = Xi * X;
        }
        CHECK(mp::abs(lhs - rhs).to_double() < 1e-35);
    }
}

TEST_CASE("adjoint L-value of Delta against its Euler product") {
    mp::WorkingPrecision wp(128);
    const int m = 9;
    Ball L = L_adjoint_numeric(embed_form(delta(), 0), m);
    auto fs = forms1::eigenforms(12, 400);
    Real prod(1);
    for (auto p : exactnum::primes_up_to(400)) {
        auto c = adjoint_local_factor(fs.at(0).coeff(p), p, 12);
        Real X = Real(1) / mp::pow(Real(p), m), v(0), Xi(1);
        for (int i = 0; i < 4; ++i) {
            v += Xi * Real(c[i].rational_value());
            Xi *= X;
        }
        prod /= v;
    }
    // the tail beyond 400 is below 400^-8
    CHECK(rel(L.mid(), prod) < 1e-19);
    // far to the right the Euler product is 1 to within 2^-30
    Ball Lfar = L_adjoint_numeric(embed_form(delta(), 0), 11);
    CHECK(std::abs(Lfar.mid().to_double() - 1.0) < 2e-3);
    CHECK(std::abs(Lfar.mid().to_double() - 1.0) > 0);
}

TEST_CASE("normalized adjoint value of Delta is rational") {
    mp::WorkingPrecision wp(128);
    Ball v = adjoint_normalized_numeric(embed_form(delta(), 0), 3);
    CHECK(v.contains(make_rational(8192, 7)));
}

TEST_CASE("reconstruction is idempotent on small elements") {
    mp::WorkingPrecision wp(128);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-500, 500), den(1, 60);
    for (auto disc : {5L, 13L, 37L}) {
        auto K = exactnum::NumberField::create(exactnum::QPoly({Rational(-disc), Rational(0), Rational(1)}));
        auto roots = real_embeddings(K);
        for (int it = 0; it < 20; ++it) {
            NFElem x = K->element({make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))});
            std::vector<Real> v;
            for (auto& r : roots) v.push_back(embed(x, r));
            CHECK(reconstruct(K, v) == x);
            // swapping the embeddings conjugates
            std::swap(v[0], v[1]);
            CHECK(reconstruct(K, v) == exactnum::quadratic_conjugate(x));
        }
    }
}

TEST_CASE("reconstruction refuses noise") {
    mp::WorkingPrecision wp(128);
    auto K = exactnum::NumberField::create(exactnum::QPoly({Rational(-5), Rational(0), Rational(1)}));
    std::vector<Real> v{mp::sqrt(Real(2)), mp::log(Real(3))};
    CHECK_THROWS_AS(reconstruct(K, v), Error);
}

TEST_CASE("Hecke L functional equation") {
    mp::WorkingPrecision wp(128);
    const auto& f = weight32_form();
    Real pi = Real::pi();
    for (size_t e = 0; e < 2; ++e) {
        auto ef = embed_form(f, e, 200);
        for (int l : {17, 20, 25}) {
            // Lambda(l) = (2 pi)^-l Gamma(l) L(l) is symmetric under l -> 32 - l
            Real a = hecke_L(ef, l).mid() * mp::gamma(Real(l)) / mp::pow(Real(2) * pi, l);
            Real b = hecke_L(ef, 32 - l).mid() * mp::gamma(Real(32 - l)) / mp::pow(Real(2) * pi, 32 - l);
            CHECK(rel(a, b) < 1e-30);
        }
    }
}

TEST_CASE("same-parity ratios of exact values match numerical L-values") {
    mp::WorkingPrecision wp(128);
    const auto& f = weight32_form();
    auto S = msym::build_space(32);
    auto pd = msym::periods(S, f);
    auto roots = real_embeddings(f.hecke_field);
    Real pi = Real::pi();
    // raw(l) is proportional to (l-1)! (2 pi)^-l L(l) with an l-independent factor
    auto scaled = [&](const EmbeddedForm& ef, int l, long D) {
        return hecke_L(ef, l, D).mid() * mp::gamma(Real(l)) / mp::pow(Real(2) * pi, l);
    };
    struct Pair {
        int l1, l2;
        long D;
    };
    for (auto [l1, l2, D] : {Pair{18, 16, 1}, Pair{21, 23, 1}, Pair{20, 22, 1}, Pair{17, 19, 5}, Pair{18, 20, -3}}) {
        auto a = msym::critical_Lvalue(S, pd, l1, D), b = msym::critical_Lvalue(S, pd, l2, D);
        REQUIRE_FALSE(b.is_zero());
        for (size_t e = 0; e < 2; ++e) {
            auto ef = embed_form(f, e, 260);
            Real exact = embed(a.raw, roots[e]) / embed(b.raw, roots[e]);
            Real numeric = scaled(ef, l1, D) / scaled(ef, l2, D);
            // i^(l1 - l2) = (-1)^((l1 - l2)/2)
            if (((l1 - l2) / 2) % 2) numeric = -numeric;
            CHECK_MESSAGE(rel(exact, numeric) < 1e-20, "l=" << l1 << "," << l2 << " D=" << D);
        }
    }
}

TEST_CASE("adjoint precondition") {
    CHECK_THROWS_AS(adjoint_normalized(delta(), 4), Error);
    CHECK_THROWS_AS(adjoint_normalized(delta(), 1), Error);
}

TEST_CASE("weight 32 adjoint values are stable under doubling") {
    const auto& f = weight32_form();
    for (int m : {3, 5, 7}) {
        AdjointValue v = adjoint_normalized(f, m, 256);
        CHECK_MESSAGE(v.verified, "m=" << m);
        CHECK(v.precision_bits == 256);
        CHECK(v.value.field() == f.hecke_field);
        REQUIRE(v.numeric.size() == 2);
        CHECK(v.numeric[0].positive());
        CHECK(v.numeric[1].positive());
        // 211 divides no adjoint value here
        CHECK(exactnum::valuation(v.value.norm(), Integer(211)) == 0);
    }
}

namespace {

Complex eval_series(const std::vector<Real>& a, const Complex& z, const Real& offset) {
    Real pi = Real::pi();
    Complex acc;
    for (size_t n = 0; n < a.size(); ++n) {
        Real e = Real(static_cast<long>(n)) + offset;
        acc += mp::exp(Complex(Real(-2) * pi * e * z.im, Real(2) * pi * e * z.re)) * a[n];
    }
    return acc;
}

std::vector<Real> embed_rational(const qexp::KSeries& s, size_t count) {
    std::vector<Real> v;
    for (size_t n = 0; n < std::min(count, s.precision()); ++n) v.push_back(Real(s.c[n].rational_value()));
    return v;
}

} // namespace

TEST_CASE("Kohnen-Zagier: weight 17/2 against weight 16") {
    mp::WorkingPrecision wp(128);
    const int lambda = 8;
    auto gs = halfint::shimura_match(lambda, 40);
    REQUIRE(gs.size() == 1);
    auto ce = halfint::cusp_expansions(lambda, halfint::monomial_coords(gs[0], lambda), 110);
    CHECK(ce.zero.c[0].is_zero());
    HalfIntegralCharts H{lambda, embed_rational(ce.infinity, 40), embed_rational(ce.zero, 110), embed_rational(ce.half, 40),
                         ce.half_offset};
    // the cusp expansions agree with the expansion at oo moved by Gamma0(4)
    Real k = Real(lambda) + Real(0.5);
    Complex z(Real(0.1), Real(0.6));
    auto full = embed_rational(ce.infinity, 110);
    Complex gz = Complex(Real(-1)) / z;
    Complex w(z.re / Real(4), z.im / Real(4));
    Real a = eval_series(full, gz, Real(0)).norm2() * mp::pow(gz.im, k);
    Real b = eval_series(H.zero, w, Real(0)).norm2() * mp::pow(w.im, k);
    CHECK(mp::abs(a - b) < mp::ldexp(a, -100));
    Complex gz2 = z / Complex(Real(2) * z.re + Real(1), Real(2) * z.im);
    Complex u(z.re + Real(0.5), z.im);
    a = eval_series(full, gz2, Real(0)).norm2() * mp::pow(gz2.im, k);
    b = eval_series(H.half, u, Real(ce.half_offset)).norm2() * mp::pow(u.im, k);
    CHECK(mp::abs(a - b) < mp::ldexp(a, -100));

    auto gg = petersson_halfint(H);
    CHECK(gg.rad() < mp::ldexp(gg.mid(), -100));
    auto f = embed_form(gs[0].matched, 0);
    auto ff = petersson_numeric(f);
    for (long D : {1L, 5L}) {
        auto L = hecke_L(embed_form(gs[0].matched, 0, 120), lambda, D);
        Real c(gs[0].form.coeff(static_cast<size_t>(D)).rational_value());
        Real left = c * c / gg.mid();
        Real gc = Real(2) * mp::pow(Real(2) * Real::pi(), Real(-lambda)) * mp::gamma(Real(lambda));
        Real right = mp::pow(Real(2), lambda - 1) * mp::pow(Real(D), Real(lambda) - Real(0.5)) * gc * L.mid() / ff.mid();
        CHECK(mp::abs(left - right) < mp::ldexp(right, -90));
    }
    HalfIntegralCharts shortH = H;
    shortH.zero.resize(20);
    CHECK_THROWS_AS(petersson_halfint(shortH), Error);
}
