#include "doctest.h"

#include <random>

#include "dii/exactnum.hpp"

using namespace dii::exactnum;

namespace {

// Independent oracle: Bernoulli numbers from the exponential generating
// function t/(e^t - 1), computed as a power-series inverse.
std::vector<Rational> bernoulli_by_series(int n) {
    // (e^t - 1)/t = sum t^k/(k+1)!
    std::vector<Rational> a(n + 1), inv(n + 1, Rational(0));
    Rational fact = 1;
    for (int k = 0; k <= n; ++k) {
        fact *= (k + 1);
        a[k] = Rational(1) / fact;
    }
    inv[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += a[j] * inv[k - j];
        inv[k] = -s;
    }
    std::vector<Rational> b(n + 1);
    Rational f = 1;
    for (int k = 0; k <= n; ++k) {
        if (k) f *= k;
        b[k] = inv[k] * f;
    }
    return b;
}

FieldPtr quad(long b, long c) { return NumberField::create(QPoly({Rational(c), Rational(b), Rational(1)})); }

} // namespace

TEST_CASE("bernoulli values") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK_THROWS_AS(bernoulli(3), dii::Error);
}

TEST_CASE("bernoulli recurrence and series oracle up to 60") {
    auto oracle = bernoulli_by_series(60);
    for (int m = 2; m <= 60; m += 2) CHECK(bernoulli(m) == oracle[m]);
    for (int m = 2; m <= 60; ++m) {
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += Rational(binomial(m, j)) * (j % 2 && j > 1 ? Rational(0) : (j == 1 ? Rational(-1, 2) : bernoulli(j)));
        CHECK(s == 0);
    }
}

TEST_CASE("xi_tilde") {
    CHECK(xi_tilde(6) == Rational(1, 252));
    CHECK(xi_tilde(2) == Rational(1, 12));
    CHECK(xi_tilde(4) == Rational(1, 120));
    for (int m = 2; m <= 40; m += 2) {
        Rational sign = ((m / 2 + 1) % 2 == 0) ? 1 : -1;
        CHECK(xi_tilde(m) * m * sign == bernoulli(m));
    }
    CHECK_THROWS_AS(xi_tilde(3), dii::Error);
    CHECK_THROWS_AS(xi_tilde(0), dii::Error);
}

TEST_CASE("generalized bernoulli") {
    // L(0, chi_-4) = 1/2, L(0, chi_-3) = 1/3, L(-1, chi_5) = -2/5
    CHECK(dirichlet_l_negative(1, -4) == Rational(1, 2));
    CHECK(dirichlet_l_negative(1, -3) == Rational(1, 3));
    CHECK(dirichlet_l_negative(2, 5) == Rational(-2, 5));
    // trivial character: zeta(1-m) = -B_m/m
    CHECK(dirichlet_l_negative(4, 1) == -bernoulli(4) / 4);
}

TEST_CASE("integer factoring") {
    auto f = factor_integer(Integer("2305843009213693951") * 360);
    CHECK(factorization_string(f) == "2^3 * 3^2 * 5 * 2305843009213693951");
    auto g = factor_integer(Integer("1000000016000000063")); // 1000000007 * 1000000009
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == 1000000007);
    auto r = factor_rational(Rational(-12, 35));
    CHECK(factorization_string(r) == "2^2 * 3 * 5^-1 * 7^-1");
}

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental_discriminant(Integer(-3)));
    CHECK(is_fundamental_discriminant(Integer(-4)));
    CHECK(is_fundamental_discriminant(Integer(8)));
    CHECK(is_fundamental_discriminant(Integer(1)));
    CHECK_FALSE(is_fundamental_discriminant(Integer(-12)));
    CHECK_FALSE(is_fundamental_discriminant(Integer(9)));
    auto [d, f] = fundamental_split(Integer(-12));
    CHECK(d == -3);
    CHECK(f == 2);
    auto [d2, f2] = fundamental_split(Integer(9));
    CHECK(d2 == 1);
    CHECK(f2 == 3);
    auto [d3, f3] = fundamental_split(Integer(32));
    CHECK(d3 == 8);
    CHECK(f3 == 2);
}

TEST_CASE("polynomials") {
    QPoly x = QPoly::monomial(1);
    QPoly f = (x * x - QPoly::constant(2)) * (x + QPoly::constant(3)) * (x + QPoly::constant(3));
    auto fac = factor_over_q(f);
    REQUIRE(fac.size() == 3);
    CHECK(fac[0] == x + QPoly::constant(3));
    CHECK(fac[1] == x + QPoly::constant(3));
    CHECK(fac[2] == x * x - QPoly::constant(2));
    CHECK(discriminant(x * x - QPoly::constant(5)) == 20);
    QPoly cyc = QPoly({1, 1, 1, 1, 1});
    CHECK(factor_over_q(cyc).size() == 1);
    QPoly x4m1 = QPoly::monomial(4) - QPoly::constant(1);
    CHECK(factor_over_q(x4m1).size() == 3);
    // charpoly of [[1,2],[3,4]] = x^2 - 5x - 2
    std::vector<std::vector<Rational>> m{{1, 2}, {3, 4}};
    CHECK(charpoly(m) == QPoly({-2, -5, 1}));
}

TEST_CASE("prime splitting examples") {
    auto K = quad(0, -5);
    auto s11 = prime_split(K, 11);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0].norm() == 11);
    CHECK(s11[1].norm() == 11);
    CHECK(s11[0].kind() == PrimeIdeal::Kind::split);
    auto s5 = prime_split(K, 5);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].ramification() == 2);
    auto Ki = quad(0, 1);
    auto s3 = prime_split(Ki, 3);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].residue_degree() == 2);
    // 2 in Q(sqrt 5) is inert (5 = 5 mod 8), 11 splits, 2 ramifies in Q(i)
    CHECK(prime_split(K, 2).size() == 1);
    CHECK(prime_split(Ki, 2)[0].ramification() == 2);
    // sum e f = degree and product of norms^e = p^2
    for (long p : {2, 3, 5, 7, 11, 13, 29, 31, 211}) {
        for (auto F : {K, Ki, quad(1, -1), quad(-3, -11)}) {
            auto ps = prime_split(F, p);
            int s = 0;
            Integer prod = 1;
            for (auto& P : ps) {
                s += P.ramification() * P.residue_degree();
                for (int i = 0; i < P.ramification(); ++i) prod *= P.norm();
            }
            CHECK(s == 2);
            CHECK(prod == Integer(p) * p);
        }
    }
}

TEST_CASE("valuations and norms") {
    auto K = quad(0, -5);
    NFElem t = K->gen();
    CHECK(t.norm() == -5);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            NFElem x = K->from_rational(a) + t * Rational(b);
            CHECK(x.norm() == a * a - 5 * b * b);
        }
    CHECK(K->from_rational(Rational(3, 2)).norm() == Rational(9, 4));
    auto s11 = prime_split(K, 11);
    CHECK(s11[0].ord(K->one()) == 0);
    CHECK(s11[0].ord(K->from_rational(11)) == 1);
    // 4 + sqrt5 has norm 11: exactly one of the two primes divides it
    NFElem g = K->from_rational(4) + t;
    CHECK(s11[0].ord(g) + s11[1].ord(g) == 1);
    // ord of the generator of the ideal it lies in
    for (auto& P : s11) CHECK(P.ord(P.generator()) >= 1);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-40, 40);
    auto F = quad(-1, -7); // disc 29
    auto primes = prime_split(F, 7);
    auto primes5 = prime_split(F, 5);
    for (int it = 0; it < 60; ++it) {
        NFElem x = F->element({Rational(d(rng), 1 + (it % 3)), Rational(d(rng))});
        NFElem y = F->element({Rational(d(rng)), Rational(d(rng), 1 + (it % 2))});
        if (x.is_zero() || y.is_zero()) continue;
        CHECK((x * y).norm() == x.norm() * y.norm());
        for (auto& P : primes) CHECK(P.ord(x * y) == P.ord(x) + P.ord(y));
        for (auto& P : primes5) CHECK(P.ord(x * y) == P.ord(x) + P.ord(y));
        CHECK((x / y) * y == x);
    }
}

TEST_CASE("higher degree fields") {
    // x^3 - x - 1, disc -23
    auto K = NumberField::create(QPoly({-1, -1, 0, 1}));
    CHECK(K->discriminant() == -23);
    for (long p : {5, 7, 11, 13, 59}) {
        auto ps = prime_split(K, p);
        int s = 0;
        for (auto& P : ps) s += P.residue_degree();
        CHECK(s == 3);
        NFElem x = K->element({3, 1, 2}), y = K->element({Rational(1, 2), -1, 4});
        for (auto& P : ps) CHECK(P.ord(x * y) == P.ord(x) + P.ord(y));
        for (auto& P : ps) CHECK(P.ord(K->from_rational(p)) == 1);
    }
    CHECK_THROWS_AS(prime_split(K, 23), dii::Error);
    CHECK(ideal_norm({K->from_rational(5)}) == 125);
}

TEST_CASE("ideal norm and serialization") {
    auto K = quad(0, -5);
    auto s11 = prime_split(K, 11);
    CHECK(ideal_norm({K->from_rational(11), s11[0].generator()}) == 11);
    CHECK(serialize(K->element({Rational(1, 2), 3})) == "[\"1/2\",\"3\"]");
    NFElem t = K->gen();
    CHECK(quadratic_conjugate(t) == -t);
    CHECK(t * quadratic_conjugate(t) == K->from_rational(t.norm()));
}
