#include "doctest.h"

#include <random>
#include <set>

#include "dii/qforms.hpp"

using namespace dii;
using namespace dii::qforms;
using exactnum::Integer;
using exactnum::make_rational;
using exactnum::Rational;

namespace {

HalfIntegralMatrix a2() { return HalfIntegralMatrix::binary(1, 1, 1); }

HalfIntegralMatrix a4() {
    return HalfIntegralMatrix(4, {2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2});
}

// random unimodular matrix as a product of elementary operations
std::vector<long> random_unimodular(int n, std::mt19937& rng) {
    std::vector<long> U(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) U[static_cast<size_t>(i * n + i)] = 1;
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
    for (int step = 0; step < 6; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long c = coef(rng);
        for (int r = 0; r < n; ++r) U[static_cast<size_t>(r * n + j)] += c * U[static_cast<size_t>(r * n + i)];
    }
    return U;
}

} // namespace

TEST_CASE("discriminant splitting") {
    auto d = disc_split(a2());
    CHECK(d.d == -3);
    CHECK(d.f == 1);
    CHECK(d.det2T == 3);
    auto h = HalfIntegralMatrix::from_rationals({{1, 0, 0, make_rational(1, 2)},
                                                 {0, 1, 0, make_rational(1, 2)},
                                                 {0, 0, 1, make_rational(1, 2)},
                                                 {make_rational(1, 2), make_rational(1, 2), make_rational(1, 2), 1}});
    CHECK(h == d4());
    auto dh = disc_split(h);
    CHECK(dh.d == 1);
    CHECK(dh.f == 2);
    auto d9 = disc_split(a2().direct_sum(a2()));
    CHECK(d9.det2T == 9);
    CHECK(d9.d == 1);
    CHECK(d9.f == 3);
    CHECK_THROWS_AS(disc_split(HalfIntegralMatrix::identity(3)), Error);
    CHECK_THROWS_AS(disc_split(HalfIntegralMatrix(2, {2, 2, 2, 2})), Error);
}

TEST_CASE("Hilbert symbol values") {
    for (long p : {0L, 2L, 3L, 5L, 7L})
        for (long b : {-7L, -1L, 2L, 3L, 10L}) CHECK(hilbert_symbol(1, b, Integer(p)) == 1);
    CHECK(hilbert_symbol(2, 3, Integer(2)) == -1);
    CHECK(hilbert_symbol(5, 7, Integer(5)) == -1);
    CHECK(hilbert_symbol(-1, -1, Integer(0)) == -1);
    CHECK(hilbert_symbol(-1, -1, Integer(2)) == -1);
    CHECK(hilbert_symbol(make_rational(3, 4), 3, Integer(3)) == hilbert_symbol(3, 3, Integer(3)));
}

TEST_CASE("Hilbert symbol: bimultiplicativity, (a,-a) = 1, product formula") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> dist(-60, 60);
    auto primes = exactnum::primes_up_to(61);
    for (int it = 0; it < 200; ++it) {
        long a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0 || b == 0 || c == 0) continue;
        int prod = hilbert_symbol(a, b, Integer(0));
        for (auto p : primes) {
            Integer P(p);
            CHECK(hilbert_symbol(a, b * c, P) == hilbert_symbol(a, b, P) * hilbert_symbol(a, c, P));
            CHECK(hilbert_symbol(a, -a, P) == 1);
            CHECK(hilbert_symbol(a, b, P) == hilbert_symbol(b, a, P));
            prod *= hilbert_symbol(a, b, P);
        }
        CHECK(prod == 1);
    }
}

TEST_CASE("Hasse invariants") {
    std::vector<Rational> one(6, Rational(1));
    for (long p : {2L, 3L, 5L}) CHECK(hasse_invariant(one, Integer(p)) == 1);
    std::vector<Rational> dd{1, 1, 1, 35};
    CHECK(hasse_invariant(dd, Integer(3)) == 1);
    CHECK(hasse_invariant({2, 3}, Integer(2)) == -1);
    CHECK_THROWS_AS(hasse_invariant({1, 0}, Integer(3)), Error);
    // the Hasse invariant is a class invariant
    auto diag = diagonalize(a4());
    std::mt19937 rng(3);
    auto B = a4().transform(random_unimodular(4, rng));
    auto diag2 = diagonalize(B.transform({0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0}));
    for (long p : {2L, 3L, 5L, 7L}) CHECK(hasse_invariant(diag, Integer(p)) == hasse_invariant(diag2, Integer(p)));
}

TEST_CASE("lattice construction") {
    auto E = construct_lattice(8, 1, LatticeMode::unimodular);
    CHECK(E == e8());
    CHECK(E.det2() == 1);
    CHECK(E.is_positive_definite());
    CHECK(construct_lattice(4, 1, LatticeMode::q_squared, 2) == d4());
    CHECK(construct_lattice(2, -4, LatticeMode::fundamental) == HalfIntegralMatrix::identity(2));
    for (long q : {3L, 5L, 7L, 11L}) {
        auto T = construct_lattice(4, 1, LatticeMode::q_squared, q);
        auto d = disc_split(T);
        CHECK(d.d == 1);
        CHECK(d.f == q);
    }
    for (long d : {-3L, -4L, -7L, -8L, -15L, -20L}) CHECK(disc_split(construct_lattice(2, d, LatticeMode::fundamental)).d == d);
    for (long d : {5L, 8L, 12L, 13L, 17L}) CHECK(disc_split(construct_lattice(4, d, LatticeMode::fundamental)).d == d);
    auto big = construct_lattice(12, 1, LatticeMode::q_squared, 2);
    CHECK(big.degree() == 12);
    CHECK(big.det2() == 4);
    CHECK(construct_lattice(16, 1, LatticeMode::unimodular).det2() == 1);
    CHECK_THROWS_AS(construct_lattice(4, -3, LatticeMode::fundamental), Error);
    CHECK_THROWS_AS(construct_lattice(6, 1, LatticeMode::unimodular), Error);
    try {
        construct_lattice(4, 1, LatticeMode::q_squared, 13, SearchLimits{4});
        FAIL("search should have been exhausted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::search_exhausted);
    }
}

TEST_CASE("enumeration examples") {
    auto one = enumerate_pd(1, 5);
    REQUIRE(one.size() == 5);
    for (long t = 1; t <= 5; ++t) CHECK(one[static_cast<size_t>(t - 1)] == HalfIntegralMatrix(1, {2 * t}));
    auto two = enumerate_pd(2, 4);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == a2());
    CHECK(two[1] == HalfIntegralMatrix::identity(2));
    CHECK(enumerate_pd(2, 0).empty());
    auto four = enumerate_pd(4, 5);
    REQUIRE(four.size() == 2);
    CHECK(equivalent(four[0], d4()));
    CHECK(equivalent(four[1], a4()));
}

TEST_CASE("binary class numbers") {
    auto classes = enumerate_pd(2, 8);
    auto count = [&](long det) {
        int c = 0;
        for (auto& T : classes) c += T.det2() == det;
        return c;
    };
    for (long d : {3L, 4L, 7L, 8L}) CHECK(count(d) == 1);
}

TEST_CASE("binary enumeration agrees with reduction of all forms in a box") {
    auto classes = enumerate_pd(2, 40);
    std::set<std::vector<long>> expected;
    for (long a = 1; a <= 40; ++a)
        for (long c = 1; c <= 40; ++c)
            for (long b = -40; b <= 40; ++b) {
                long det = 4 * a * c - b * b;
                if (det <= 0 || det > 40) continue;
                expected.insert(reduce_binary(HalfIntegralMatrix::binary(a, b, c)).twice_entries());
            }
    std::set<std::vector<long>> got;
    for (auto& T : classes) got.insert(reduce_binary(T).twice_entries());
    CHECK(got == expected);
    CHECK(got.size() == classes.size());
}

TEST_CASE("equivalence and invariants on enumerated classes") {
    std::mt19937 rng(5);
    for (int n : {2, 3, 4}) {
        auto classes = enumerate_pd(n, n == 4 ? 12 : 16);
        for (auto& T : classes) {
            CHECK(T.is_positive_definite());
            if (n % 2 == 0) {
                auto d = disc_split(T);
                Integer lhs = d.d * d.f * d.f;
                CHECK(lhs == ((n / 2) % 2 ? Integer(-T.det2()) : T.det2()));
            }
            auto U = random_unimodular(n, rng);
            CHECK(equivalent(T, T.transform(U)));
        }
        for (size_t i = 0; i < classes.size(); ++i)
            for (size_t j = i + 1; j < classes.size(); ++j) CHECK_FALSE(equivalent(classes[i], classes[j]));
    }
}
