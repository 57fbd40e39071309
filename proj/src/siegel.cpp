#include "dii/siegel.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dii/error.hpp"

namespace dii::siegel {

using exactnum::make_rational;

namespace {

Integer ipow(long p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

Rational rpow(const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// coefficients of sum_{i<=a} (p^2 X)^i [ sum_{j<=b-i} (p^3 X^2)^j - chi p X sum_{j<b-i} (p^3 X^2)^j ]
std::vector<Integer> binary_polynomial(long p, int a, int b, int chi) {
    std::vector<Integer> c(static_cast<size_t>(2 * b + 1), 0);
    for (int i = 0; i <= a; ++i) {
        Integer base = ipow(p, 2 * i);
        for (int j = 0; j <= b - i; ++j) c[static_cast<size_t>(i + 2 * j)] += base * ipow(p, 3 * j);
        for (int j = 0; j < b - i; ++j) c[static_cast<size_t>(i + 2 * j + 1)] -= chi * base * ipow(p, 3 * j + 1);
    }
    return c;
}

// invariant classes already compared with the counting oracle
std::mutex cache_mutex;
std::map<std::tuple<int, long, int, int, int>, bool> oracle_cache;

constexpr long kOracleModulus = 256; // largest p^nu counted on the fly for n = 2

// Compares F against the counting oracle on T at rank 4, once per invariant class.
bool oracle_check(SiegelPolynomial& F, const HalfIntegralMatrix& T, int a) {
    auto key = std::make_tuple(F.n, F.p, a, F.nu, F.chi);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = oracle_cache.find(key);
        if (it != oracle_cache.end()) return it->second;
    }
    int nu = stable_exponent(T, F.p);
    if (ipow(F.p, nu) > (F.n == 2 ? kOracleModulus : 1L << 12)) return false;
    const int rank = 4;
    Rational X = make_rational(1, ipow(F.p, rank / 2));
    Rational expected = gamma_factor(T, F.p, X) * F.eval(X);
    Rational got = local_density_count({T, rank, F.p, nu});
    if (got != expected)
        fail(ErrorKind::regression, "siegel series disagrees with the counting oracle: " + F.serialize() + " T=" +
                                        T.serialize() + " oracle=" + exactnum::to_string(got) +
                                        " closed form=" + exactnum::to_string(expected));
    std::lock_guard<std::mutex> lock(cache_mutex);
    oracle_cache[key] = true;
    return true;
}

} // namespace

Rational SiegelPolynomial::eval(const Rational& X) const {
    Rational r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * X + Rational(*it);
    return r;
}

std::string SiegelPolynomial::serialize() const {
    std::ostringstream os;
    os << "p=" << p << " n=" << n << " ord=" << ord_det << " nu=" << nu << " chi=" << chi << " [";
    for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i].get_str();
    os << "]";
    return os.str();
}

int stable_exponent(const HalfIntegralMatrix& T, long p) {
    return exactnum::valuation(T.det2(), Integer(p)) + 2 + (p == 2 ? 1 : 0);
}

SiegelPolynomial siegel_series(const HalfIntegralMatrix& T, long p) {
    require(p >= 2 && exactnum::is_probable_prime(Integer(p)), "siegel_series: p must be prime");
    require(T.is_positive_definite(), "siegel_series: T must be positive definite");
    const int n = T.degree();
    const Integer P(p);
    SiegelPolynomial F;
    F.p = p;
    F.n = n;
    F.ord_det = exactnum::valuation(T.det2(), P);

    if (n == 1) {
        long t = T.twice(0, 0) / 2;
        F.nu = exactnum::valuation(Integer(t), P);
        F.coeffs.assign(static_cast<size_t>(F.nu + 1), 0);
        for (int i = 0; i <= F.nu; ++i) F.coeffs[static_cast<size_t>(i)] = ipow(p, i);
        F.family = "degree-1";
        F.oracle_checked = oracle_check(F, T, 0);
        return F;
    }
    if (n % 2 != 0)
        fail(ErrorKind::unsupported, "siegel-unsupported: odd degree n=" + std::to_string(n) + " ord_p det(2T)=" +
                                         std::to_string(F.ord_det));

    auto dd = qforms::disc_split(T);
    F.nu = exactnum::valuation(dd.f, P);
    F.chi = exactnum::kronecker(dd.d, Integer(p));

    if (F.nu == 0) {
        F.coeffs = {1};
        F.family = "unramified-conductor";
        if (n == 2) F.oracle_checked = oracle_check(F, T, 0);
        return F;
    }
    if (n == 2) {
        int a = exactnum::valuation(T.content(), P);
        F.coeffs = binary_polynomial(p, a, F.nu, F.chi);
        F.family = "degree-2";
        F.oracle_checked = oracle_check(F, T, a);
        return F;
    }
    // det(2T) = q^2 with n = 4 mod 8: the discriminant form is forced to be the
    // anisotropic plane over F_q.
    if (n % 8 == 4 && T.det2() == P * P) {
        Integer s = ipow(p, n / 2 - 1);
        F.coeffs = {1, -s * (p * p + p), ipow(p, n + 1)};
        F.family = "det-q-squared";
        return F;
    }
    fail(ErrorKind::unsupported, "siegel-unsupported: n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                     " ord_p det(2T)=" + std::to_string(F.ord_det) + " nu_p(f_T)=" +
                                     std::to_string(F.nu) + " chi=" + std::to_string(F.chi));
}

bool check_functional_equation(const SiegelPolynomial& F) {
    require(F.n % 2 == 0, "check_functional_equation: n must be even");
    if (F.coeffs.empty() || F.coeffs[0] != 1) return false;
    if (F.degree() != 2 * F.nu) return false;
    // X^-nu F(p^-(n+1)/2 X) has X^(i-nu) coefficient c_i p^(-i(n+1)/2)
    for (int i = 0; i <= 2 * F.nu; ++i) {
        int j = 2 * F.nu - i;
        if (j < i) break;
        if (F.coeffs[static_cast<size_t>(j)] != F.coeffs[static_cast<size_t>(i)] * ipow(F.p, (j - i) * (F.n + 1) / 2))
            return false;
    }
    return true;
}

Rational gamma_factor(const HalfIntegralMatrix& T, long p, const Rational& X) {
    const int n = T.degree();
    Rational P(p);
    Rational g = 1 - X;
    for (int i = 1; i <= n / 2; ++i) g *= 1 - rpow(P, 2 * i) * X * X;
    if (n % 2 == 0) {
        int chi = exactnum::kronecker(qforms::disc_split(T).d, Integer(p));
        g /= 1 - chi * rpow(P, n / 2) * X;
    }
    return g;
}

Rational local_density_count(const LocalDensityRequest& req) {
    const auto& T = req.T;
    const int n = T.degree();
    const long p = req.p;
    require(n == 1 || n == 2, "local_density_count: degree must be 1 or 2");
    require(req.rank >= 2 && req.rank % 2 == 0, "local_density_count: rank must be even and positive");
    require(p >= 2 && exactnum::is_probable_prime(Integer(p)), "local_density_count: p must be prime");
    require(req.nu >= stable_exponent(T, p), "local_density_count: exponent below the stabilization bound");
    const int planes = req.rank / 2;
    Integer Mz = ipow(p, req.nu);
    if (Mz > (n == 1 ? 1L << 12 : 625L)) fail(ErrorKind::resource, "local_density_count: p^nu over budget");
    const long M = Mz.get_si();

    Integer count;
    if (n == 1) {
        // value distribution of u v on one plane, convolved planes times
        std::vector<Integer> h(static_cast<size_t>(M), 0);
        for (long u = 0; u < M; ++u)
            for (long v = 0; v < M; ++v) h[static_cast<size_t>(u * v % M)] += 1;
        std::vector<Integer> acc = h;
        for (int i = 1; i < planes; ++i) {
            std::vector<Integer> next(static_cast<size_t>(M), 0);
            for (long x = 0; x < M; ++x) {
                if (acc[static_cast<size_t>(x)] == 0) continue;
                for (long y = 0; y < M; ++y) next[static_cast<size_t>((x + y) % M)] += acc[static_cast<size_t>(x)] * h[static_cast<size_t>(y)];
            }
            acc.swap(next);
        }
        count = acc[static_cast<size_t>(mod(T.twice(0, 0) / 2, M))];
    } else {
        // Characters of the three constraints (two norms, one pairing). For a
        // symmetric A = [[al, be], [be, ga]] the plane sum of e(U^t A V / M)
        // is M^2 #ker(A mod M), and #ker = gcd(s1, M) gcd(s2, M) from the
        // elementary divisors. The remaining sum over e(-r/M) is rational,
        // so it equals its Galois average, a Ramanujan sum.
        const long a = mod(T.twice(0, 0) / 2, M), b = mod(T.twice(0, 1), M), c = mod(T.twice(1, 1) / 2, M);
        const long step = M / p; // Ramanujan sum c_M(r) vanishes unless step | r
        int emax = 2 * req.nu;
        std::vector<long> cnt(static_cast<size_t>(p * (emax + 1)), 0);
        auto vp = [&](long x) {
            if (x == 0) return req.nu;
            int e = 0;
            while (x % p == 0 && e < req.nu) x /= p, ++e;
            return e;
        };
        for (long al = 0; al < M; ++al)
            for (long be = 0; be < M; ++be) {
                long g1 = std::gcd(al, be);
                long r0 = (al * a + be * b) % M;
                for (long ga = 0; ga < M; ++ga) {
                    long r = (r0 + ga * c) % M;
                    if (r % step != 0) continue;
                    long s1 = std::gcd(g1, ga);
                    int e;
                    if (s1 == 0) {
                        e = 2 * req.nu;
                    } else {
                        long det = al * ga - be * be;
                        e = vp(s1) + vp(det / s1);
                    }
                    cnt[static_cast<size_t>((r / step) * (emax + 1) + e)] += 1;
                }
            }
        Integer total = 0;
        const Integer phi = Mz - Mz / p;
        for (long k = 0; k < p; ++k) {
            Integer W = 0;
            for (int e = 0; e <= emax; ++e) {
                long c0 = cnt[static_cast<size_t>(k * (emax + 1) + e)];
                if (c0 == 0) continue;
                Integer term = Mz * Mz * ipow(p, e);
                Integer pw;
                mpz_pow_ui(pw.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(planes));
                W += c0 * pw;
            }
            Integer ram = k == 0 ? phi : Integer(-(Mz / p));
            total += W * ram;
        }
        Integer denom = Mz * Mz * Mz * phi;
        if (total % denom != 0) fail(ErrorKind::regression, "local_density_count: character sum is not integral");
        count = total / denom;
    }
    // normalization p^(nu (n(n+1)/2 - rank n))
    long e = static_cast<long>(req.nu) * (n * (n + 1) / 2 - req.rank * n);
    return e >= 0 ? Rational(count * ipow(p, e)) : make_rational(count, ipow(p, -e));
}

Rational local_density_bruteforce(const LocalDensityRequest& req) {
    const auto& T = req.T;
    const int n = T.degree();
    const long p = req.p;
    require(n == 1 || n == 2, "local_density_bruteforce: degree must be 1 or 2");
    const int planes = req.rank / 2;
    Integer Mz = ipow(p, req.nu);
    const int vars = req.rank * n;
    Integer space;
    mpz_pow_ui(space.get_mpz_t(), Mz.get_mpz_t(), static_cast<unsigned long>(vars));
    if (space > 1L << 26) fail(ErrorKind::resource, "local_density_bruteforce: too many matrices");
    const long M = Mz.get_si();
    std::vector<long> x(static_cast<size_t>(vars), 0);
    long hits = 0;
    for (;;) {
        // columns j: (u_1..u_planes, v_1..v_planes) at offset j * rank
        auto norm = [&](int j) {
            long s = 0;
            for (int i = 0; i < planes; ++i) s += x[static_cast<size_t>(j * req.rank + i)] * x[static_cast<size_t>(j * req.rank + planes + i)];
            return mod(s, M);
        };
        bool ok = norm(0) == mod(T.twice(0, 0) / 2, M);
        if (ok && n == 2) {
            ok = norm(1) == mod(T.twice(1, 1) / 2, M);
            long bsum = 0;
            for (int i = 0; i < planes; ++i)
                bsum += x[static_cast<size_t>(i)] * x[static_cast<size_t>(req.rank + planes + i)] +
                        x[static_cast<size_t>(req.rank + i)] * x[static_cast<size_t>(planes + i)];
            ok = ok && mod(bsum, M) == mod(T.twice(0, 1), M);
        }
        hits += ok;
        int k = 0;
        while (k < vars && ++x[static_cast<size_t>(k)] == M) x[static_cast<size_t>(k++)] = 0;
        if (k == vars) break;
    }
    long e = static_cast<long>(req.nu) * (n * (n + 1) / 2 - req.rank * n);
    return e >= 0 ? Rational(Integer(hits) * ipow(p, e)) : make_rational(hits, ipow(p, -e));
}

} // namespace dii::siegel
