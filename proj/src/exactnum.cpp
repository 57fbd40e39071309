#include "dii/exactnum.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <mutex>
#include <sstream>

#include "dii/mp.hpp"

namespace dii::exactnum {

Rational make_rational(const Integer& num, const Integer& den) {
    require(den != 0, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) fail(ErrorKind::precondition, "not a rational: " + s);
    require(r.get_den() != 0, "zero denominator in " + s);
    r.canonicalize();
    return r;
}

int valuation(const Integer& x, const Integer& p) {
    require(x != 0, "valuation of zero");
    require(p >= 2, "valuation base must be >= 2");
    Integer t = abs(x);
    int v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation(const Rational& x, const Integer& p) {
    require(x != 0, "valuation of zero");
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

// Pollard-Brent; returns a nontrivial factor or 0 after the iteration cap.
Integer pollard_brent(const Integer& n, unsigned long seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    Integer y = seed % n, c = (seed * 7 + 1) % n, m = 128, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) {
        Integer t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    const unsigned long cap = 1ul << 24;
    unsigned long iters = 0;
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = f(y);
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = (m < r - k) ? m : Integer(r - k);
            for (Integer i = 0; i < lim; ++i) {
                y = f(y);
                Integer d = abs(Integer(x - y));
                q = q * d % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            iters += lim.get_ui();
            if (iters > cap) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Integer d = abs(Integer(x - ys));
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void factor_rec(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer s;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
        factor_rec(s, out);
        factor_rec(s, out);
        return;
    }
    for (unsigned long seed = 2; seed < 40; ++seed) {
        Integer d = pollard_brent(n, seed);
        if (d != 0 && d != 1 && d != n) {
            factor_rec(d, out);
            factor_rec(n / d, out);
            return;
        }
    }
    fail(ErrorKind::resource, "could not factor " + n.get_str());
}

} // namespace

std::vector<std::pair<Integer, int>> factor_integer(Integer n) {
    require(n != 0, "factor of zero");
    n = abs(n);
    std::map<Integer, int> out;
    for (unsigned long p = 2; p < 20000; p += (p == 2 ? 1 : 2)) {
        if (n == 1) break;
        if (Integer(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Integer(p)] += 1;
            n /= p;
        }
    }
    factor_rec(n, out);
    return {out.begin(), out.end()};
}

std::vector<std::pair<Integer, int>> factor_rational(const Rational& x) {
    require(x != 0, "factor of zero");
    std::map<Integer, int> out;
    for (auto& [p, e] : factor_integer(x.get_num())) out[p] += e;
    for (auto& [p, e] : factor_integer(x.get_den())) out[p] -= e;
    return {out.begin(), out.end()};
}

std::string factorization_string(const std::vector<std::pair<Integer, int>>& f) {
    if (f.empty()) return "1";
    std::string s;
    for (auto& [p, e] : f) {
        if (!s.empty()) s += " * ";
        s += p.get_str();
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
    std::vector<std::int64_t> out;
    if (bound < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(bound) + 1, false);
    for (std::int64_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= bound; j += i) comp[j] = true;
    }
    return out;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(long n) {
    require(n >= 0, "factorial of negative");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

int kronecker(const Integer& D, const Integer& n) {
    require(n >= 1, "kronecker modulus must be positive");
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

int kronecker(long D, long n) { return kronecker(Integer(D), Integer(n)); }

namespace {

bool squarefree(const Integer& m) {
    if (m == 0) return false;
    for (auto& [p, e] : factor_integer(m))
        if (e > 1) return false;
    return true;
}

Integer mod_floor(const Integer& a, long m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
    return r;
}

} // namespace

bool is_fundamental_discriminant(const Integer& d) {
    if (d == 1) return true;
    if (d == 0) return false;
    Integer r = mod_floor(d, 4);
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    Integer m = d / 4;
    Integer r4 = mod_floor(m, 4);
    return (r4 == 2 || r4 == 3) && squarefree(m);
}

std::pair<Integer, Integer> fundamental_split(const Integer& x) {
    require(x != 0, "fundamental_split of zero");
    Integer r = mod_floor(x, 4);
    require(r == 0 || r == 1, "fundamental_split needs x = 0,1 mod 4");
    Integer s = x < 0 ? Integer(-1) : Integer(1), t = 1;
    for (auto& [p, e] : factor_integer(x)) {
        if (e % 2) s *= p;
        for (int i = 0; i < e / 2; ++i) t *= p;
    }
    Integer d = s;
    if (mod_floor(s, 4) != 1) {
        d = 4 * s;
        assert(t % 2 == 0);
        t /= 2;
    }
    return {d, t};
}

namespace {

// B_j for every j >= 0 with B_1 = -1/2 and odd j > 1 giving 0.
Rational bernoulli_any(int m) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= m) {
        int n = static_cast<int>(cache.size());
        Rational s = 0;
        for (int j = 0; j < n; ++j) s += Rational(binomial(n + 1, j)) * cache[j];
        cache.push_back(-s / Rational(n + 1));
    }
    return cache[m];
}

} // namespace

Rational bernoulli(int m) {
    require(m >= 0, "bernoulli index must be >= 0");
    require(m <= 1 || m % 2 == 0, "bernoulli index must be even (or 0, 1)");
    return bernoulli_any(m);
}

Rational xi_tilde(int m) {
    require(m >= 2 && m % 2 == 0, "xi_tilde needs an even argument >= 2");
    Rational b = bernoulli(m) / Rational(m);
    return ((m / 2 + 1) % 2 == 0) ? b : Rational(-b);
}

Rational generalized_bernoulli(int m, long D) {
    require(m >= 0, "generalized_bernoulli index must be >= 0");
    require(is_fundamental_discriminant(Integer(D)), "character must come from a fundamental discriminant");
    long f = D < 0 ? -D : D;
    Rational total = 0;
    for (long a = 1; a <= f; ++a) {
        int chi = (f == 1) ? 1 : kronecker(D, a);
        if (chi == 0) continue;
        // Bernoulli polynomial B_m(a/f)
        Rational x(a, f);
        x.canonicalize();
        Rational bp = 0, xp = 1;
        std::vector<Rational> powers(m + 1);
        for (int i = 0; i <= m; ++i) {
            powers[i] = xp;
            xp *= x;
        }
        for (int j = 0; j <= m; ++j) bp += Rational(binomial(m, j)) * bernoulli_any(j) * powers[m - j];
        total += chi * bp;
    }
    Rational fm = 1;
    for (int i = 0; i < m - 1; ++i) fm *= f;
    if (m == 0) fm = Rational(1, f);
    return total * fm;
}

Rational dirichlet_l_negative(int m, long D) {
    require(m >= 1, "dirichlet_l_negative needs m >= 1");
    return -generalized_bernoulli(m, D) / Rational(m);
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

QPoly QPoly::monomial(int degree, const Rational& c) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0); }

Rational QPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational QPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly QPoly::derivative() const {
    std::vector<Rational> v;
    for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
    return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
    require(!c_.empty(), "monic of zero polynomial");
    return *this * (1 / leading());
}

bool QPoly::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x = -x;
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (c_.empty() || o.c_.empty()) return QPoly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& s) const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= s;
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    require(!d.is_zero(), "division by zero polynomial");
    std::vector<Rational> r(c_);
    int dd = d.degree();
    if (degree() < dd) return {QPoly(), *this};
    std::vector<Rational> q(degree() - dd + 1, Rational(0));
    Rational lc = d.leading();
    for (int i = degree(); i >= dd; --i) {
        if (r[i] == 0) continue;
        Rational t = r[i] / lc;
        q[i - dd] = t;
        for (int j = 0; j <= dd; ++j) r[i - dd + j] -= t * d.c_[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

std::string QPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Rational& a = c_[i];
        if (a == 0) continue;
        bool neg = a < 0;
        Rational m = abs(a);
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        bool one = (m == 1);
        if (i == 0 || !one) s += exactnum::to_string(m);
        if (i > 0) {
            if (!one) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

namespace {

Rational det_rational(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational t = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= t * m[c][j];
        }
    }
    return det;
}

} // namespace

Rational resultant(const QPoly& f, const QPoly& g) {
    int m = f.degree(), n = g.degree();
    require(m >= 0 && n >= 0, "resultant of zero polynomial");
    if (m == 0 && n == 0) return 1;
    if (m == 0) { Rational r = 1; for (int i = 0; i < n; ++i) r *= f.leading(); return r; }
    if (n == 0) { Rational r = 1; for (int i = 0; i < m; ++i) r *= g.leading(); return r; }
    int N = m + n;
    std::vector<std::vector<Rational>> s(N, std::vector<Rational>(N, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(n - j);
    return det_rational(std::move(s));
}

Rational discriminant(const QPoly& f) {
    int n = f.degree();
    require(n >= 1, "discriminant of constant");
    Rational r = resultant(f, f.derivative()) / f.leading();
    return ((n * (n - 1) / 2) % 2) ? Rational(-r) : r;
}

bool is_squarefree(const QPoly& f) { return gcd(f, f.derivative()).degree() == 0; }

namespace {

// Primitive integer polynomial proportional to f.
std::vector<Integer> primitive_integer(const QPoly& f) {
    Integer l = 1;
    for (auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> v;
    Integer g = 0;
    for (auto& c : f.coeffs()) {
        Rational t = c * l;
        v.push_back(t.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
    }
    if (v.back() < 0) g = -g;
    for (auto& x : v) x /= g;
    return v;
}

QPoly from_integers(const std::vector<Integer>& v) {
    std::vector<Rational> c;
    for (auto& x : v) c.emplace_back(x);
    return QPoly(std::move(c));
}

// Simultaneous root approximation (Aberth) of a squarefree integer polynomial.
std::vector<mp::Complex> complex_roots(const std::vector<Integer>& c, long bits) {
    mp::WorkingPrecision wp(bits);
    int n = static_cast<int>(c.size()) - 1;
    std::vector<mp::Real> a;
    for (auto& x : c) a.emplace_back(x);
    mp::Real lc = a[n];
    for (auto& x : a) x /= lc;
    // Cauchy bound for the starting circle.
    mp::Real bound(1);
    for (int i = 0; i < n; ++i) bound = mp::max(bound, mp::Real(1) + mp::abs(a[i]));
    std::vector<mp::Complex> z(n);
    for (int k = 0; k < n; ++k) {
        mp::Real ang = mp::Real(2) * mp::Real::pi() * mp::Real(k) / mp::Real(n) + mp::Real(0.4);
        z[k] = mp::Complex(bound * mp::cos(ang), bound * mp::sin(ang));
    }
    auto evalp = [&](const mp::Complex& x, mp::Complex& p, mp::Complex& dp) {
        p = mp::Complex(mp::Real(1));
        dp = mp::Complex(mp::Real(0));
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + mp::Complex(a[i]);
        }
    };
    mp::Real tol = mp::ldexp(mp::Real(1), -(bits - 16));
    for (int iter = 0; iter < 20 * bits; ++iter) {
        mp::Real maxstep(0);
        for (int k = 0; k < n; ++k) {
            mp::Complex p, dp;
            evalp(z[k], p, dp);
            if (p.re.is_zero() && p.im.is_zero()) continue;
            mp::Complex ratio = p / dp;
            mp::Complex s(mp::Real(0));
            for (int j = 0; j < n; ++j)
                if (j != k) s += mp::Complex(mp::Real(1)) / (z[k] - z[j]);
            mp::Complex step = ratio / (mp::Complex(mp::Real(1)) - ratio * s);
            z[k] -= step;
            maxstep = mp::max(maxstep, mp::abs(step) / mp::max(mp::Real(1), mp::abs(z[k])));
        }
        if (maxstep < tol) break;
    }
    return z;
}

// Irreducible factors of a squarefree primitive integer polynomial.
std::vector<QPoly> factor_squarefree(const QPoly& f) {
    if (f.degree() <= 1) return {f.monic()};
    std::vector<Integer> c = primitive_integer(f);
    size_t maxbits = 0;
    for (auto& x : c) maxbits = std::max(maxbits, mpz_sizeinbase(x.get_mpz_t(), 2));
    int n = f.degree();
    long bits = 256 + 8 * static_cast<long>(maxbits) + 16 * n;
    auto roots = complex_roots(c, bits);
    mp::WorkingPrecision wp(bits);

    std::vector<QPoly> out;
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    QPoly rest = f.monic();
    for (int size = 1; 2 * size <= static_cast<int>(alive.size()); ++size) {
        bool found = true;
        while (found && 2 * size <= static_cast<int>(alive.size())) {
            found = false;
            int m = static_cast<int>(alive.size());
            std::vector<int> sel(size);
            std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
                if (pos == size) {
                    // product of (x - r) over the selection
                    std::vector<mp::Complex> prod{mp::Complex(mp::Real(1))};
                    for (int idx : sel) {
                        const mp::Complex& r = roots[alive[idx]];
                        std::vector<mp::Complex> nxt(prod.size() + 1, mp::Complex(mp::Real(0)));
                        for (size_t i = 0; i < prod.size(); ++i) {
                            nxt[i + 1] += prod[i];
                            nxt[i] -= prod[i] * r;
                        }
                        prod = std::move(nxt);
                    }
                    mp::Real lcr(c.back());
                    std::vector<Rational> cand;
                    for (auto& z : prod) {
                        mp::Real v = z.re * lcr;
                        cand.emplace_back(v.round());
                    }
                    QPoly g = QPoly(cand);
                    if (g.degree() != size) return false;
                    g = g.monic();
                    if (!(rest % g).is_zero()) return false;
                    out.push_back(g);
                    rest = rest / g;
                    std::vector<int> keep;
                    for (int i = 0; i < m; ++i)
                        if (std::find(sel.begin(), sel.end(), i) == sel.end()) keep.push_back(alive[i]);
                    alive = keep;
                    return true;
                }
                for (int i = start; i < m; ++i) {
                    sel[pos] = i;
                    if (rec(pos + 1, i + 1)) return true;
                }
                return false;
            };
            found = rec(0, 0);
        }
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
    return out;
}

bool poly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

} // namespace

std::vector<QPoly> factor_over_q(const QPoly& f) {
    require(f.degree() >= 1, "factor_over_q needs a nonconstant polynomial");
    std::vector<QPoly> out;
    // Yun squarefree decomposition
    QPoly a = f.monic();
    QPoly b = a.derivative();
    QPoly c = gcd(a, b);
    QPoly w = a / c;
    int mult = 1;
    while (w.degree() > 0) {
        QPoly y = gcd(w, c);
        QPoly z = w / y;
        if (z.degree() > 0)
            for (auto& g : factor_squarefree(z))
                for (int i = 0; i < mult; ++i) out.push_back(g);
        w = y;
        c = c / y;
        ++mult;
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

QPoly charpoly(const std::vector<std::vector<Rational>>& m) {
    // Faddeev-LeVerrier
    size_t n = m.size();
    for (auto& row : m) require(row.size() == n, "charpoly needs a square matrix");
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    for (size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        std::vector<std::vector<Rational>> nm(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (M[i][l] == 0) continue;
                for (size_t j = 0; j < n; ++j) nm[i][j] += m[l][j] * M[i][l];
            }
        // nm currently = M_{k-1} * A; add identity term
        for (size_t i = 0; i < n; ++i) nm[i][i] += c[n - k + 1];
        M = std::move(nm);
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) tr += m[i][l] * M[l][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return QPoly(std::move(c));
}

// ---------------------------------------------------------------- fields

namespace {

std::vector<Rational> reduce_poly(const std::vector<Rational>& p, const NumberField& K) {
    int n = K.degree();
    std::vector<Rational> r(n, Rational(0));
    const auto& xp = K.power_reduction();
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (static_cast<int>(i) < n) {
            r[i] += p[i];
        } else {
            require(i < xp.size(), "power reduction table too short");
            for (int j = 0; j < n; ++j) r[j] += p[i] * xp[i][j];
        }
    }
    return r;
}

// Inverse of a square rational matrix (Gauss-Jordan); throws if singular.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        require(p < n, "singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational d = a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational t = a[r][c];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= t * a[c][j];
                inv[r][j] -= t * inv[c][j];
            }
        }
    }
    return inv;
}

// Multiplication-by-x matrix: column j holds coordinates of x * b_j.
std::vector<std::vector<Rational>> mult_matrix(const NFElem& x) {
    const auto& K = *x.field();
    int n = K.degree();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        NFElem prod = x * NFElem(x.field(), e);
        for (int i = 0; i < n; ++i) m[i][j] = prod.coords()[i];
    }
    return m;
}

} // namespace

NFElem::NFElem(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
    require(field_ != nullptr, "element without field");
    require(static_cast<int>(c_.size()) == field_->degree(), "coordinate length must equal field degree");
    for (auto& c : c_) c.canonicalize();
}

NFElem::NFElem(FieldPtr field, const Rational& r) : field_(std::move(field)) {
    require(field_ != nullptr, "element without field");
    c_.assign(field_->degree(), Rational(0));
    c_[0] = r;
    c_[0].canonicalize();
}

bool NFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool NFElem::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational NFElem::rational_value() const {
    require(is_rational(), "element is not rational");
    return c_[0];
}

NFElem NFElem::operator+(const NFElem& o) const {
    require(same_field(field_, o.field_), "field mismatch");
    std::vector<Rational> v(c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
    return NFElem(field_, std::move(v));
}

NFElem NFElem::operator-(const NFElem& o) const {
    require(same_field(field_, o.field_), "field mismatch");
    std::vector<Rational> v(c_);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
    return NFElem(field_, std::move(v));
}

NFElem NFElem::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x = -x;
    return NFElem(field_, std::move(v));
}

NFElem NFElem::operator*(const NFElem& o) const {
    require(same_field(field_, o.field_), "field mismatch");
    int n = degree();
    std::vector<Rational> p(2 * n - 1, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < n; ++j) p[i + j] += c_[i] * o.c_[j];
    }
    return NFElem(field_, reduce_poly(p, *field_));
}

NFElem NFElem::operator*(const Rational& s) const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= s;
    return NFElem(field_, std::move(v));
}

NFElem NFElem::operator/(const NFElem& o) const { return *this * o.inverse(); }

bool NFElem::operator==(const NFElem& o) const { return same_field(field_, o.field_) && c_ == o.c_; }

NFElem NFElem::inverse() const {
    require(!is_zero(), "inverse of zero");
    if (degree() == 1) return NFElem(field_, std::vector<Rational>{Rational(1 / c_[0])});
    auto inv = invert(mult_matrix(*this));
    std::vector<Rational> v(degree());
    for (int i = 0; i < degree(); ++i) v[i] = inv[i][0];
    return NFElem(field_, std::move(v));
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElem r = field_->one(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Rational NFElem::norm() const {
    if (degree() == 1) return c_[0];
    return det_rational(mult_matrix(*this));
}

Rational NFElem::trace() const {
    auto m = mult_matrix(*this);
    Rational t = 0;
    for (int i = 0; i < degree(); ++i) t += m[i][i];
    return t;
}

QPoly NFElem::minimal_polynomial() const {
    QPoly cp = charpoly(mult_matrix(*this));
    QPoly g = gcd(cp, cp.derivative());
    if (g.degree() <= 0) return cp;
    return (cp / g).monic();
}

std::vector<Rational> NFElem::integral_coords() const {
    const auto& bi = field_->basis_inverse();
    int n = degree();
    std::vector<Rational> r(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += bi[i][j] * c_[j];
    return r;
}

bool NFElem::is_integral() const {
    if (degree() > 2) return minimal_polynomial().is_integral();
    auto ic = integral_coords();
    return std::all_of(ic.begin(), ic.end(), [](const Rational& r) { return r.get_den() == 1; });
}

std::string NFElem::to_string(const std::string& var) const { return as_poly().to_string(var); }

FieldPtr NumberField::create(const QPoly& minpoly, bool check_irreducible) {
    require(minpoly.degree() >= 1, "field polynomial must be nonconstant");
    require(minpoly.is_monic() && minpoly.is_integral(), "field polynomial must be monic with integer coefficients");
    if (check_irreducible && minpoly.degree() > 1)
        require(factor_over_q(minpoly).size() == 1, "field polynomial is reducible: " + minpoly.to_string());
    std::shared_ptr<NumberField> K(new NumberField());
    K->h_ = minpoly;
    int n = minpoly.degree();
    // x^i reduced for i < 2n - 1
    K->xpow_.assign(std::max(2 * n - 1, 1), std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> cur(n, Rational(0));
    cur[0] = 1;
    for (int i = 0; i < 2 * n - 1; ++i) {
        K->xpow_[i] = cur;
        // multiply by x
        std::vector<Rational> nxt(n, Rational(0));
        Rational top = cur[n - 1];
        for (int j = n - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        for (int j = 0; j < n; ++j) nxt[j] -= top * minpoly.coeff(j);
        cur = std::move(nxt);
    }
    K->basis_.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) K->basis_[i][i] = 1;
    if (n == 1) {
        K->disc_ = 1;
    } else if (n == 2) {
        Rational b = minpoly.coeff(1), c = minpoly.coeff(0);
        Integer D = Rational(b * b - 4 * c).get_num();
        require(D != 0, "degenerate quadratic");
        auto [dk, s] = fundamental_split(D);
        require(dk != 1, "quadratic polynomial splits");
        K->dk_ = dk;
        K->disc_ = dk;
        // omega = (dk + sqrt(dk))/2 with sqrt(dk) = (2 theta + b)/s
        Rational sr(s);
        K->basis_[1][0] = Rational(dk) / 2 + b / (2 * sr);
        K->basis_[1][1] = 1 / sr;
    } else {
        K->disc_ = exactnum::discriminant(minpoly).get_num();
    }
    // basis_inv_: integral coords from power coords; basis_ rows are basis vectors in power coords.
    std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cols[j][i] = K->basis_[i][j];
    K->basis_inv_ = invert(cols);
    return K;
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = create(QPoly({Rational(0), Rational(1)}), false);
    return q;
}

const Integer& NumberField::quadratic_discriminant() const {
    require(degree() == 2, "quadratic_discriminant needs a quadratic field");
    return dk_;
}

NFElem NumberField::zero() const { return NFElem(shared_from_this(), Rational(0)); }
NFElem NumberField::one() const { return NFElem(shared_from_this(), Rational(1)); }

NFElem NumberField::gen() const {
    std::vector<Rational> v(degree(), Rational(0));
    if (degree() == 1) {
        v[0] = -h_.coeff(0);
    } else {
        v[1] = 1;
    }
    return NFElem(shared_from_this(), std::move(v));
}

NFElem NumberField::from_rational(const Rational& r) const { return NFElem(shared_from_this(), r); }

NFElem NumberField::element(std::vector<Rational> coords) const { return NFElem(shared_from_this(), std::move(coords)); }

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same(*b);
}

// ---------------------------------------------------------------- primes

namespace {

using ZPoly = std::vector<Integer>; // coefficients mod p, low to high

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Integer zp_mod(const Integer& x, const Integer& p) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

ZPoly zp_norm(ZPoly a, const Integer& p) {
    for (auto& x : a) x = zp_mod(x, p);
    zp_trim(a);
    return a;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const Integer& p) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zp_norm(r, p);
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Integer& p) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zp_norm(r, p);
}

Integer zp_inv(const Integer& a, const Integer& p) {
    Integer r;
    require(mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) != 0, "not invertible mod p");
    return r;
}

std::pair<ZPoly, ZPoly> zp_divmod(ZPoly a, const ZPoly& d, const Integer& p) {
    require(!d.empty(), "division by zero polynomial mod p");
    if (a.size() < d.size()) return {{}, a};
    ZPoly q(a.size() - d.size() + 1, Integer(0));
    Integer li = zp_inv(d.back(), p);
    for (size_t i = a.size(); i-- >= d.size();) {
        Integer t = zp_mod(a[i] * li, p);
        q[i - d.size() + 1] = t;
        if (t != 0)
            for (size_t j = 0; j < d.size(); ++j) a[i - d.size() + 1 + j] = zp_mod(a[i - d.size() + 1 + j] - t * d[j], p);
        if (i == 0) break;
    }
    zp_trim(q);
    zp_trim(a);
    return {q, a};
}

ZPoly zp_monic(ZPoly a, const Integer& p) {
    Integer li = zp_inv(a.back(), p);
    for (auto& x : a) x = zp_mod(x * li, p);
    return a;
}

ZPoly zp_gcd(ZPoly a, ZPoly b, const Integer& p) {
    while (!b.empty()) {
        ZPoly r = zp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : zp_monic(a, p);
}

ZPoly zp_powmod(ZPoly base, Integer e, const ZPoly& m, const Integer& p) {
    ZPoly r{Integer(1)};
    base = zp_divmod(base, m, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = zp_divmod(zp_mul(r, base, p), m, p).second;
        e >>= 1;
        if (e > 0) base = zp_divmod(zp_mul(base, base, p), m, p).second;
    }
    return r;
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void zp_edf(const ZPoly& f, int d, const Integer& p, std::vector<ZPoly>& out) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg == d) {
        out.push_back(zp_monic(f, p));
        return;
    }
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), d);
    for (unsigned long seed = 1;; ++seed) {
        // deterministic trial polynomial: x^(seed-ish) + seed
        ZPoly a(std::min<unsigned long>(seed % deg + 1, deg) + 1, Integer(0));
        a.back() = 1;
        a[0] = zp_mod(Integer(seed), p);
        if (a.size() > 2) a[1] = zp_mod(Integer(seed * 31 + 7), p);
        ZPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            ZPoly cur = zp_divmod(a, f, p).second, t = cur;
            for (int i = 1; i < d; ++i) {
                cur = zp_divmod(zp_mul(cur, cur, p), f, p).second;
                ZPoly s(std::max(t.size(), cur.size()), Integer(0));
                for (size_t j = 0; j < t.size(); ++j) s[j] += t[j];
                for (size_t j = 0; j < cur.size(); ++j) s[j] += cur[j];
                t = zp_norm(s, p);
            }
            b = t;
        } else {
            b = zp_powmod(a, (q - 1) / 2, f, p);
            b = zp_sub(b, ZPoly{Integer(1)}, p);
        }
        ZPoly g = zp_gcd(f, b, p);
        int gd = static_cast<int>(g.size()) - 1;
        if (gd > 0 && gd < deg) {
            zp_edf(g, d, p, out);
            zp_edf(zp_divmod(f, g, p).first, d, p, out);
            return;
        }
        if (seed > 10000) fail(ErrorKind::resource, "equal-degree splitting did not terminate");
    }
}

// Monic irreducible factors of a squarefree monic polynomial mod p.
std::vector<ZPoly> zp_factor_squarefree(ZPoly f, const Integer& p) {
    std::vector<ZPoly> out;
    f = zp_monic(f, p);
    ZPoly x{Integer(0), Integer(1)};
    ZPoly h = x;
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        h = zp_powmod(h, p, f, p);
        ZPoly g = zp_gcd(f, zp_sub(h, x, p), p);
        if (g.size() > 1) {
            zp_edf(g, d, p, out);
            f = zp_divmod(f, g, p).first;
            h = zp_divmod(h, f, p).second;
        }
    }
    if (f.size() > 1) out.push_back(zp_monic(f, p));
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

// Integer coordinates of x*den in the integral basis, with den > 0 minimal.
std::pair<std::vector<Integer>, Integer> integral_numerators(const NFElem& x) {
    auto ic = x.integral_coords();
    Integer den = 1;
    for (auto& c : ic) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> v;
    for (auto& c : ic) v.push_back(Rational(c * den).get_num());
    return {v, den};
}

// Order generator (omega for quadratic fields, theta otherwise) as a field element.
NFElem order_generator(const FieldPtr& K) {
    int n = K->degree();
    if (n == 2) return K->element(K->integral_basis()[1]);
    return K->gen();
}

// Element whose integral coordinates are v.
NFElem from_integral(const FieldPtr& K, const std::vector<Integer>& v) {
    int n = K->degree();
    std::vector<Rational> c(n, Rational(0));
    const auto& B = K->integral_basis();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[j] += Rational(v[i]) * B[i][j];
    return K->element(std::move(c));
}

// Evaluate an integer polynomial at an element.
NFElem eval_at(const ZPoly& g, const NFElem& t) {
    NFElem r = t.field()->zero();
    for (size_t i = g.size(); i-- > 0;) r = r * t + t.field()->from_rational(Rational(g[i]));
    return r;
}

Integer min_poly_of_generator_mod(const FieldPtr& K, std::vector<Integer>& coeffs) {
    QPoly m = order_generator(K).minimal_polynomial();
    if (K->degree() == 1) m = QPoly({Rational(0), Rational(1)});
    coeffs.clear();
    for (auto& c : m.coeffs()) coeffs.push_back(c.get_num());
    return 0;
}

} // namespace

Integer PrimeIdeal::norm() const {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), f_);
    return r;
}

int PrimeIdeal::ord(const Rational& x) const {
    require(x != 0, "ord of zero");
    return e_ * valuation(x, p_);
}

int PrimeIdeal::ord(const NFElem& x) const {
    require(!x.is_zero(), "ord of zero");
    require(same_field(x.field(), field_), "field mismatch");
    if (kind_ == Kind::rational) return ord(x.rational_value());
    if (x.is_rational()) return ord(x.rational_value());
    if (kind_ == Kind::ramified) return valuation(x.norm(), p_);
    if (kind_ == Kind::inert) return valuation(x.norm(), p_) / 2;
    // Unramified with several primes above p: multiply by gamma, which lies in
    // every other prime above p but not in this one, then read off the p-power
    // dividing all integral coordinates.
    auto [num, den] = integral_numerators(x);
    NFElem y = from_integral(field_, num);
    int bound = valuation(y.norm(), p_) + 1;
    Integer mod;
    mpz_pow_ui(mod.get_mpz_t(), p_.get_mpz_t(), bound);
    NFElem gamma = field_->one();
    NFElem t = order_generator(field_);
    for (auto& g : factor_mod_p_others_) gamma = gamma * eval_at(g, t);
    // y * gamma^bound, reducing coordinates mod p^bound along the way.
    auto reduce = [&](const NFElem& z) {
        auto [v, d] = integral_numerators(z);
        assert(d == 1);
        for (auto& c : v) c = zp_mod(c, mod);
        return from_integral(field_, v);
    };
    NFElem acc = reduce(y);
    NFElem gr = reduce(gamma);
    for (int i = 0; i < bound; ++i) acc = reduce(acc * gr);
    auto [v, d] = integral_numerators(acc);
    int best = bound;
    for (auto& c : v)
        if (c != 0) best = std::min(best, valuation(c, p_));
    require(best < bound, "valuation bound exceeded");
    return best - valuation(den, p_);
}

int PrimeIdeal::ord(const std::vector<NFElem>& gens) const {
    int best = 0;
    bool any = false;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        int o = ord(g);
        best = any ? std::min(best, o) : o;
        any = true;
    }
    require(any, "ord of the zero ideal");
    return best;
}

Integer PrimeIdeal::reduce_mod(const NFElem& x) const {
    require(f_ == 1, "reduce_mod needs residue degree 1");
    require(same_field(x.field(), field_), "field mismatch");
    if (field_->degree() == 1) {
        Rational r = x.rational_value();
        require(valuation(r.get_den(), p_) == 0, "element not integral at P");
        return zp_mod(r.get_num() * zp_inv(r.get_den(), p_), p_);
    }
    auto [num, den] = integral_numerators(x);
    require(valuation(den, p_) == 0 || ord(x) >= 0, "element not integral at P");
    if (valuation(den, p_) > 0) {
        // x is P-integral but the denominator carries p; rescale via a unit at P.
        fail(ErrorKind::unsupported, "reduce_mod with p in the coordinate denominator");
    }
    // evaluate integral coordinates at the root of the generator polynomial
    Integer val = 0, pw = 1;
    for (size_t i = 0; i < num.size(); ++i) {
        val += num[i] * pw;
        pw = zp_mod(pw * root0_, p_);
    }
    return zp_mod(val * zp_inv(den, p_), p_);
}

std::string PrimeIdeal::to_string() const {
    std::ostringstream s;
    s << "(" << p_.get_str() << ", " << alpha_.to_string() << ") e=" << e_ << " f=" << f_;
    return s.str();
}

std::vector<PrimeIdeal> prime_split(const FieldPtr& K, const Integer& p) {
    require(is_probable_prime(p), "prime_split needs a prime");
    std::vector<PrimeIdeal> out;
    int n = K->degree();
    auto make = [&](PrimeIdeal::Kind kind, int e, int f, NFElem gen) {
        PrimeIdeal P;
        P.field_ = K;
        P.p_ = p;
        P.kind_ = kind;
        P.e_ = e;
        P.f_ = f;
        P.alpha_ = std::move(gen);
        return P;
    };
    if (n == 1) {
        out.push_back(make(PrimeIdeal::Kind::rational, 1, 1, K->from_rational(Rational(p))));
        return out;
    }
    if (n > 2) {
        Integer dh = discriminant(K->minpoly()).get_num();
        if (mpz_divisible_p(dh.get_mpz_t(), p.get_mpz_t()))
            fail(ErrorKind::unsupported,
                 "factorization-unsupported: p divides the polynomial discriminant in degree " + std::to_string(n));
    }
    std::vector<Integer> mc;
    min_poly_of_generator_mod(K, mc);
    ZPoly m = zp_norm(mc, p);
    NFElem t = order_generator(K);
    if (n == 2) {
        int chi = kronecker(K->quadratic_discriminant(), p);
        if (chi == -1) {
            out.push_back(make(PrimeIdeal::Kind::inert, 1, 2, K->from_rational(Rational(p))));
            return out;
        }
        if (chi == 0) {
            // repeated root of the generator polynomial mod p
            Integer r = -1;
            if (p == 2) {
                for (Integer c = 0; c < 2; ++c)
                    if (zp_mod(mc[0] + mc[1] * c + mc[2] * c * c, p) == 0) r = c;
            } else {
                r = zp_mod(K->quadratic_discriminant() * zp_inv(Integer(2), p), p);
            }
            require(r >= 0, "no ramified root found");
            PrimeIdeal P = make(PrimeIdeal::Kind::ramified, 2, 1, t - K->from_rational(Rational(r)));
            P.root0_ = r;
            out.push_back(P);
            return out;
        }
    }
    auto facs = zp_factor_squarefree(m, p);
    int total = 0;
    for (auto& g : facs) total += static_cast<int>(g.size()) - 1;
    require(total == n, "factor degrees do not add up");
    for (size_t i = 0; i < facs.size(); ++i) {
        int f = static_cast<int>(facs[i].size()) - 1;
        auto kind = (facs.size() == 1) ? PrimeIdeal::Kind::inert
                                       : (n == 2 ? PrimeIdeal::Kind::split : PrimeIdeal::Kind::unramified_general);
        PrimeIdeal P = make(kind, 1, f, facs.size() == 1 ? K->from_rational(Rational(p)) : eval_at(facs[i], t));
        if (f == 1) P.root0_ = zp_mod(-facs[i][0], p);
        P.factor_mod_p_ = facs[i];
        for (size_t j = 0; j < facs.size(); ++j)
            if (j != i) P.factor_mod_p_others_.push_back(facs[j]);
        out.push_back(P);
    }
    if (n > 2 && facs.size() == 1) {
        // inert in higher degree: ord via norm
        out[0].kind_ = PrimeIdeal::Kind::inert;
    }
    // order by root / factor for determinism
    return out;
}

Rational ideal_norm(const std::vector<NFElem>& gens) {
    require(!gens.empty(), "ideal_norm of empty generator list");
    const FieldPtr& K = gens[0].field();
    int n = K->degree();
    // Z-lattice spanned by g * b_j in integral coordinates; index via HNF determinant.
    std::vector<std::vector<Rational>> rows;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            NFElem bj = K->element(K->integral_basis()[j]);
            rows.push_back((g * bj).integral_coords());
        }
    }
    require(!rows.empty(), "ideal_norm of the zero ideal");
    Integer den = 1;
    for (auto& r : rows)
        for (auto& c : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<std::vector<Integer>> M;
    for (auto& r : rows) {
        std::vector<Integer> v;
        for (auto& c : r) v.push_back(Rational(c * den).get_num());
        M.push_back(v);
    }
    // Integer row reduction to echelon form.
    size_t row = 0;
    Integer det = 1;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            size_t piv = M.size();
            for (size_t r = row; r < M.size(); ++r)
                if (M[r][c] != 0 && (piv == M.size() || abs(M[r][c]) < abs(M[piv][c]))) piv = r;
            require(piv != M.size(), "ideal lattice is not full rank");
            std::swap(M[row], M[piv]);
            bool done = true;
            for (size_t r = row + 1; r < M.size(); ++r) {
                if (M[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M[r][c].get_mpz_t(), M[row][c].get_mpz_t());
                for (int j = c; j < n; ++j) M[r][j] -= q * M[row][j];
                if (M[r][c] != 0) done = false;
            }
            if (done) break;
        }
        det *= abs(M[row][c]);
        ++row;
    }
    Rational dn = 1;
    for (int i = 0; i < n; ++i) dn *= den;
    return Rational(det) / dn;
}

NFElem quadratic_conjugate(const NFElem& x) {
    const FieldPtr& K = x.field();
    require(K->degree() == 2, "quadratic_conjugate needs a quadratic field");
    // theta -> -b - theta
    Rational b = K->minpoly().coeff(1);
    const auto& c = x.coords();
    return K->element({c[0] - c[1] * b, -c[1]});
}

std::string serialize(const NFElem& x) {
    std::string s = "[";
    for (size_t i = 0; i < x.coords().size(); ++i) {
        if (i) s += ",";
        s += "\"" + to_string(x.coords()[i]) + "\"";
    }
    return s + "]";
}

std::string serialize(const PrimeIdeal& P) {
    return "{\"p\":\"" + P.p().get_str() + "\",\"generator\":" + serialize(P.generator()) +
           ",\"e\":" + std::to_string(P.ramification()) + ",\"f\":" + std::to_string(P.residue_degree()) + "}";
}

} // namespace dii::exactnum
