#include "dii/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace dii::qforms {

using exactnum::make_rational;

namespace {

Integer det_bareiss(std::vector<Integer> a, int n) {
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k * n + k] == 0) {
            int r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return 0;
            for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[r * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
        prev = a[k * n + k];
    }
    return sign * a[(n - 1) * n + (n - 1)];
}

Integer det_long(const std::vector<long>& g, int n, int size) {
    std::vector<Integer> a(static_cast<size_t>(size * size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) a[i * size + j] = g[static_cast<size_t>(i * n + j)];
    return det_bareiss(std::move(a), size);
}

// Squarefree representative of a nonzero rational modulo squares, as an integer.
Integer square_class(const Rational& a) {
    require(a != 0, "Hilbert symbol of zero");
    return a.get_num() * a.get_den();
}

int legendre(const Integer& a, const Integer& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

int mod8(const Integer& u) {
    Integer r = u % 8;
    if (r < 0) r += 8;
    return static_cast<int>(r.get_si());
}

} // namespace

HalfIntegralMatrix::HalfIntegralMatrix(int n, std::vector<long> twice) : n_(n), g_(std::move(twice)) {
    require(n >= 1 && g_.size() == static_cast<size_t>(n * n), "matrix size does not match the degree");
    for (int i = 0; i < n; ++i) {
        require(g_[static_cast<size_t>(i * n + i)] % 2 == 0, "diagonal entries must be integers");
        for (int j = 0; j < n; ++j)
            require(g_[static_cast<size_t>(i * n + j)] == g_[static_cast<size_t>(j * n + i)], "matrix is not symmetric");
    }
}

HalfIntegralMatrix HalfIntegralMatrix::from_rationals(const std::vector<std::vector<Rational>>& t) {
    int n = static_cast<int>(t.size());
    std::vector<long> g;
    for (int i = 0; i < n; ++i) {
        require(static_cast<int>(t[i].size()) == n, "matrix is not square");
        for (int j = 0; j < n; ++j) {
            Rational v = 2 * t[i][j];
            v.canonicalize();
            require(v.get_den() == 1, "entries of 2T must be integers");
            require(v.get_num().fits_slong_p(), "entry too large");
            g.push_back(v.get_num().get_si());
        }
    }
    return HalfIntegralMatrix(n, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::identity(int n) {
    std::vector<long> g(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i * n + i)] = 2;
    return HalfIntegralMatrix(n, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::binary(long a, long b, long c) {
    return HalfIntegralMatrix(2, {2 * a, b, b, 2 * c});
}

Rational HalfIntegralMatrix::entry(int i, int j) const { return make_rational(twice(i, j), 2); }

Integer HalfIntegralMatrix::det2() const { return det_long(g_, n_, n_); }

bool HalfIntegralMatrix::is_positive_definite() const {
    for (int k = 1; k <= n_; ++k)
        if (det_long(g_, n_, k) <= 0) return false;
    return true;
}

Integer HalfIntegralMatrix::content() const {
    Integer g = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            Integer v = i == j ? Integer(twice(i, i) / 2) : Integer(twice(i, j));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    return g;
}

HalfIntegralMatrix HalfIntegralMatrix::direct_sum(const HalfIntegralMatrix& o) const {
    int n = n_ + o.n_;
    std::vector<long> g(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) g[static_cast<size_t>(i * n + j)] = twice(i, j);
    for (int i = 0; i < o.n_; ++i)
        for (int j = 0; j < o.n_; ++j) g[static_cast<size_t>((n_ + i) * n + n_ + j)] = o.twice(i, j);
    return HalfIntegralMatrix(n, std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::transform(const std::vector<long>& U) const {
    int n = n_;
    require(U.size() == static_cast<size_t>(n * n), "transformation has the wrong size");
    std::vector<long> gu(static_cast<size_t>(n * n), 0), out(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long s = 0;
            for (int k = 0; k < n; ++k) s += twice(i, k) * U[static_cast<size_t>(k * n + j)];
            gu[static_cast<size_t>(i * n + j)] = s;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long s = 0;
            for (int k = 0; k < n; ++k) s += U[static_cast<size_t>(k * n + i)] * gu[static_cast<size_t>(k * n + j)];
            out[static_cast<size_t>(i * n + j)] = s;
        }
    return HalfIntegralMatrix(n, std::move(out));
}

HalfIntegralMatrix HalfIntegralMatrix::scaled(long s) const {
    std::vector<long> g = g_;
    for (auto& v : g) v *= s;
    return HalfIntegralMatrix(n_, std::move(g));
}

std::string HalfIntegralMatrix::serialize() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? "," : "") << twice(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string HalfIntegralMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << exactnum::to_string(entry(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

bool HalfIntegralMatrix::operator<(const HalfIntegralMatrix& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    // diagonal first, then the upper triangle row by row
    for (int i = 0; i < n_; ++i)
        if (twice(i, i) != o.twice(i, i)) return twice(i, i) < o.twice(i, i);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (twice(i, j) != o.twice(i, j)) return twice(i, j) > o.twice(i, j);
    return false;
}

DiscriminantData disc_split(const HalfIntegralMatrix& T) {
    int n = T.degree();
    require(n % 2 == 0, "disc_split needs even degree");
    DiscriminantData out;
    out.det2T = T.det2();
    require(out.det2T != 0, "degenerate matrix");
    Integer x = (n / 2) % 2 ? Integer(-out.det2T) : out.det2T;
    auto [d, f] = exactnum::fundamental_split(x);
    out.d = d;
    out.f = f;
    return out;
}

int hilbert_symbol(const Rational& a_in, const Rational& b_in, const Integer& p) {
    Integer a = square_class(a_in), b = square_class(b_in);
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    require(exactnum::is_probable_prime(p), "Hilbert symbol needs a prime or the real place");
    int alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    if (p == 2) {
        int u = mod8(a), v = mod8(b);
        auto eps = [](int t) { return ((t - 1) / 2) & 1; };
        auto omega = [](int t) { return ((t * t - 1) / 8) & 1; };
        int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return e % 2 ? -1 : 1;
    }
    int s = 1;
    if ((alpha * beta) % 2 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) s = -s;
    if (beta % 2) s *= legendre(a, p);
    if (alpha % 2) s *= legendre(b, p);
    return s;
}

std::vector<Rational> diagonalize(const HalfIntegralMatrix& T) {
    int n = T.degree();
    std::vector<Rational> out;
    Integer prev = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<long> g = T.twice_entries();
        Integer dk = det_long(g, n, k);
        require(dk != 0, "leading minor vanishes");
        // ratio of successive leading minors of T = (2T)/2
        out.push_back(make_rational(dk, 2 * prev));
        prev = dk;
    }
    return out;
}

int hasse_invariant(const std::vector<Rational>& diag, const Integer& p) {
    for (auto& a : diag) require(a != 0, "degenerate form");
    int h = 1;
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) h *= hilbert_symbol(diag[i], diag[j], p);
    return h;
}

HalfIntegralMatrix e8() {
    // Cartan matrix of E8
    std::vector<long> g(64, 0);
    auto set = [&](int i, int j, long v) {
        g[static_cast<size_t>(i * 8 + j)] = v;
        g[static_cast<size_t>(j * 8 + i)] = v;
    };
    for (int i = 0; i < 8; ++i) set(i, i, 2);
    for (int i = 0; i < 6; ++i) set(i, i + 1, -1);
    set(4, 7, -1);
    return HalfIntegralMatrix(8, std::move(g));
}

HalfIntegralMatrix d4() {
    return HalfIntegralMatrix(4, {2, 0, 0, 1, 0, 2, 0, 1, 0, 0, 2, 1, 1, 1, 1, 2});
}

namespace {

// Vectors v (up to sign: first nonzero coordinate positive) with v^t G v <= bound,
// G = 2T. Exhaustive over the Cholesky box.
std::vector<std::vector<long>> short_vectors(const HalfIntegralMatrix& T, long bound) {
    int n = T.degree();
    // q(x) = sum_i Q_ii (x_i + sum_{j>i} Q_ij x_j)^2
    std::vector<std::vector<double>> Q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q[i][j] = static_cast<double>(T.twice(i, j));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double t = Q[i][j];
            Q[j][i] = t;
            Q[i][j] = t / Q[i][i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) Q[k][l] -= Q[k][i] * Q[i][l];
    }
    std::vector<std::vector<long>> out;
    std::vector<long> x(n, 0);
    std::function<void(int, double)> rec = [&](int i, double remaining) {
        if (i < 0) {
            bool zero = true, positive = false;
            for (int t = 0; t < n; ++t)
                if (x[t] != 0) {
                    zero = false;
                    positive = x[t] > 0;
                    break;
                }
            if (zero || !positive) return;
            long v = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) v += x[a] * T.twice(a, b) * x[b];
            if (v <= bound) out.push_back(x);
            return;
        }
        double c = 0;
        for (int j = i + 1; j < n; ++j) c += Q[i][j] * static_cast<double>(x[j]);
        double r = std::sqrt(std::max(0.0, remaining / Q[i][i])) + 1e-9;
        long lo = static_cast<long>(std::ceil(-c - r)), hi = static_cast<long>(std::floor(-c + r));
        for (long t = lo; t <= hi; ++t) {
            x[i] = t;
            double u = static_cast<double>(t) + c;
            rec(i - 1, remaining - Q[i][i] * u * u);
        }
        x[i] = 0;
    };
    rec(n - 1, static_cast<double>(bound) + 1e-6);
    return out;
}

long bilinear(const HalfIntegralMatrix& T, const std::vector<long>& u, const std::vector<long>& v) {
    long s = 0;
    int n = T.degree();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += u[a] * T.twice(a, b) * v[b];
    return s;
}

// Number of vectors (up to sign) of each norm 2, 4, ..., bound.
std::vector<size_t> theta_prefix(const HalfIntegralMatrix& T, long bound) {
    std::vector<size_t> c(static_cast<size_t>(bound / 2 + 1), 0);
    for (auto& v : short_vectors(T, bound)) ++c[static_cast<size_t>(bilinear(T, v, v) / 2)];
    return c;
}

// Even positive definite 2T of degree n <= 4 satisfying the Minkowski
// reduction inequalities that every class meets: nondecreasing diagonal,
// |g_ij| <= g_ii / 2, and prod g_ii <= c_n det.
void reduced_candidates(int n, long det_lo, long det_hi, long max_diag,
                        const std::function<void(const HalfIntegralMatrix&)>& emit) {
    require(n >= 1 && n <= 4, "enumeration is limited to degree <= 4");
    static const double minkowski[5] = {1, 1, 4.0 / 3, 2, 4};
    double prod_bound = minkowski[n] * static_cast<double>(det_hi);
    std::vector<long> g(static_cast<size_t>(n * n), 0);
    std::vector<long> diag(n);
    std::function<void(int, int)> offdiag = [&](int i, int j) {
        // fill entries (i, j) for j > i row by row; check minors when a row closes
        if (i == n) {
            Integer det = det_long(g, n, n);
            if (det >= det_lo && det <= det_hi) emit(HalfIntegralMatrix(n, g));
            return;
        }
        if (j == n) {
            if (det_long(g, n, i + 1) <= 0) return;
            offdiag(i + 1, i + 2);
            return;
        }
        long lim = diag[i] / 2;
        for (long v = -lim; v <= lim; ++v) {
            g[static_cast<size_t>(i * n + j)] = v;
            g[static_cast<size_t>(j * n + i)] = v;
            offdiag(i, j + 1);
        }
        g[static_cast<size_t>(i * n + j)] = 0;
        g[static_cast<size_t>(j * n + i)] = 0;
    };
    std::function<void(int, long, double)> choose_diag = [&](int i, long lo, double prod) {
        if (i == n) {
            for (int t = 0; t < n; ++t) g[static_cast<size_t>(t * n + t)] = diag[t];
            offdiag(0, 1);
            return;
        }
        for (long a = lo; a <= max_diag; a += 2) {
            // remaining entries are at least a
            double p = prod * std::pow(static_cast<double>(a), n - i);
            if (p > prod_bound + 1e-9) break;
            diag[i] = a;
            choose_diag(i + 1, a, prod * static_cast<double>(a));
        }
    };
    choose_diag(0, 2, 1.0);
}

long det_bound_value(const HalfIntegralMatrix& T) {
    Integer d = T.det2();
    if (T.degree() % 2) d /= 2;
    return d.get_si();
}

bool assign_columns(const HalfIntegralMatrix& S, const HalfIntegralMatrix& T,
                    const std::vector<std::vector<long>>& vecs, std::vector<std::vector<long>>& cols) {
    int n = T.degree();
    size_t i = cols.size();
    if (static_cast<int>(i) == n) return true;
    for (auto& v : vecs) {
        if (bilinear(S, v, v) != T.twice(static_cast<int>(i), static_cast<int>(i))) continue;
        for (int sgn : {1, -1}) {
            std::vector<long> u = v;
            if (sgn < 0)
                for (auto& t : u) t = -t;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                ok = bilinear(S, cols[j], u) == T.twice(static_cast<int>(j), static_cast<int>(i));
            if (!ok) continue;
            cols.push_back(u);
            if (assign_columns(S, T, vecs, cols)) return true;
            cols.pop_back();
        }
    }
    return false;
}

} // namespace

bool equivalent(const HalfIntegralMatrix& S, const HalfIntegralMatrix& T) {
    if (S.degree() != T.degree()) return false;
    if (S.det2() != T.det2()) return false;
    int n = T.degree();
    long bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, T.twice(i, i));
    if (theta_prefix(S, bound) != theta_prefix(T, bound)) return false;
    // columns of U: S-vectors with the Gram matrix of T; equal determinants force U unimodular
    auto vecs = short_vectors(S, bound);
    std::vector<std::vector<long>> cols;
    return assign_columns(S, T, vecs, cols);
}

std::vector<HalfIntegralMatrix> enumerate_pd(int n, long max_det2) {
    require(n >= 1 && n <= 4, "enumeration is limited to degree <= 4");
    require(max_det2 <= 2000, "determinant bound exceeds the configured enumeration budget");
    if (max_det2 < 1) return {};
    long det_hi = n % 2 ? 2 * max_det2 : max_det2;
    std::map<long, std::vector<HalfIntegralMatrix>> by_det;
    reduced_candidates(n, 1, det_hi, 4 * det_hi + 2, [&](const HalfIntegralMatrix& T) {
        by_det[T.det2().get_si()].push_back(T);
    });
    std::vector<HalfIntegralMatrix> out;
    for (auto& [det, cands] : by_det) {
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        std::vector<HalfIntegralMatrix> reps;
        for (auto& c : cands) {
            bool seen = false;
            for (auto& r : reps)
                if (equivalent(r, c)) {
                    seen = true;
                    break;
                }
            if (!seen) reps.push_back(c);
        }
        for (auto& r : reps)
            if (det_bound_value(r) <= max_det2) out.push_back(r);
    }
    return out;
}

HalfIntegralMatrix reduce_binary(const HalfIntegralMatrix& T) {
    require(T.degree() == 2, "binary reduction needs degree 2");
    require(T.is_positive_definite(), "binary reduction needs a positive definite form");
    long a = T.twice(0, 0) / 2, b = T.twice(0, 1), c = T.twice(1, 1) / 2;
    for (;;) {
        if (c < a) {
            std::swap(a, c);
            continue;
        }
        if (b > a || b < -a) {
            // b -> b - 2ka brings b into (-a, a]
            long k = static_cast<long>(std::floor((static_cast<double>(b) + a) / (2.0 * a)));
            if (b - 2 * k * a <= -a) --k;
            long nb = b - 2 * k * a;
            c = c - k * b + k * k * a;
            b = nb;
            continue;
        }
        break;
    }
    if (b < 0) b = -b; // GL_2: (a, b, c) ~ (a, -b, c)
    return HalfIntegralMatrix::binary(a, b, c);
}

namespace {

HalfIntegralMatrix first_with_det(int n, const Integer& det, const std::function<bool(const HalfIntegralMatrix&)>& ok,
                                  const SearchLimits& limits) {
    require(det.fits_slong_p(), "target determinant too large");
    long d = det.get_si();
    std::vector<HalfIntegralMatrix> found;
    reduced_candidates(n, d, d, limits.max_diagonal, [&](const HalfIntegralMatrix& T) {
        if (ok(T)) found.push_back(T);
    });
    if (found.empty())
        fail(ErrorKind::search_exhausted, "no lattice with det(2T) = " + exactnum::to_string(det) +
                                              " in degree " + std::to_string(n) + " within the search bound");
    return *std::min_element(found.begin(), found.end());
}

HalfIntegralMatrix with_e8_blocks(HalfIntegralMatrix T, int copies) {
    for (int i = 0; i < copies; ++i) T = T.direct_sum(e8());
    return T;
}

} // namespace

HalfIntegralMatrix construct_lattice(int n, const Integer& d, LatticeMode mode, long q, const SearchLimits& limits) {
    require(n >= 2 && n % 2 == 0, "lattice construction needs even degree");
    HalfIntegralMatrix out;
    switch (mode) {
    case LatticeMode::unimodular:
        require(n % 8 == 0, "unimodular even lattices need n = 0 mod 8");
        require(d == 1, "unimodular mode has d = 1");
        out = with_e8_blocks(e8(), n / 8 - 1);
        break;
    case LatticeMode::q_squared: {
        require(n % 8 == 4, "q-squared mode needs n = 4 mod 8");
        require(d == 1, "q-squared mode has d = 1");
        require(q >= 2 && exactnum::is_probable_prime(Integer(q)), "q must be prime");
        HalfIntegralMatrix block = q == 2 ? d4()
                                          : first_with_det(4, Integer(q) * q, [](const HalfIntegralMatrix&) { return true; },
                                                           limits);
        out = with_e8_blocks(block, (n - 4) / 8);
        break;
    }
    case LatticeMode::fundamental: {
        require(d != 1 && exactnum::is_fundamental_discriminant(d), "d must be a fundamental discriminant other than 1");
        require(((n / 2) % 2 ? -d : d) > 0, "sign of d does not match the degree");
        int n0 = n % 8;
        if (n0 == 2 || n0 == 4) {
            Integer target = abs(d);
            out = with_e8_blocks(first_with_det(n0, target, [](const HalfIntegralMatrix&) { return true; }, limits),
                                 (n - n0) / 8);
        } else {
            fail(ErrorKind::search_exhausted,
                 "fundamental-discriminant search is implemented for n = 2, 4 mod 8 only");
        }
        break;
    }
    }
    require(out.is_positive_definite(), "constructed lattice is not positive definite");
    auto dd = disc_split(out);
    if (mode == LatticeMode::q_squared)
        require(dd.d == 1 && dd.f == q, "constructed lattice has the wrong discriminant");
    else
        require(dd.d == d && dd.f == 1, "constructed lattice has the wrong discriminant");
    return out;
}

} // namespace dii::qforms
