#include "dii/forms1.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace dii::forms1 {

using exactnum::Integer;
using exactnum::QPoly;
using qexp::ZSeries;

int dim_modular(int w) {
    if (w < 0 || w % 2) return 0;
    if (w % 12 == 2) return w / 12;
    return w / 12 + 1;
}

int dim_cusp(int w) {
    if (w < 12 || w % 2) return 0;
    return dim_modular(w) - 1;
}

size_t default_precision(int w) { return std::max<size_t>(2 * (w / 12 + 1), 50); }

long sturm_bound(int w) { return w / 12; }

MillerBasis miller_basis(int w, size_t prec) {
    require(w >= 0 && w % 2 == 0, "miller_basis needs even weight >= 0");
    static std::mutex mu;
    static std::map<std::pair<int, size_t>, MillerBasis> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({w, prec});
        if (it != memo.end()) return it->second;
    }
    MillerBasis B;
    B.weight = w;
    B.precision = prec;
    int d = dim_modular(w);
    if (d > 0) {
        require(prec >= static_cast<size_t>(d) + 1, "precision below dim M_w + 1");
        int r = (w % 12 == 2) ? 14 : w % 12;
        ZSeries e4, e6;
        for (auto& x : qexp::eisenstein(4, prec).c) e4.c.push_back(x.get_num());
        for (auto& x : qexp::eisenstein(6, prec).c) e6.c.push_back(x.get_num());
        ZSeries one{std::vector<Integer>(prec, Integer(0))};
        one.c[0] = 1;
        ZSeries er = one;
        switch (r) {
        case 0: break;
        case 4: er = e4; break;
        case 6: er = e6; break;
        case 8: er = qexp::mul(e4, e4); break;
        case 10: er = qexp::mul(e4, e6); break;
        case 14: er = qexp::mul(qexp::mul(e4, e4), e6); break;
        default: fail(ErrorKind::precondition, "unexpected weight residue");
        }
        ZSeries D = qexp::delta(prec);
        ZSeries e6sq = qexp::mul(e6, e6);
        linalg::QMat rows;
        for (int j = 0; j < d; ++j) {
            ZSeries g = qexp::mul(qexp::mul(qexp::pow(D, j, prec), qexp::pow(e6sq, d - 1 - j, prec)), er);
            rows.push_back(qexp::to_q(g).c);
        }
        auto piv = linalg::rref(rows);
        require(static_cast<int>(piv.size()) == d, "Miller basis lost rank");
        for (int j = 0; j < d; ++j) {
            require(piv[j] == static_cast<size_t>(j), "Miller basis pivots are not 0..d-1");
            B.modular.push_back(QSeries{rows[j]});
            if (j >= 1) B.cusp.push_back(QSeries{rows[j]});
        }
        if (w == 0) B.cusp.clear();
    }
    std::lock_guard<std::mutex> lock(mu);
    memo[{w, prec}] = B;
    return B;
}

namespace {

Rational ppow(long p, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return Rational(r);
}

} // namespace

QSeries hecke_Tp(const QSeries& F, long p, int w) {
    require(p >= 2, "hecke_Tp needs a prime");
    size_t N = F.precision();
    size_t out = N / p;
    require(out >= 1, "insufficient precision for T_p");
    Rational pw = ppow(p, w - 1);
    QSeries r{std::vector<Rational>(out, Rational(0))};
    for (size_t n = 0; n < out; ++n) {
        r.c[n] = F.c[p * n];
        if (n % p == 0) r.c[n] += pw * F.c[n / p];
    }
    return r;
}

KSeries hecke_Tp(const KSeries& F, long p, int w) {
    size_t N = F.precision();
    size_t out = N / p;
    require(out >= 1, "insufficient precision for T_p");
    Rational pw = ppow(p, w - 1);
    KSeries r{F.field, {}};
    for (size_t n = 0; n < out; ++n) {
        NFElem v = F.c[p * n];
        if (n % p == 0) v += F.c[n / p] * pw;
        r.c.push_back(v);
    }
    return r;
}

linalg::QMat hecke_matrix(const MillerBasis& B, long p) {
    size_t d = B.cusp.size();
    require(B.precision / p > d, "insufficient precision for the Hecke matrix");
    linalg::QMat M(d, linalg::QVec(d, Rational(0)));
    for (size_t j = 0; j < d; ++j) {
        QSeries t = hecke_Tp(B.cusp[j], p, B.weight);
        // echelon coordinates are read at the pivots q^1 .. q^d
        QSeries check{std::vector<Rational>(t.precision(), Rational(0))};
        for (size_t i = 0; i < d; ++i) {
            M[i][j] = t.c[i + 1];
            for (size_t n = 0; n < t.precision(); ++n) check.c[n] += M[i][j] * B.cusp[i].c[n];
        }
        for (size_t n = 0; n < t.precision(); ++n)
            require(check.c[n] == t.c[n], "T_p image is not in the span of the cuspidal basis");
    }
    return M;
}

PrimitiveForm conjugate(const PrimitiveForm& f) {
    PrimitiveForm g = f;
    for (auto& c : g.q_expansion.c) c = exactnum::quadratic_conjugate(c);
    return g;
}

bool check_multiplicativity(const PrimitiveForm& f) {
    size_t N = f.precision();
    if (N < 2 || !(f.coeff(1) == f.hecke_field->one())) return false;
    auto primes = exactnum::primes_up_to(static_cast<long>(N));
    for (size_t m = 2; m < N; ++m)
        for (size_t n = 2; m * n < N; ++n)
            if (std::gcd(m, n) == 1 && !(f.coeff(m * n) == f.coeff(m) * f.coeff(n))) return false;
    for (long p : primes) {
        Rational pw = ppow(p, f.weight - 1);
        for (size_t pr = p; pr * p < N; pr *= p) {
            NFElem lhs = f.coeff(pr * p);
            NFElem rhs = f.coeff(p) * f.coeff(pr) - f.coeff(pr / p) * pw;
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

namespace {

std::vector<PrimitiveForm> split_with(const MillerBasis& B, const linalg::QMat& T, long p, bool& ok) {
    std::vector<PrimitiveForm> out;
    QPoly cp = exactnum::charpoly(T);
    if (!exactnum::is_squarefree(cp)) {
        ok = false;
        return out;
    }
    ok = true;
    size_t d = T.size();
    (void)p;
    for (auto& h : exactnum::factor_over_q(cp)) {
        FieldPtr K = exactnum::NumberField::create(h, false);
        NFElem theta = K->gen();
        linalg::KMat A = linalg::to_field(T, K);
        for (size_t i = 0; i < d; ++i) A[i][i] -= theta;
        auto ker = linalg::kernel(A, d, K->zero(), K->one());
        require(ker.size() == 1, "eigenspace is not one-dimensional");
        auto v = ker[0];
        require(!v[0].is_zero(), "eigenvector with vanishing first coefficient");
        NFElem s = v[0].inverse();
        for (auto& x : v) x = x * s;
        PrimitiveForm f;
        f.weight = B.weight;
        f.hecke_field = K;
        f.q_expansion = qexp::combine(B.cusp, v, B.precision);
        out.push_back(f);
        if (K->degree() == 2) out.push_back(conjugate(f));
    }
    return out;
}

} // namespace

std::vector<PrimitiveForm> eigenforms(int w, size_t prec) {
    require(w >= 12 && w % 2 == 0, "eigenforms needs even weight >= 12");
    if (prec == 0) prec = default_precision(w);
    static std::mutex mu;
    static std::map<std::pair<int, size_t>, std::vector<PrimitiveForm>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({w, prec});
        if (it != memo.end()) return it->second;
    }
    int d = dim_cusp(w);
    std::vector<PrimitiveForm> out;
    if (d > 0) {
        // make sure T_5 on the basis is computable
        size_t need = std::max<size_t>(prec, 5 * (d + 2));
        MillerBasis B = miller_basis(w, need);
        bool ok = false;
        for (long p : {2L, 3L}) {
            out = split_with(B, hecke_matrix(B, p), p, ok);
            if (ok) break;
        }
        require(ok, "characteristic polynomials of T_2 and T_3 are not squarefree");
        for (auto& f : out) {
            // eigen-equations for T_3 and T_5 on the available range
            for (long p : {3L, 5L}) {
                KSeries t = hecke_Tp(f.q_expansion, p, w);
                for (size_t n = 0; n < t.precision(); ++n)
                    if (!(t.c[n] == f.coeff(p) * f.coeff(n)))
                        fail(ErrorKind::regression, "eigenform fails the T_" + std::to_string(p) + " eigen-equation");
            }
            if (f.q_expansion.c.size() > prec) f.q_expansion.c.resize(prec);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    memo[{w, prec}] = out;
    return out;
}

} // namespace dii::forms1
