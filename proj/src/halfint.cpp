#include "dii/halfint.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "dii/error.hpp"

namespace dii::halfint {

using exactnum::make_rational;
using linalg::QMat;
using linalg::QVec;

namespace {

std::mutex basis_mutex;
std::map<int, std::vector<ZSeries>> basis_cache; // largest precision computed per lambda

ZSeries truncated(const ZSeries& a, size_t prec) {
    return ZSeries{std::vector<Integer>(a.c.begin(), a.c.begin() + static_cast<long>(std::min(prec, a.precision())))};
}

size_t conditions_precision(int lambda) { return static_cast<size_t>(4 * (lambda + 2)); }

Integer ipow(long p, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

QSeries combine_q(const std::vector<ZSeries>& B, const QVec& x, size_t prec) {
    QSeries r{std::vector<Rational>(prec, Rational(0))};
    for (size_t j = 0; j < B.size(); ++j) {
        if (x[j] == 0) continue;
        for (size_t n = 0; n < prec; ++n)
            if (B[j].c[n] != 0) r.c[n] += x[j] * B[j].c[n];
    }
    return r;
}

// Reduced echelon form of the coefficient vectors (indices < P) of the
// forms with the given coordinates; returns transformed coordinates and pivots.
std::pair<std::vector<QVec>, std::vector<size_t>> echelon(const std::vector<ZSeries>& B, const std::vector<QVec>& coords,
                                                          size_t P) {
    size_t J = B.size();
    QMat aug;
    for (auto& x : coords) {
        QVec row = combine_q(B, x, P).c;
        row.insert(row.end(), x.begin(), x.end());
        aug.push_back(std::move(row));
    }
    auto piv = linalg::rref(aug);
    std::vector<QVec> out;
    for (size_t r = 0; r < aug.size(); ++r) {
        if (piv[r] >= P) fail(ErrorKind::insufficient_precision, "plus space: coefficients do not separate the forms");
        out.emplace_back(aug[r].begin() + static_cast<long>(P), aug[r].begin() + static_cast<long>(P + J));
    }
    return {out, piv};
}

bool fundamental_or_one(long D) { return D == 1 || exactnum::is_fundamental_discriminant(Integer(D)); }

} // namespace

ZSeries theta(size_t prec) { return qexp::theta(prec); }
ZSeries f2_generator(size_t prec) { return qexp::f2_generator(prec); }

std::vector<ZSeries> basis_halfint(int lambda, size_t prec) {
    require(lambda >= 2, "basis_halfint: lambda must be at least 2");
    size_t J = static_cast<size_t>(lambda / 2) + 1;
    require(prec >= J + 1, "basis_halfint: precision below floor(lambda/2) + 2");
    {
        std::lock_guard<std::mutex> lock(basis_mutex);
        auto it = basis_cache.find(lambda);
        if (it != basis_cache.end() && it->second[0].precision() >= prec) {
            std::vector<ZSeries> out;
            for (auto& s : it->second) out.push_back(truncated(s, prec));
            return out;
        }
    }
    ZSeries th = theta(prec), F = f2_generator(prec);
    ZSeries th4 = qexp::pow(th, 4, prec);
    // theta^(2 lambda + 1 - 4j) = theta^r (theta^4)^(floor(lambda/2) - j), r = 1 or 3
    ZSeries base = lambda % 2 == 0 ? th : qexp::pow(th, 3, prec);
    std::vector<ZSeries> th4pow{base};
    for (size_t i = 1; i < J; ++i) th4pow.push_back(qexp::mul(th4pow.back(), th4));
    std::vector<ZSeries> out;
    ZSeries Fj = ZSeries{std::vector<Integer>(prec, Integer(0))};
    Fj.c[0] = 1;
    for (size_t j = 0; j < J; ++j) {
        out.push_back(j == 0 ? th4pow[J - 1] : qexp::mul(th4pow[J - 1 - j], Fj));
        Fj = qexp::mul(Fj, F);
    }
    std::lock_guard<std::mutex> lock(basis_mutex);
    auto& slot = basis_cache[lambda];
    if (slot.empty() || slot[0].precision() < prec) slot = out;
    return out;
}

bool plus_index(int lambda, long e) {
    long s = (lambda % 2 == 0 ? e : -e) % 4;
    if (s < 0) s += 4;
    return s == 0 || s == 1;
}

PlusSpace plus_space(int lambda, size_t prec) {
    const size_t P = conditions_precision(lambda);
    const size_t N = std::max(prec, P);
    auto B = basis_halfint(lambda, N);
    const size_t J = B.size();

    QMat cond;
    for (size_t e = 0; e < P; ++e) {
        if (plus_index(lambda, static_cast<long>(e))) continue;
        QVec row(J);
        for (size_t j = 0; j < J; ++j) row[j] = B[j].c[e];
        cond.push_back(std::move(row));
    }
    auto mod = linalg::kernel(cond, J, Rational(0), Rational(1));
    if (static_cast<int>(mod.size()) != forms1::dim_modular(2 * lambda))
        fail(ErrorKind::insufficient_precision, "plus space dimension " + std::to_string(mod.size()) +
                                                    " differs from dim M_" + std::to_string(2 * lambda));
    QVec c0(J);
    for (size_t j = 0; j < J; ++j) c0[j] = B[j].c[0];
    cond.push_back(c0);
    auto cusp = linalg::kernel(cond, J, Rational(0), Rational(1));
    if (static_cast<int>(cusp.size()) != forms1::dim_cusp(2 * lambda))
        fail(ErrorKind::insufficient_precision, "cuspidal plus space dimension " + std::to_string(cusp.size()) +
                                                    " differs from dim S_" + std::to_string(2 * lambda));

    PlusSpace S;
    S.lambda = lambda;
    S.precision = N;
    S.modular_coords = echelon(B, mod, P).first;
    auto [cc, piv] = echelon(B, cusp, P);
    S.cusp_coords = cc;
    S.cusp_pivots = piv;
    for (auto& x : S.modular_coords) S.modular.push_back(combine_q(B, x, N));
    for (auto& x : S.cusp_coords) S.cusp.push_back(combine_q(B, x, N));
    return S;
}

QSeries hecke_Tp2(const QSeries& g, long p, int lambda) {
    require(p > 2 && exactnum::is_probable_prime(Integer(p)), "hecke_Tp2: p must be an odd prime");
    const long p2 = p * p;
    size_t out = g.precision() / static_cast<size_t>(p2);
    require(out >= 1, "hecke_Tp2: precision below p^2");
    Rational mid(ipow(p, lambda - 1)), top(ipow(p, 2 * lambda - 1));
    QSeries r{std::vector<Rational>(out, Rational(0))};
    for (size_t n = 0; n < out; ++n) {
        long nn = static_cast<long>(n);
        Rational v = g.c[n * static_cast<size_t>(p2)];
        int chi = exactnum::kronecker(lambda % 2 == 0 ? nn : -nn, p);
        if (chi) v += chi * mid * g.c[n];
        if (nn % p2 == 0) v += top * g.c[static_cast<size_t>(nn / p2)];
        r.c[n] = v;
    }
    return r;
}

HalfIntForm hecke_Tp2(const HalfIntForm& g, long p) {
    require(p > 2 && exactnum::is_probable_prime(Integer(p)), "hecke_Tp2: p must be an odd prime");
    const long p2 = p * p;
    const int lambda = g.lambda;
    size_t out = g.precision() / static_cast<size_t>(p2);
    require(out >= 1, "hecke_Tp2: precision below p^2");
    const FieldPtr& K = g.q_expansion.field;
    Rational mid(ipow(p, lambda - 1)), top(ipow(p, 2 * lambda - 1));
    HalfIntForm r;
    r.lambda = lambda;
    r.plus = g.plus;
    r.q_expansion.field = K;
    for (size_t n = 0; n < out; ++n) {
        long nn = static_cast<long>(n);
        NFElem v = g.coeff(n * static_cast<size_t>(p2));
        int chi = exactnum::kronecker(lambda % 2 == 0 ? nn : -nn, p);
        if (chi) v += g.coeff(n) * (chi * mid);
        if (nn % p2 == 0) v += g.coeff(static_cast<size_t>(nn / p2)) * top;
        r.q_expansion.c.push_back(v);
    }
    return r;
}

QMat hecke_matrix_plus(const PlusSpace& S, long p) {
    const size_t d = S.cusp.size();
    QMat M(d, QVec(d, Rational(0)));
    if (d == 0) return M;
    size_t need = std::max(*std::max_element(S.cusp_pivots.begin(), S.cusp_pivots.end()) + 1,
                           static_cast<size_t>(S.lambda / 2) + 1);
    if (S.precision / static_cast<size_t>(p * p) < need)
        fail(ErrorKind::insufficient_precision, "hecke_matrix_plus: need " + std::to_string(need * static_cast<size_t>(p * p)) +
                                                    " coefficients for p = " + std::to_string(p));
    for (size_t j = 0; j < d; ++j) {
        QSeries h = hecke_Tp2(S.cusp[j], p, S.lambda);
        for (size_t i = 0; i < d; ++i) M[i][j] = h.c[S.cusp_pivots[i]];
        // the difference lies in M_{lambda+1/2}(Gamma0(4)) and vanishes on
        // indices 0 .. floor(lambda/2), hence is zero
        for (size_t n = 0; n < h.precision(); ++n) {
            Rational v = h.c[n];
            for (size_t i = 0; i < d; ++i) v -= M[i][j] * S.cusp[i].c[n];
            if (v != 0) fail(ErrorKind::regression, "T(p^2) image leaves the cuspidal plus space");
        }
    }
    return M;
}

std::vector<PlusEigenform> shimura_match(int lambda, size_t prec) {
    require(lambda >= 2, "shimura_match: lambda must be at least 2");
    std::vector<PlusEigenform> out;
    if (forms1::dim_cusp(2 * lambda) == 0) return out;
    const std::vector<long> primes{3, 5, 7};
    auto S0 = plus_space(lambda);
    size_t need = std::max(*std::max_element(S0.cusp_pivots.begin(), S0.cusp_pivots.end()) + 1,
                           static_cast<size_t>(lambda / 2) + 1) + 1;
    auto S = plus_space(lambda, std::max(prec, need * 49));
    const size_t d = S.cusp.size();
    std::vector<QMat> mats;
    for (long p : primes) mats.push_back(hecke_matrix_plus(S, p));

    auto fs = forms1::eigenforms(2 * lambda);
    for (auto& f : fs) {
        const FieldPtr& K = f.hecke_field;
        linalg::KMat stacked;
        for (size_t t = 0; t < primes.size(); ++t) {
            auto Mk = linalg::to_field(mats[t], K);
            const NFElem& ap = f.coeff(static_cast<size_t>(primes[t]));
            for (size_t i = 0; i < d; ++i) {
                Mk[i][i] -= ap;
                stacked.push_back(Mk[i]);
            }
        }
        auto ker = linalg::kernel(stacked, d, K->zero(), K->one());
        if (ker.size() != 1)
            fail(ErrorKind::match_ambiguous, "shimura_match: eigenspace of dimension " + std::to_string(ker.size()) +
                                                 " for a weight " + std::to_string(2 * lambda) + " form");
        PlusEigenform g;
        g.matched = f;
        HalfIntForm h;
        h.lambda = lambda;
        h.plus = true;
        h.q_expansion = qexp::combine(S.cusp, ker[0], std::max(prec, S0.precision));
        long e0 = 0;
        for (size_t e = 1; e < h.precision(); ++e) {
            long D = lambda % 2 == 0 ? static_cast<long>(e) : -static_cast<long>(e);
            if (fundamental_or_one(D) && !h.coeff(e).is_zero()) {
                e0 = static_cast<long>(e);
                break;
            }
        }
        if (e0 == 0) fail(ErrorKind::insufficient_precision, "shimura_match: no nonzero fundamental coefficient");
        NFElem s = h.coeff(static_cast<size_t>(e0)).inverse();
        for (auto& c : h.q_expansion.c) c = c * s;
        for (auto& c : ker[0]) g.coords.push_back(c * s);
        g.normalizing_index = e0;
        g.form = std::move(h);
        out.push_back(std::move(g));
    }
    return out;
}

HalfIntForm extend(const PlusEigenform& g, int lambda, size_t prec) {
    auto S = plus_space(lambda, prec);
    HalfIntForm h;
    h.lambda = lambda;
    h.plus = true;
    h.q_expansion = qexp::combine(S.cusp, g.coords, prec);
    return h;
}

std::vector<NFElem> monomial_coords(const PlusEigenform& g, int lambda) {
    auto S = plus_space(lambda);
    require(g.coords.size() == S.cusp_coords.size(), "monomial_coords: coordinate count mismatch");
    const FieldPtr& K = g.coords.at(0).field();
    std::vector<NFElem> b(S.cusp_coords.at(0).size(), K->zero());
    for (size_t i = 0; i < g.coords.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (S.cusp_coords[i][j] != 0) b[j] += g.coords[i] * S.cusp_coords[i][j];
    return b;
}

CuspExpansions cusp_expansions(int lambda, const std::vector<NFElem>& b, size_t prec) {
    const size_t J = static_cast<size_t>(lambda / 2) + 1;
    require(b.size() == J, "cusp_expansions: need floor(lambda/2) + 1 coordinates");
    const FieldPtr& K = b[0].field();
    // U = prod (1 - q^n)^8 / (1 - q^(2n))^4 = prod (1 - q^n)^4 (1 + q^n)^-4
    ZSeries U{std::vector<Integer>(prec, Integer(0))};
    U.c[0] = 1;
    for (size_t n = 1; n < prec; ++n) {
        for (int t = 0; t < 4; ++t) {
            // multiply by (1 - q^n)
            for (size_t i = prec; i-- > n;) U.c[i] -= U.c[i - n];
            // divide by (1 + q^n)
            for (size_t i = n; i < prec; ++i) U.c[i] -= U.c[i - n];
        }
    }
    // V = q^-1/4 W = sum_{n>=0} q^(n(n+1))
    ZSeries V{std::vector<Integer>(prec, Integer(0))};
    for (size_t n = 0; n * (n + 1) < prec; ++n) V.c[n * (n + 1)] = 1;
    ZSeries th = theta(prec);

    CuspExpansions out;
    out.lambda = lambda;
    out.half_offset = lambda % 2 == 0 ? make_rational(1, 4) : make_rational(3, 4);
    std::vector<QSeries> zero_terms, half_terms;
    ZSeries Uj{std::vector<Integer>(prec, Integer(0))};
    Uj.c[0] = 1;
    for (size_t j = 0; j < J; ++j) {
        int a = 2 * lambda + 1 - 4 * static_cast<int>(j);
        ZSeries z = qexp::mul(qexp::pow(th, a, prec), Uj);
        zero_terms.push_back(qexp::scale(qexp::to_q(z), make_rational(1, ipow(16, static_cast<long>(j)))));
        // W^a = q^(a/4) V^a and a/4 = half_offset + (J - 1 - j)
        ZSeries h = qexp::mul(qexp::pow(V, a, prec), Uj);
        ZSeries shifted{std::vector<Integer>(prec, Integer(0))};
        size_t sh = J - 1 - j;
        for (size_t i = 0; i + sh < prec; ++i) shifted.c[i + sh] = h.c[i];
        Rational s = make_rational(ipow(2, a), ipow(16, static_cast<long>(j)));
        if (j % 2) s = -s;
        half_terms.push_back(qexp::scale(qexp::to_q(shifted), s));
        Uj = qexp::mul(Uj, U);
    }
    auto B = basis_halfint(lambda, prec);
    std::vector<QSeries> inf_terms;
    for (auto& s : B) inf_terms.push_back(qexp::to_q(s));
    out.infinity = qexp::combine(inf_terms, b, prec);
    out.zero = qexp::combine(zero_terms, b, prec);
    out.half = qexp::combine(half_terms, b, prec);
    (void)K;
    return out;
}

std::vector<NFElem> coefficient_generators(const HalfIntForm& g, size_t bound) {
    std::vector<NFElem> gens;
    for (size_t e = 0; e < std::min(bound, g.precision()); ++e)
        if (!g.coeff(e).is_zero()) gens.push_back(g.coeff(e));
    return gens;
}

} // namespace dii::halfint
