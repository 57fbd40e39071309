#include "dii/msym.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace dii::msym {

using linalg::KMat;
using linalg::KVec;

namespace {

// (uX + vY)^e as a coefficient vector indexed by the power of X.
Poly linear_power(const Integer& u, const Integer& v, int e) {
    Poly r(e + 1, Rational(0));
    for (int i = 0; i <= e; ++i) {
        Integer t = exactnum::binomial(e, i);
        for (int k = 0; k < i; ++k) t *= u;
        for (int k = 0; k < e - i; ++k) t *= v;
        r[i] = Rational(t);
    }
    return r;
}

Poly unit_poly(int w, int i) {
    Poly P(w - 1, Rational(0));
    P[i] = 1;
    return P;
}

QVec zero_vec(size_t n) { return QVec(n, Rational(0)); }

void add_scaled(QVec& acc, const QVec& v, const Rational& s) {
    for (size_t i = 0; i < acc.size(); ++i)
        if (v[i] != 0) acc[i] += s * v[i];
}

int boundary_gen(int w, size_t i) {
    size_t top = static_cast<size_t>(w - 2);
    return (i == top ? 1 : 0) - (i == 0 ? 1 : 0);
}

} // namespace

Poly act(const Poly& P, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    int n = static_cast<int>(P.size()) - 1;
    Poly out(n + 1, Rational(0));
    std::vector<Poly> pa(n + 1), pc(n + 1);
    for (int e = 0; e <= n; ++e) {
        pa[e] = linear_power(a, b, e);
        pc[e] = linear_power(c, d, e);
    }
    for (int i = 0; i <= n; ++i) {
        if (P[i] == 0) continue;
        const Poly& A = pa[i];
        const Poly& C = pc[n - i];
        for (size_t s = 0; s < A.size(); ++s) {
            if (A[s] == 0) continue;
            Rational t = P[i] * A[s];
            for (size_t u = 0; u < C.size(); ++u)
                if (C[u] != 0) out[s + u] += t * C[u];
        }
    }
    return out;
}

ModularSymbolSpace build_space(int w) {
    require(w >= 2 && w % 2 == 0, "modular symbols need even weight >= 2");
    static std::mutex mu;
    static std::map<int, ModularSymbolSpace> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
    }
    size_t n = static_cast<size_t>(w - 1);
    QMat rel;
    for (size_t i = 0; i < n; ++i) {
        Poly P = unit_poly(w, static_cast<int>(i));
        Poly s = act(P, 0, -1, 1, 0);
        Poly t1 = act(P, 0, -1, 1, -1);
        Poly t2 = act(P, -1, 1, -1, 0);
        QVec r1 = P, r2 = P;
        add_scaled(r1, s, 1);
        add_scaled(r2, t1, 1);
        add_scaled(r2, t2, 1);
        rel.push_back(r1);
        rel.push_back(r2);
    }
    for (auto& r : rel)
        for (size_t i = 0; i < n; ++i)
            if (boundary_gen(w, i) != 0 && r[i] != 0) {
                Rational d = 0;
                for (size_t k = 0; k < n; ++k) d += r[k] * boundary_gen(w, k);
                require(d == 0, "boundary does not vanish on a relation");
                break;
            }
    QMat R = rel;
    auto piv = linalg::rref(R);
    // the star involution must preserve the relations
    {
        QMat both = R;
        for (auto row : R) {
            for (size_t i = 1; i < n; i += 2) row[i] = -row[i];
            both.push_back(row);
        }
        require(linalg::rank(both) == piv.size(), "star involution does not preserve the relations");
    }
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    ModularSymbolSpace S;
    S.weight = w;
    S.num_generators = n;
    std::vector<size_t> pos(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (!is_piv[i]) {
            pos[i] = S.basis_generators.size();
            S.basis_generators.push_back(i);
        }
    size_t d = S.basis_generators.size();
    S.reduce.assign(n, zero_vec(d));
    for (size_t i = 0; i < n; ++i)
        if (!is_piv[i]) S.reduce[i][pos[i]] = 1;
    for (size_t r = 0; r < piv.size(); ++r)
        for (size_t f : S.basis_generators) S.reduce[piv[r]][pos[f]] = -R[r][f];
    S.boundary = zero_vec(d);
    for (size_t j = 0; j < d; ++j) S.boundary[j] = boundary_gen(w, S.basis_generators[j]);
    S.cusp_basis = linalg::kernel(QMat{S.boundary}, d, Rational(0), Rational(1));
    int ds = forms1::dim_cusp(w);
    if (w >= 4)
        require(S.cuspidal_dimension() == static_cast<size_t>(2 * ds) && d == S.cuspidal_dimension() + 1,
                "modular symbol dimensions disagree with 2 dim S_w + 1");
    std::lock_guard<std::mutex> lock(mu);
    memo[w] = S;
    return S;
}

QVec symbol_zero_infinity(const ModularSymbolSpace& S, const Poly& P) {
    require(P.size() == S.num_generators, "polynomial degree does not match the weight");
    QVec v = zero_vec(S.dimension());
    for (size_t i = 0; i < P.size(); ++i)
        if (P[i] != 0) add_scaled(v, S.reduce[i], P[i]);
    return v;
}

QVec symbol_to_infinity(const ModularSymbolSpace& S, const Poly& P, const Integer& num0, const Integer& den0) {
    require(den0 > 0, "cusp denominator must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), num0.get_mpz_t(), den0.get_mpz_t());
    Integer num = num0 / g, den = den0 / g;
    // {oo, alpha} = sum over convergents of {p_{k-1}/q_{k-1}, p_k/q_k}
    QVec acc = zero_vec(S.dimension());
    Integer pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
    Integer x = num, y = den;
    while (y != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        Integer pk = a * pm1 + pm2, qk = a * qm1 + qm2;
        Integer det = pk * qm1 - pm1 * qk;
        Poly Q = det == 1 ? act(P, pk, pm1, qk, qm1) : act(P, -pk, pm1, -qk, qm1);
        add_scaled(acc, symbol_zero_infinity(S, Q), 1);
        pm2 = pm1;
        qm2 = qm1;
        pm1 = pk;
        qm1 = qk;
        Integer r = x - a * y;
        x = y;
        y = r;
    }
    for (auto& c : acc) c = -c;
    return acc;
}

QMat hecke_on_symbols(const ModularSymbolSpace& S, long p) {
    require(p >= 2 && exactnum::is_probable_prime(Integer(p)), "hecke_on_symbols needs a prime");
    size_t d = S.dimension();
    QMat M(d, zero_vec(d));
    for (size_t j = 0; j < d; ++j) {
        Poly P = unit_poly(S.weight, static_cast<int>(S.basis_generators[j]));
        QVec img = symbol_zero_infinity(S, act(P, 1, 0, 0, p));
        for (long b = 0; b < p; ++b) add_scaled(img, symbol_to_infinity(S, act(P, p, -b, 0, 1), b, p), 1);
        for (size_t i = 0; i < d; ++i) M[i][j] = img[i];
    }
    return M;
}

QMat star_involution(const ModularSymbolSpace& S) {
    size_t d = S.dimension();
    QMat M(d, zero_vec(d));
    for (size_t j = 0; j < d; ++j) {
        Rational s = S.basis_generators[j] % 2 ? -1 : 1;
        for (size_t i = 0; i < d; ++i) M[i][j] = s * (i == j ? 1 : 0);
    }
    return M;
}

QMat restrict_to_cusp(const ModularSymbolSpace& S, const QMat& M) {
    size_t k = S.cuspidal_dimension();
    QMat R(k, zero_vec(k));
    for (size_t j = 0; j < k; ++j) {
        QVec img = linalg::apply(M, S.cusp_basis[j], Rational(0));
        QVec x;
        require(linalg::solve_in_span(S.cusp_basis, img, x, Rational(0), Rational(1)),
                "operator does not preserve the cuspidal subspace");
        for (size_t i = 0; i < k; ++i) R[i][j] = x[i];
    }
    return R;
}

QVec winding_element(const ModularSymbolSpace& S, int l) {
    require(l >= 1 && l <= S.weight - 1, "critical point out of range");
    return symbol_zero_infinity(S, unit_poly(S.weight, l - 1));
}

QVec twisted_winding_element(const ModularSymbolSpace& S, int l, long D) {
    require(l >= 1 && l <= S.weight - 1, "critical point out of range");
    require(exactnum::is_fundamental_discriminant(Integer(D)), "twist needs a fundamental discriminant");
    long m = D < 0 ? -D : D;
    Poly base = unit_poly(S.weight, l - 1);
    QVec acc = zero_vec(S.dimension());
    for (long a = m == 1 ? 0 : 1; a < m; ++a) {
        int chi = exactnum::kronecker(D, a);
        if (chi == 0) continue;
        add_scaled(acc, symbol_to_infinity(S, act(base, m, -a, 0, 1), a, m), chi);
    }
    return acc;
}

NFElem IntegralEigenclassPair::pair(const QVec& v) const {
    require(v.size() == functional.size(), "symbol dimension mismatch");
    NFElem r = form.hecke_field->zero();
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) r += functional[i] * v[i];
    return r;
}

int IntegralEigenclassPair::lattice_ord(const PrimeIdeal& P) const { return P.ord(lattice_gens); }

Rational IntegralEigenclassPair::lattice_norm() const { return exactnum::ideal_norm(lattice_gens); }

IntegralEigenclassPair eigen_functional(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, int sign,
                                        Lattice lattice) {
    require(f.weight == S.weight, "form and symbol space have different weights");
    require(sign == 1 || sign == -1, "sign must be +1 or -1");
    const FieldPtr& K = f.hecke_field;
    size_t d = S.dimension();
    // phi M = a phi for the Hecke matrices and phi * = sign phi
    KMat A;
    auto append = [&](const QMat& M, const NFElem& ev) {
        KMat Mk = linalg::to_field(linalg::transpose(M), K);
        for (size_t i = 0; i < d; ++i) {
            Mk[i][i] -= ev;
            A.push_back(Mk[i]);
        }
    };
    append(star_involution(S), K->from_rational(sign));
    for (long p : {2L, 3L}) {
        require(f.precision() > static_cast<size_t>(p), "form precision too low");
        append(hecke_on_symbols(S, p), f.coeff(p));
        auto ker = linalg::kernel(A, d, K->zero(), K->one());
        if (ker.size() == 1) {
            IntegralEigenclassPair E;
            E.form = f;
            E.sign = sign;
            E.lattice = lattice;
            E.functional = ker[0];
            // values on a Z-basis of the chosen lattice
            for (size_t i = 0; i < S.num_generators; ++i) {
                bool on_lattice = lattice == Lattice::full ||
                                  (i != 0 && i != S.num_generators - 1);
                if (!on_lattice) continue;
                NFElem v = E.pair(S.reduce[i]);
                if (!v.is_zero()) E.lattice_gens.push_back(v);
            }
            if (lattice == Lattice::cuspidal) {
                QVec v = S.reduce[0];
                add_scaled(v, S.reduce[S.num_generators - 1], 1);
                NFElem x = E.pair(v);
                if (!x.is_zero()) E.lattice_gens.push_back(x);
            }
            require(!E.lattice_gens.empty(), "eigen-functional vanishes on the lattice");
            return E;
        }
        require(!ker.empty(), "no Hecke eigen-functional for this form");
    }
    fail(ErrorKind::precondition, "eigen-functional is not unique after T_2 and T_3");
}

PeriodData periods(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, Lattice lattice) {
    return PeriodData{eigen_functional(S, f, 1, lattice), eigen_functional(S, f, -1, lattice)};
}

PeriodData periods_eta(const ModularSymbolSpace& S, const forms1::PrimitiveForm& f, const PrimeIdeal& P) {
    if (P.p() == 2 || P.p() == 3)
        fail(ErrorKind::unsupported, "periods at residue characteristic 2 or 3 are not normalized");
    require(exactnum::same_field(P.field(), f.hecke_field), "prime is not in the Hecke field");
    return periods(S, f, Lattice::cuspidal);
}

int CriticalValue::ord(const PrimeIdeal& P) const {
    require(!raw.is_zero(), "critical value vanishes");
    return P.ord(raw) - P.ord(lattice_gens);
}

Rational CriticalValue::norm() const {
    Rational n = raw.norm();
    if (n < 0) n = -n;
    return n / exactnum::ideal_norm(lattice_gens);
}

NFElem CriticalValue::element_at(const PrimeIdeal& P) const {
    size_t best = 0;
    int bo = P.ord(lattice_gens[0]);
    for (size_t i = 1; i < lattice_gens.size(); ++i) {
        int o = P.ord(lattice_gens[i]);
        if (o < bo) {
            bo = o;
            best = i;
        }
    }
    return raw / lattice_gens[best];
}

CriticalValue critical_Lvalue(const ModularSymbolSpace& S, const PeriodData& pd, int l, long D) {
    require(l >= 1 && l <= S.weight - 1, "critical point out of range");
    long m = D < 0 ? -D : D;
    int chi_m1 = D < 0 ? -1 : 1;
    int sign = ((l - 1) % 2 ? -1 : 1) * chi_m1;
    const IntegralEigenclassPair& E = pd.for_sign(sign);
    QVec elem = D == 1 ? winding_element(S, l) : twisted_winding_element(S, l, D);
    Integer scale = D;
    for (int i = 0; i < l - 1; ++i) scale *= m;
    CriticalValue cv;
    cv.l = l;
    cv.D = D;
    cv.sign = sign;
    cv.raw = E.pair(elem) * (Rational(1) / Rational(scale));
    cv.lattice_gens = E.lattice_gens;
    return cv;
}

int adjoint_period_ord(int w, const forms1::PrimitiveForm& f, const PrimeIdeal& P) {
    require(f.weight == w, "weight mismatch");
    const FieldPtr& K = f.hecke_field;
    require(exactnum::same_field(P.field(), K), "prime is not in the Hecke field");
    if (P.p() == 2 || P.p() == 3)
        fail(ErrorKind::unsupported, "congruence numbers at residue characteristic 2 or 3 are not supported");
    int d = forms1::dim_cusp(w);
    auto B = forms1::miller_basis(w, std::max<size_t>(f.precision(), 3 * (d + 2)));
    // f in Miller coordinates: echelon pivots at q^1 .. q^d
    KVec v;
    for (int i = 0; i < d; ++i) v.push_back(f.coeff(i + 1));
    // left eigenvector psi with psi T = a psi; the f-component of basis
    // vector j is psi_j / (psi . v)
    for (long p : {2L, 3L, 5L}) {
        KMat A = linalg::to_field(linalg::transpose(forms1::hecke_matrix(B, p)), K);
        for (int i = 0; i < d; ++i) A[i][i] -= f.coeff(p);
        auto ker = linalg::kernel(A, d, K->zero(), K->one());
        if (ker.size() != 1) continue;
        auto psi = ker[0];
        NFElem s = K->zero();
        for (int i = 0; i < d; ++i) s += psi[i] * v[i];
        require(!s.is_zero(), "eigenform has no component along itself");
        std::vector<NFElem> comps;
        for (auto& x : psi)
            if (!x.is_zero()) comps.push_back(x / s);
        return -P.ord(comps);
    }
    fail(ErrorKind::precondition, "Hecke eigenvalue is not simple for T_2, T_3 or T_5");
}

} // namespace dii::msym
