#include "dii/lift.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "dii/error.hpp"
#include "dii/siegel.hpp"

namespace dii::lift {

namespace {

Rational rpow(long p, long e) {
    Integer r = 1;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
    return e < 0 ? exactnum::make_rational(1, r) : Rational(r);
}

Integer ipow(long p, long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= p;
    return r;
}

std::vector<long> prime_divisors(const Integer& x) {
    std::vector<long> out;
    for (auto& [q, e] : exactnum::factor_integer(x)) out.push_back(q.get_si());
    return out;
}

} // namespace

// BetaElement

BetaElement::BetaElement(NFElem a, NFElem b, NFElem trace, Rational norm)
    : a_(std::move(a)), b_(std::move(b)), t_(std::move(trace)), n_(std::move(norm)) {}

BetaElement BetaElement::scalar(const NFElem& a, const NFElem& trace, const Rational& norm) {
    return BetaElement(a, trace.field()->zero(), trace, norm);
}

BetaElement BetaElement::gamma(const NFElem& trace, const Rational& norm) {
    require(norm != 0, "gamma: the norm must be nonzero");
    const auto& K = trace.field();
    return BetaElement(K->zero(), K->one(), trace, norm);
}

void BetaElement::check_compatible(const BetaElement& o) const {
    require(t_ == o.t_ && n_ == o.n_, "elements of different quadratic algebras");
}

BetaElement BetaElement::operator+(const BetaElement& o) const {
    check_compatible(o);
    return BetaElement(a_ + o.a_, b_ + o.b_, t_, n_);
}

BetaElement BetaElement::operator-(const BetaElement& o) const {
    check_compatible(o);
    return BetaElement(a_ - o.a_, b_ - o.b_, t_, n_);
}

BetaElement BetaElement::operator*(const BetaElement& o) const {
    check_compatible(o);
    // gamma^2 = t gamma - N
    NFElem bd = b_ * o.b_;
    return BetaElement(a_ * o.a_ - bd * n_, a_ * o.b_ + b_ * o.a_ + bd * t_, t_, n_);
}

BetaElement BetaElement::operator*(const Rational& s) const { return BetaElement(a_ * s, b_ * s, t_, n_); }

BetaElement BetaElement::conjugate() const { return BetaElement(a_ + b_ * t_, -b_, t_, n_); }

BetaElement BetaElement::inverse() const {
    BetaElement c = conjugate();
    BetaElement nn = *this * c;
    require(nn.is_scalar() && !nn.a_.is_zero(), "BetaElement: not invertible");
    NFElem inv = nn.a_.inverse();
    return BetaElement(c.a_ * inv, c.b_ * inv, t_, n_);
}

BetaElement BetaElement::pow(long e) const {
    BetaElement base = e < 0 ? inverse() : *this;
    unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    BetaElement r = scalar(t_.field()->one(), t_, n_);
    while (m) {
        if (m & 1) r = r * base;
        base = base * base;
        m >>= 1;
    }
    return r;
}

// LiftSpec

LiftSpec::LiftSpec(int n, int k, halfint::PlusEigenform g) : n_(n), k_(k), g_(std::move(g)) {
    require(n >= 2 && n % 2 == 0, "lift: n must be even and positive");
    require(k % 2 == 0 && k > n, "lift: k must be even and larger than n");
    require(g_.form.lambda == k - n / 2, "lift: the plus form has the wrong weight");
    require(g_.matched.weight == 2 * k - n, "lift: the matched form has the wrong weight");
    g_ext_ = g_.form;
    f_ext_ = g_.matched;
}

NFElem LiftSpec::g_coeff(long e) const {
    require(e >= 0, "negative index");
    std::lock_guard<std::mutex> lock(mu_);
    if (static_cast<size_t>(e) >= g_ext_.precision())
        g_ext_ = halfint::extend(g_, lambda(), std::max<size_t>(2 * static_cast<size_t>(e) + 2, g_ext_.precision()));
    return g_ext_.coeff(static_cast<size_t>(e));
}

NFElem LiftSpec::f_coeff(long p) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (static_cast<size_t>(p) >= f_ext_.precision()) {
        size_t prec = std::max<size_t>(2 * static_cast<size_t>(p) + 2, f_ext_.precision());
        bool found = false;
        for (auto& h : forms1::eigenforms(f_ext_.weight, prec)) {
            if (!exactnum::same_field(h.hecke_field, f_ext_.hecke_field)) continue;
            bool same = true;
            for (size_t i = 0; i < f_ext_.precision() && same; ++i) same = h.coeff(i) == f_ext_.coeff(i);
            if (same) {
                f_ext_ = h;
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorKind::regression, "lift: extended eigenforms do not contain the matched form");
    }
    return f_ext_.coeff(static_cast<size_t>(p));
}

BetaElement LiftSpec::gamma(long p) const {
    return BetaElement::gamma(f_coeff(p), Rational(ipow(p, 2 * k_ - n_ - 1)));
}

std::map<std::string, NFElem> LiftSpec::cache_snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_;
}

std::shared_ptr<LiftSpec> make_lift(int n, int k, size_t which) {
    auto gs = halfint::shimura_match(k - n / 2);
    require(which < gs.size(), "make_lift: no plus eigenform with that index");
    return std::make_shared<LiftSpec>(n, k, gs[which]);
}

BetaElement lift_local_factor(const LiftSpec& spec, const HalfIntegralMatrix& T, long p) {
    auto F = siegel::siegel_series(T, p);
    BetaElement g = spec.gamma(p);
    const int shift = spec.k() - spec.n() - 1;
    BetaElement acc = BetaElement::scalar(spec.field()->zero(), g.trace(), g.norm());
    for (int i = 0; i <= F.degree(); ++i) {
        if (F.coeffs[static_cast<size_t>(i)] == 0) continue;
        Rational c = Rational(F.coeffs[static_cast<size_t>(i)]) * rpow(p, static_cast<long>(i) * shift);
        acc = acc + g.pow(F.nu - i) * c;
    }
    return acc;
}

NFElem lift_coefficient(const LiftSpec& spec, const HalfIntegralMatrix& T) {
    require(T.degree() == spec.n(), "lift_coefficient: T has the wrong degree");
    require(T.is_positive_definite(), "lift_coefficient: T must be positive definite");
    std::string key = T.serialize();
    {
        std::lock_guard<std::mutex> lock(spec.mu_);
        auto it = spec.cache_.find(key);
        if (it != spec.cache_.end()) return it->second;
    }
    auto dd = qforms::disc_split(T);
    Integer absd = dd.d < 0 ? Integer(-dd.d) : dd.d;
    NFElem c = spec.g_coeff(absd.get_si());
    if (dd.f != 1) {
        NFElem scalar = spec.field()->one();
        for (long p : prime_divisors(dd.f)) {
            BetaElement local = lift_local_factor(spec, T, p);
            if (!local.is_scalar())
                fail(ErrorKind::regression, "lift_coefficient: local factor at " + std::to_string(p) + " for " + key +
                                                " has a nonzero gamma component");
            scalar *= local.scalar_part();
        }
        c *= scalar;
    }
    std::lock_guard<std::mutex> lock(spec.mu_);
    spec.cache_.emplace(key, c);
    return c;
}

NFElem maass_coefficient(const halfint::HalfIntForm& g, int k, const HalfIntegralMatrix& T) {
    require(T.degree() == 2, "maass_coefficient: degree 2 only");
    require(T.is_positive_definite(), "maass_coefficient: T must be positive definite");
    long det = T.det2().get_si();
    long cont = T.content().get_si();
    require(static_cast<size_t>(det) < g.precision(), "maass_coefficient: plus form is too short");
    NFElem s = g.coeff(0) * Rational(0);
    for (long d = 1; d <= cont; ++d)
        if (cont % d == 0) s += g.coeff(static_cast<size_t>(det / (d * d))) * Rational(ipow(d, k - 1));
    return s;
}

// Satake parameters and Euler factors

std::vector<BetaElement> lift_satake(const LiftSpec& spec, long p) {
    const int n = spec.n(), k = spec.k();
    BetaElement g = spec.gamma(p);
    std::vector<BetaElement> out;
    out.push_back(g.pow(-n / 2) * rpow(p, static_cast<long>(n) * k - n * (n + 1) / 2));
    for (int i = 1; i <= n; ++i) out.push_back(g * rpow(p, i - k));
    return out;
}

namespace {

using APoly = std::vector<BetaElement>;

APoly apoly_mul(const APoly& a, const APoly& b) {
    const auto& z = a[0];
    APoly r(a.size() + b.size() - 1, BetaElement::scalar(z.trace().field()->zero(), z.trace(), z.norm()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

std::vector<NFElem> kpoly_mul(const std::vector<NFElem>& a, const std::vector<NFElem>& b) {
    std::vector<NFElem> r(a.size() + b.size() - 1, a[0].field()->zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

std::vector<NFElem> standard_euler_factor(const std::vector<BetaElement>& satake) {
    require(!satake.empty(), "standard_euler_factor: empty Satake data");
    const auto& z = satake[0];
    const auto& K = z.trace().field();
    auto sc = [&](const NFElem& x) { return BetaElement::scalar(x, z.trace(), z.norm()); };
    APoly acc{sc(K->one()), sc(-K->one())};
    for (size_t i = 1; i < satake.size(); ++i) {
        acc = apoly_mul(acc, {sc(K->one()), BetaElement::scalar(K->zero(), z.trace(), z.norm()) - satake[i]});
        acc = apoly_mul(acc, {sc(K->one()), BetaElement::scalar(K->zero(), z.trace(), z.norm()) - satake[i].inverse()});
    }
    std::vector<NFElem> out;
    for (auto& c : acc) {
        if (!c.is_scalar()) fail(ErrorKind::regression, "standard_euler_factor: coefficient outside the Hecke field");
        out.push_back(c.scalar_part());
    }
    return out;
}

std::vector<NFElem> standard_euler_factor_expected(const LiftSpec& spec, long p) {
    const auto& K = spec.field();
    const int n = spec.n(), k = spec.k();
    NFElem a = spec.f_coeff(p);
    std::vector<NFElem> acc{K->one(), -K->one()};
    for (int i = 1; i <= n; ++i) {
        // 1 - a_f(p) p^(i-k) X + p^(2k-n-1) p^(2(i-k)) X^2
        acc = kpoly_mul(acc, {K->one(), -(a * rpow(p, i - k)), K->from_rational(rpow(p, 2 * k - n - 1 + 2 * (i - k)))});
    }
    return acc;
}

NFElem satake_trace_scaled(const LiftSpec& spec, long p) {
    auto al = lift_satake(spec, p);
    BetaElement s = BetaElement::scalar(spec.field()->zero(), al[0].trace(), al[0].norm());
    for (size_t i = 1; i < al.size(); ++i) s = s + al[i] + al[i].inverse();
    s = s * rpow(p, static_cast<long>(spec.n()) * spec.k() - spec.n() * (spec.n() + 1) / 2);
    if (!s.is_scalar()) fail(ErrorKind::regression, "satake_trace_scaled: value outside the Hecke field");
    return s.scalar_part();
}

NFElem spinor_eigenvalue(const LiftSpec& spec, long p) {
    auto al = lift_satake(spec, p);
    BetaElement one = BetaElement::scalar(spec.field()->one(), al[0].trace(), al[0].norm());
    BetaElement v = al[0];
    for (size_t i = 1; i < al.size(); ++i) v = v * (one + al[i]);
    if (!v.is_scalar()) fail(ErrorKind::regression, "spinor_eigenvalue: value outside the Hecke field");
    return v.scalar_part();
}

// Coefficient tables

bool SiegelFourierTable::contains(const HalfIntegralMatrix& T) const {
    return c.count(qforms::reduce_binary(T)) > 0;
}

NFElem SiegelFourierTable::at(const HalfIntegralMatrix& T) const {
    auto it = c.find(qforms::reduce_binary(T));
    if (it == c.end()) fail(ErrorKind::precondition, "table has no entry for " + T.serialize());
    return it->second;
}

std::string SiegelFourierTable::serialize() const {
    std::ostringstream os;
    for (auto& [T, v] : c) os << T.serialize() << '\t' << exactnum::serialize(v) << '\n';
    return os.str();
}

namespace {

SiegelFourierTable make_table(int k, long bound, const FieldPtr& K,
                              const std::function<NFElem(const HalfIntegralMatrix&)>& coeff) {
    SiegelFourierTable t;
    t.k = k;
    t.det_bound = bound;
    t.field = K;
    for (auto& T : qforms::enumerate_pd(2, bound)) {
        auto R = qforms::reduce_binary(T);
        t.c.emplace(R, coeff(R));
    }
    return t;
}

} // namespace

SiegelFourierTable lift_table(const LiftSpec& spec, long det_bound) {
    require(spec.n() == 2, "lift_table: degree 2 only");
    return make_table(spec.k(), det_bound, spec.field(),
                      [&](const HalfIntegralMatrix& T) { return lift_coefficient(spec, T); });
}

SiegelFourierTable maass_table(const LiftSpec& spec, long det_bound) {
    require(spec.n() == 2, "maass_table: degree 2 only");
    halfint::HalfIntForm g = halfint::extend(spec.g(), spec.lambda(), static_cast<size_t>(det_bound) + 1);
    return make_table(spec.k(), det_bound, spec.field(),
                      [&](const HalfIntegralMatrix& T) { return maass_coefficient(g, spec.k(), T); });
}

SiegelFourierTable eisenstein_table(int k, long det_bound) {
    require(k >= 4 && k % 2 == 0, "eisenstein_table: k must be even and at least 4");
    auto Q = exactnum::NumberField::rationals();
    return make_table(k, det_bound, Q, [&](const HalfIntegralMatrix& T) {
        auto dd = qforms::disc_split(T);
        Rational v = exactnum::dirichlet_l_negative(k - 1, dd.d.get_si());
        for (int i = 0; i < 2 * k - 3; ++i) v *= dd.f;
        for (long p : prime_divisors(T.det2())) v *= siegel::siegel_series(T, p).eval(rpow(p, -k));
        return Q->from_rational(v);
    });
}

SiegelFourierTable hecke_Tp_siegel(const SiegelFourierTable& table, long p) {
    require(table.n == 2, "hecke_Tp_siegel: degree 2 only");
    require(p >= 2 && exactnum::is_probable_prime(Integer(p)), "hecke_Tp_siegel: p must be prime");
    const int k = table.k;
    SiegelFourierTable out;
    out.k = k;
    out.field = table.field;
    out.det_bound = table.det_bound / (p * p);
    std::vector<std::string> missing;
    auto get = [&](const HalfIntegralMatrix& T) {
        auto it = table.c.find(qforms::reduce_binary(T));
        if (it != table.c.end()) return it->second;
        missing.push_back(qforms::reduce_binary(T).serialize());
        return table.field->zero();
    };
    // D = [[1, b], [0, p]] for 0 <= b < p, and [[p, 0], [0, 1]]
    std::vector<std::array<long, 4>> cosets;
    for (long b = 0; b < p; ++b) cosets.push_back({1, b, 0, p});
    cosets.push_back({p, 0, 0, 1});
    const Rational w1(ipow(p, k - 2)), w2(ipow(p, 2 * k - 3));
    for (auto& B : qforms::enumerate_pd(2, out.det_bound)) {
        auto R = qforms::reduce_binary(B);
        NFElem v = get(R.scaled(p));
        const long g00 = R.twice(0, 0), g01 = R.twice(0, 1), g11 = R.twice(1, 1);
        for (auto& D : cosets) {
            // D (2B) D^t
            long m00 = D[0] * D[0] * g00 + 2 * D[0] * D[1] * g01 + D[1] * D[1] * g11;
            long m01 = D[0] * D[2] * g00 + (D[0] * D[3] + D[1] * D[2]) * g01 + D[1] * D[3] * g11;
            long m11 = D[2] * D[2] * g00 + 2 * D[2] * D[3] * g01 + D[3] * D[3] * g11;
            if (m00 % p || m01 % p || m11 % p) continue;
            if ((m00 / p) % 2 || (m11 / p) % 2) continue;
            v += get(HalfIntegralMatrix(2, {m00 / p, m01 / p, m01 / p, m11 / p})) * w1;
        }
        if (g00 % p == 0 && g01 % p == 0 && g11 % p == 0 && (g00 / p) % 2 == 0 && (g11 / p) % 2 == 0)
            v += get(HalfIntegralMatrix(2, {g00 / p, g01 / p, g01 / p, g11 / p})) * w2;
        out.c.emplace(R, v);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string msg = "hecke_Tp_siegel: table lacks " + std::to_string(missing.size()) + " entries:";
        for (size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
        if (missing.size() > 20) msg += " ...";
        fail(ErrorKind::precondition, msg);
    }
    return out;
}

bool table_ratio(const SiegelFourierTable& a, const SiegelFourierTable& b, NFElem& ratio) {
    bool have = false;
    for (auto& [T, vb] : b.c) {
        auto it = a.c.find(T);
        if (it == a.c.end()) continue;
        if (!have && !vb.is_zero()) {
            ratio = it->second / vb;
            have = true;
        }
    }
    if (!have) return false;
    for (auto& [T, vb] : b.c) {
        auto it = a.c.find(T);
        if (it == a.c.end()) continue;
        if (it->second != ratio * vb) return false;
    }
    return true;
}

std::vector<Rational> h_poly(int n, long p) {
    require(n >= 0, "h_poly: n must be nonnegative");
    std::vector<Rational> h{Rational(1)};
    for (int i = 1; i <= n; ++i) {
        // times (1 + p^-i X)
        h.push_back(Rational(0));
        for (size_t r = h.size() - 1; r >= 1; --r) h[r] += h[r - 1] * rpow(p, -i);
    }
    return h;
}

Rational h_poly_eval(int n, long p, const Rational& X) {
    auto h = h_poly(n, p);
    Rational v = 0;
    for (size_t r = h.size(); r-- > 0;) v = v * X + h[r];
    return v;
}

// L-value reports

LValueData::LValueData(int n, int k, forms1::PrimitiveForm f, long adjoint_bits)
    : n_(n), k_(k), f_(std::move(f)), bits_(adjoint_bits) {
    require(f_.weight == 2 * k - n, "LValueData: form of weight 2k - n expected");
    S_ = msym::build_space(f_.weight);
    pd_ = msym::periods(S_, f_);
}

msym::CriticalValue LValueData::critical(int l, long D) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(l, D);
    auto it = crit_.find(key);
    if (it != crit_.end()) return it->second;
    auto cv = msym::critical_Lvalue(S_, pd_, l, D);
    crit_.emplace(key, cv);
    return cv;
}

const lser::AdjointValue& LValueData::adjoint(int m) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = adj_.find(m);
    if (it == adj_.end()) it = adj_.emplace(m, lser::adjoint_normalized(f_, m, bits_)).first;
    return it->second;
}

int LValueData::congruence_ord(const PrimeIdeal& P) {
    std::lock_guard<std::mutex> lock(mu_);
    std::string key = exactnum::serialize(P);
    auto it = cong_.find(key);
    if (it == cong_.end()) it = cong_.emplace(key, msym::adjoint_period_ord(f_.weight, f_, P)).first;
    return it->second;
}

void ValuationReport::recompute() {
    ord = 0;
    conditional = false;
    for (auto& f : factors) {
        ord += f.exponent * f.ord;
        if (!f.certified) conditional = true;
    }
}

std::string factor_label_norm(const Rational& norm) {
    if (norm == 0) return "0";
    return exactnum::factorization_string(exactnum::factor_rational(norm));
}

namespace {

constexpr const char* kPeriodNote = "2- and 3-parts of the norm depend on the lattice normalization";

ValuationFactor critical_factor(LValueData& data, int l, long D, int exponent, const PrimeIdeal& P) {
    auto cv = data.critical(l, D);
    ValuationFactor f;
    f.label = D == 1 ? "L(" + std::to_string(l) + ",f)" : "L(" + std::to_string(l) + ",f,chi_" + std::to_string(D) + ")";
    f.exponent = exponent;
    if (cv.is_zero()) fail(ErrorKind::regression, "critical value " + f.label + " vanishes");
    f.ord = cv.ord(P);
    f.norm = cv.norm();
    f.ambiguity = kPeriodNote;
    if (D != 1) f.ambiguity += "; twist normalization differs at primes dividing D";
    return f;
}

ValuationFactor rational_factor(const std::string& label, const Rational& x, int exponent, const PrimeIdeal& P) {
    ValuationFactor f;
    f.label = label;
    f.exponent = exponent;
    f.ord = P.ord(x);
    f.norm = x < 0 ? Rational(-x) : x;
    return f;
}

} // namespace

ValuationReport ratio_prop43(LValueData& data, long D, const PrimeIdeal& P) {
    const int n = data.n(), k = data.k();
    require(P.p() >= 5, "ratio_prop43: residue characteristic must be at least 5");
    require(D == 1 || exactnum::is_fundamental_discriminant(Integer(D)), "ratio_prop43: D must be fundamental");
    require(((n / 2) % 2 ? -D : D) > 0, "ratio_prop43: (-1)^(n/2) D must be positive");
    ValuationReport r;
    r.quantity = "c_g(|D|)^2 <f,f>^(n/2) / <I(g),I(g)>";
    long absD = D < 0 ? -D : D;
    r.factors.push_back(rational_factor("|D|", Rational(absD), k - n / 2, P));
    r.factors.push_back(critical_factor(data, k - n / 2, D, 1, P));
    r.factors.push_back(critical_factor(data, k, 1, -1, P));
    r.factors.push_back(rational_factor("xi(" + std::to_string(n) + ")", exactnum::xi_tilde(n), -1, P));
    for (int i = 1; i <= n / 2 - 1; ++i) {
        const auto& av = data.adjoint(2 * i + 1);
        ValuationFactor f;
        f.label = "L(" + std::to_string(2 * i + 1) + ",f,Ad)";
        f.exponent = -1;
        f.ord = P.ord(av.value);
        Rational nm = av.value.norm();
        f.norm = nm < 0 ? Rational(-nm) : nm;
        f.certified = av.verified;
        if (!av.verified) f.ambiguity = "reconstruction not stable under doubling the precision";
        r.factors.push_back(f);
        r.factors.push_back(rational_factor("xi(" + std::to_string(2 * i) + ")", exactnum::xi_tilde(2 * i), -1, P));
    }
    r.caveats.push_back("2^a (-1)^b prefactor omitted: a unit at residue characteristic >= 5");
    r.recompute();
    return r;
}

int coefficient_ideal_ord(const LiftSpec& spec, const PrimeIdeal& P, size_t bound) {
    const auto& g = spec.g().form;
    auto gens = halfint::coefficient_generators(g, bound ? bound : g.precision());
    require(!gens.empty(), "coefficient_ideal_ord: no nonzero coefficients");
    return P.ord(gens);
}

UnitWitness unit_witness(const LiftSpec& spec, long D, const PrimeIdeal& P, long q_max) {
    const int n = spec.n();
    require(((n / 2) % 2 ? -D : D) > 0, "unit_witness: (-1)^(n/2) D must be positive");
    long absD = D < 0 ? -D : D;
    NFElem base = spec.g_coeff(absD);
    require(!base.is_zero(), "unit_witness: c_g(|D|) vanishes");
    auto check = [&](const HalfIntegralMatrix& T, long q) {
        UnitWitness w{T, lift_coefficient(spec, T) / base, q};
        return w;
    };
    if (D != 1) {
        auto w = check(qforms::construct_lattice(n, Integer(D), qforms::LatticeMode::fundamental), 0);
        if (w.l != spec.field()->one()) fail(ErrorKind::regression, "unit_witness: coefficient at f_T = 1 is not c_g(|D|)");
        return w;
    }
    if (n % 8 == 0) {
        auto w = check(qforms::construct_lattice(n, Integer(1), qforms::LatticeMode::unimodular), 0);
        if (w.l != spec.field()->one()) fail(ErrorKind::regression, "unit_witness: coefficient at f_T = 1 is not c_g(1)");
        return w;
    }
    for (auto q : exactnum::primes_up_to(q_max)) {
        if (q == P.p()) continue;
        auto w = check(qforms::construct_lattice(n, Integer(1), qforms::LatticeMode::q_squared, q), q);
        if (!w.l.is_zero() && P.ord(w.l) == 0) return w;
    }
    fail(ErrorKind::search_exhausted, "unit_witness: no q <= " + std::to_string(q_max) + " gives a unit");
}

ValuationReport lambda_standard(const LiftSpec& spec, LValueData& data, int m, long D, const PrimeIdeal& P) {
    const int n = spec.n(), k = spec.k();
    require(data.n() == n && data.k() == k, "lambda_standard: L-value data for another lift");
    require(m >= n / 2 + 1 && 2 * m <= k - n - 2, "lambda_standard: m out of range");
    require(P.p() >= 5 && P.p() > 2 * k - 1, "lambda_standard: P must be prime to (2k-1)!");
    ValuationReport r = ratio_prop43(data, D, P);
    r.quantity = "Lambda(" + std::to_string(2 * m) + ",I(g),St) J^2";
    std::vector<ValuationFactor> fs;
    for (int i = 1; i <= n; ++i) fs.push_back(critical_factor(data, 2 * m + k - i, 1, 1, P));
    fs.insert(fs.end(), r.factors.begin(), r.factors.end());
    ValuationFactor cong;
    cong.label = "<f,f>/(Omega+ Omega-)";
    cong.exponent = -n / 2;
    cong.ord = data.congruence_ord(P);
    cong.norm = 0;
    fs.push_back(cong);
    auto w = unit_witness(spec, D, P);
    NFElem cA = lift_coefficient(spec, w.T);
    ValuationFactor ideal;
    ideal.label = "J(g)/c(" + w.T.serialize() + ")";
    ideal.exponent = 2;
    ideal.ord = coefficient_ideal_ord(spec, P) - P.ord(cA);
    ideal.norm = 0;
    fs.push_back(ideal);
    r.factors = fs;
    r.caveats.push_back("epsilon_{k,m} omitted: its numerator is prime to P, so the true valuation is at most the value shown");
    r.caveats.push_back("period term enters through the congruence number of f");
    r.recompute();
    return r;
}

} // namespace dii::lift
