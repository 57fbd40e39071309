#include "dii/lser.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>

namespace dii::lser {

using mp::Complex;

namespace {

Real rpow(const Real& x, long n) { return mp::pow(x, n); }

Real factorial_real(long n) { return Real(exactnum::factorial(n)); }

// integral over [1, oo) of y^p e^(-c y) dy for an integer p >= 0
Real tail_integral(long p, const Real& c) {
    // p! e^-c sum_{i=0}^{p} c^(i-p-1) / i!
    Real sum(0);
    Real ci = Real(1);
    Real inv_fact = Real(1);
    for (long i = 0; i <= p; ++i) {
        if (i > 0) {
            ci *= c;
            inv_fact /= Real(i);
        }
        sum += ci * inv_fact;
    }
    return factorial_real(p) * mp::exp(-c) * sum / rpow(c, p + 1);
}

// Gamma(s, x) for an integer s >= 1.
Real upper_gamma_int(long s, const Real& x) {
    Real sum(0), t(1);
    for (long j = 0; j < s; ++j) {
        if (j > 0) t = t * x / Real(j);
        sum += t;
    }
    return factorial_real(s - 1) * mp::exp(-x) * sum;
}

struct GaussLegendre {
    std::vector<Real> nodes; // on [-1, 1]
    std::vector<Real> weights;
};

const GaussLegendre& gauss_legendre(size_t n) {
    static std::mutex mu;
    static std::map<std::pair<size_t, long>, GaussLegendre> cache;
    long prec = mp::working_precision();
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GaussLegendre g;
    Real pi = Real::pi();
    Real eps = mp::ldexp(Real(1), -prec + 8);
    for (size_t i = 1; i <= n; ++i) {
        Real x = mp::cos(pi * Real(4.0 * i - 1) / Real(4.0 * n + 2));
        Real dp;
        for (int iter = 0; iter < 200; ++iter) {
            Real p0(1), p1 = x;
            for (size_t k = 2; k <= n; ++k) {
                Real p2 = (Real(static_cast<long>(2 * k - 1)) * x * p1 - Real(static_cast<long>(k - 1)) * p0) /
                          Real(static_cast<long>(k));
                p0 = p1;
                p1 = p2;
            }
            dp = Real(static_cast<long>(n)) * (x * p1 - p0) / (x * x - Real(1));
            Real dx = p1 / dp;
            x -= dx;
            if (mp::abs(dx) < eps) break;
        }
        // recompute the derivative at the converged node
        Real p0(1), p1 = x;
        for (size_t k = 2; k <= n; ++k) {
            Real p2 = (Real(static_cast<long>(2 * k - 1)) * x * p1 - Real(static_cast<long>(k - 1)) * p0) /
                      Real(static_cast<long>(k));
            p0 = p1;
            p1 = p2;
        }
        dp = Real(static_cast<long>(n)) * (x * p1 - p0) / (x * x - Real(1));
        g.nodes.push_back(x);
        g.weights.push_back(Real(2) / ((Real(1) - x * x) * dp * dp));
    }
    return cache.emplace(key, std::move(g)).first->second;
}

// xi(s) = pi^(-s/2) Gamma(s/2) zeta(s) for an integer s >= 2.
Real completed_zeta(long s) {
    Real pi = Real::pi();
    return mp::pow(pi, Real(-s) / Real(2)) * mp::gamma(Real(s) / Real(2)) * mp::zeta(s);
}

// Data for the nonconstant Fourier terms of E(z, m): coefficient of
// e^(-2 pi k y) y^(-j) is coef[k] * c_j (4 pi k)^(-j).
struct EisensteinData {
    int m = 0;
    Real phi; // constant term coefficient of y^(1-m)
    std::vector<Real> coef; // index k >= 1
    std::vector<Real> cj;
};

EisensteinData eisenstein_data(int m, size_t kmax) {
    require(m >= 2, "real-analytic Eisenstein series needs an integer m >= 2");
    EisensteinData E;
    E.m = m;
    E.phi = completed_zeta(2 * m - 1) / completed_zeta(2 * m);
    Real inv_xi = Real(1) / completed_zeta(2 * m);
    E.coef.assign(kmax + 1, Real(0));
    for (size_t k = 1; k <= kmax; ++k) {
        // k^(m-1) sigma_{1-2m}(k) = sigma_{2m-1}(k) k^(-m)
        Real s(qexp::sigma(2 * m - 1, static_cast<long>(k)));
        E.coef[k] = inv_xi * s / rpow(Real(static_cast<long>(k)), m);
    }
    for (int j = 0; j < m; ++j) {
        Integer c = exactnum::factorial(m - 1 + j) / (exactnum::factorial(j) * exactnum::factorial(m - 1 - j));
        E.cj.push_back(Real(c));
    }
    return E;
}

size_t eisenstein_terms(double y_min, long bits) {
    return static_cast<size_t>(std::ceil((bits + 40) * std::log(2.0) / (2 * M_PI * y_min))) + 2;
}

Real eisenstein_eval(const EisensteinData& E, const Real& x, const Real& y) {
    int m = E.m;
    Real pi = Real::pi();
    Real val = rpow(y, m) + E.phi * rpow(y, 1 - m);
    Real c1 = mp::cos(Real(2) * pi * x);
    Real ck_prev(1), ck = c1; // cos(2 pi k x) by the Chebyshev recurrence
    Real ey = mp::exp(Real(-2) * pi * y), ek = ey;
    for (size_t k = 1; k < E.coef.size(); ++k) {
        if (k > 1) {
            Real nxt = Real(2) * c1 * ck - ck_prev;
            ck_prev = ck;
            ck = nxt;
            ek *= ey;
        }
        Real inner(0);
        Real t(1), step = Real(1) / (Real(4) * pi * Real(static_cast<long>(k)) * y);
        for (int j = 0; j < m; ++j) {
            if (j > 0) t *= step;
            inner += E.cj[j] * t;
        }
        val += Real(2) * ck * E.coef[k] * ek * inner;
    }
    return val;
}

// Integral over the part of the fundamental domain with y >= 1, where the
// x-integration is exact.
Real upper_part(const EmbeddedForm& f, const EisensteinData* E) {
    Real pi = Real::pi();
    int w = f.weight;
    size_t N = f.a.size();
    Real total(0);
    for (size_t n = 1; n < N; ++n) {
        if (f.a[n].is_zero()) continue;
        Real c = Real(4) * pi * Real(static_cast<long>(n));
        Real a2 = f.a[n] * f.a[n];
        if (!E) {
            total += a2 * tail_integral(w - 2, c);
        } else {
            total += a2 * (tail_integral(w - 2 + E->m, c) + E->phi * tail_integral(w - 1 - E->m, c));
        }
    }
    if (!E) return total;
    Real cross(0);
    for (size_t a = 1; a < N; ++a)
        for (size_t b = a + 1; b < N; ++b) {
            size_t k = b - a;
            if (k >= E->coef.size()) continue;
            Real prod = f.a[a] * f.a[b];
            if (prod.is_zero()) continue;
            Real c = Real(2) * pi * Real(static_cast<long>(a + b + k));
            Real inner(0);
            Real step = Real(1) / (Real(4) * pi * Real(static_cast<long>(k)));
            Real t(1);
            for (int j = 0; j < E->m; ++j) {
                if (j > 0) t *= step;
                inner += E->cj[j] * t * tail_integral(w - 2 - j, c);
            }
            cross += prod * E->coef[k] * inner;
        }
    return total + Real(2) * cross;
}

// Integrals over {0 <= x <= 1/2, sqrt(1 - x^2) <= y <= 1}, doubled by the
// symmetry x -> -x, with an n x n Gauss–Legendre rule. Entry 2i is the
// plain integral of form i, entry 2i+1 the one weighted by E (when given).
std::vector<Real> lower_part(const std::vector<EmbeddedForm>& fs, const EisensteinData* E, size_t n) {
    const GaussLegendre& g = gauss_legendre(n);
    Real pi = Real::pi();
    Real half(0.5), quarter(0.25);
    int w = fs.front().weight;
    size_t N = 0;
    for (auto& f : fs) N = std::max(N, f.a.size());
    std::vector<Real> total(2 * fs.size(), Real(0)), inner(2 * fs.size());
    std::vector<Complex> qp(N);
    for (size_t i = 0; i < n; ++i) {
        Real x = quarter * (g.nodes[i] + Real(1));
        Real wx = quarter * g.weights[i];
        Real y0 = mp::sqrt(Real(1) - x * x);
        Real hy = (Real(1) - y0) * half;
        Real cx = mp::cos(Real(2) * pi * x), sx = mp::sin(Real(2) * pi * x);
        for (auto& v : inner) v = 0;
        for (size_t j = 0; j < n; ++j) {
            Real y = y0 + hy * (g.nodes[j] + Real(1));
            Real r = mp::exp(Real(-2) * pi * y);
            Complex q(r * cx, r * sx);
            qp[1] = q;
            for (size_t k = 2; k < N; ++k) qp[k] = qp[k - 1] * q;
            Real yw = rpow(y, w - 2);
            Real e = E ? eisenstein_eval(*E, x, y) : Real(0);
            for (size_t t = 0; t < fs.size(); ++t) {
                Complex acc;
                for (size_t k = 1; k < fs[t].a.size(); ++k) {
                    if (fs[t].a[k].is_zero()) continue;
                    acc.re += fs[t].a[k] * qp[k].re;
                    acc.im += fs[t].a[k] * qp[k].im;
                }
                Real val = acc.norm2() * yw * g.weights[j];
                if (E) inner[2 * t + 1] += val * e;
                inner[2 * t] += val;
            }
        }
        for (size_t t = 0; t < inner.size(); ++t) total[t] += wx * hy * inner[t];
    }
    for (auto& v : total) v *= Real(2);
    return total;
}

// Node count for the lower region; the integrand is entire there and the
// rule gains about four bits per node.
size_t quadrature_nodes(long bits) { return static_cast<size_t>(16 + bits / 4); }

struct DomainIntegrals {
    std::vector<Ball> plain;    // <f, f> per form
    std::vector<Ball> weighted; // integral against E(z, m) per form, when requested
};

DomainIntegrals domain_integrals(const std::vector<EmbeddedForm>& fs, const EisensteinData* E) {
    long bits = mp::working_precision();
    for (auto& f : fs)
        require(f.a.size() >= coefficients_needed(f.weight, std::sqrt(3.0) / 2, bits),
                "insufficient q-expansion precision for the fundamental-domain integral");
    size_t n = quadrature_nodes(bits);
    auto lo1 = lower_part(fs, E, n);
    auto lo2 = lower_part(fs, E, n + n / 4);
    DomainIntegrals out;
    auto ball = [&](const Real& up, const Real& a, const Real& b) {
        Real mid = up + b;
        Real rad = mp::abs(b - a) + mp::ldexp(mp::abs(mid), -bits + 16);
        return Ball(mid, rad);
    };
    for (size_t t = 0; t < fs.size(); ++t) {
        out.plain.push_back(ball(upper_part(fs[t], nullptr), lo1[2 * t], lo2[2 * t]));
        if (E) out.weighted.push_back(ball(upper_part(fs[t], E), lo1[2 * t + 1], lo2[2 * t + 1]));
    }
    return out;
}

EisensteinData eisenstein_for_domain(int m) {
    return eisenstein_data(m, eisenstein_terms(std::sqrt(3.0) / 2, mp::working_precision()));
}

// Gamma_C(m) Gamma_C(m+w-1) / (Gamma(m+w-1) (4 pi)^-(m+w-1)) * zeta(2m) / zeta(m)
Real adjoint_normalizer(int w, int m) {
    Real pi = Real::pi();
    Real gm = Real(2) * factorial_real(m - 1) / rpow(Real(2) * pi, m);
    return gm * Real(2) * mp::ldexp(Real(1), w + m - 1) * mp::zeta(2 * m) / mp::zeta(m);
}

} // namespace

std::vector<Real> real_embeddings(const FieldPtr& K) {
    const auto& h = K->minpoly();
    int d = h.degree();
    std::vector<Real> roots;
    if (d == 1) {
        roots.push_back(Real(Rational(-h.coeff(0))));
        return roots;
    }
    if (d == 2) {
        Real b(h.coeff(1)), c(h.coeff(0));
        Real disc = b * b - Real(4) * c;
        require(disc > Real(0), "Hecke field is not totally real");
        Real s = mp::sqrt(disc);
        roots.push_back((-b - s) / Real(2));
        roots.push_back((-b + s) / Real(2));
        return roots;
    }
    // Durand–Kerner seeds in long double, then Newton at the working precision
    using C = std::complex<long double>;
    std::vector<long double> co(d + 1);
    for (int i = 0; i <= d; ++i) co[i] = h.coeff(i).get_d();
    auto eval = [&](C z) {
        C r = co[d];
        for (int i = d - 1; i >= 0; --i) r = r * z + co[i];
        return r;
    };
    std::vector<C> z(d);
    for (int i = 0; i < d; ++i) z[i] = std::pow(C(0.4L, 0.9L), i);
    long double scale = 1;
    for (int i = 0; i < d; ++i) scale = std::max(scale, std::fabs(co[i]));
    for (int i = 0; i < d; ++i) z[i] *= scale;
    for (int it = 0; it < 2000; ++it) {
        for (int i = 0; i < d; ++i) {
            C den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            z[i] -= eval(z[i]) / den;
        }
    }
    for (auto& r : z) {
        require(std::fabs(r.imag()) < 1e-6L * std::max(1.0L, std::fabs(r.real())), "Hecke field is not totally real");
        Real x(static_cast<double>(r.real()));
        for (int it = 0; it < 200; ++it) {
            Real p(h.coeff(d)), dp(0);
            for (int i = d - 1; i >= 0; --i) {
                dp = dp * x + p;
                p = p * x + Real(h.coeff(i));
            }
            Real dx = p / dp;
            x -= dx;
            if (dx.is_zero() || mp::abs(dx) < mp::ldexp(mp::abs(x) + Real(1), -mp::working_precision() + 4)) break;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end(), [](const Real& a, const Real& b) { return a < b; });
    return roots;
}

Real embed(const NFElem& x, const Real& root) {
    const auto& c = x.coords();
    Real r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * root + Real(c[i]);
    return r;
}

size_t coefficients_needed(int w, double y_min, long bits) {
    // |a_n| <= n^(w/2) bounds the tail term by term
    double target = -(bits + 20) * std::log(2.0);
    size_t n = 1;
    while (0.5 * w * std::log(static_cast<double>(n)) - 2 * M_PI * y_min * n > target ||
           n < static_cast<size_t>(w))
        ++n;
    return n + 1;
}

EmbeddedForm embed_form(const forms1::PrimitiveForm& f, size_t embedding, size_t count) {
    if (count == 0) count = coefficients_needed(f.weight, std::sqrt(3.0) / 2, mp::working_precision());
    const forms1::PrimitiveForm* src = &f;
    std::vector<forms1::PrimitiveForm> more;
    if (f.precision() < count) {
        more = forms1::eigenforms(f.weight, count);
        src = nullptr;
        for (auto& g : more)
            if (g.coeff(2).coords() == f.coeff(2).coords() && g.coeff(3).coords() == f.coeff(3).coords()) src = &g;
        require(src != nullptr, "could not extend the q-expansion of the form");
    }
    auto roots = real_embeddings(f.hecke_field);
    require(embedding < roots.size(), "embedding index out of range");
    EmbeddedForm e;
    e.weight = f.weight;
    e.a.reserve(count);
    for (size_t n = 0; n < count; ++n) e.a.push_back(embed(src->coeff(n), roots[embedding]));
    return e;
}

Ball hecke_L(const EmbeddedForm& f, int l, long D) {
    int w = f.weight;
    require(l >= 1 && l <= w - 1, "L-value outside the critical strip");
    require(D == 1 || exactnum::is_fundamental_discriminant(Integer(D)), "twist needs a fundamental discriminant");
    Real pi = Real::pi();
    long M = D * D;
    Real sqM = mp::sqrt(Real(M));
    size_t N = f.a.size();
    long bits = mp::working_precision();
    double need = (bits + 20) * std::log(2.0) * std::sqrt(static_cast<double>(M)) / (2 * M_PI * 0.8) + w;
    require(static_cast<double>(N) >= need, "insufficient q-expansion precision for the L-value");
    std::vector<Real> b(N, Real(0));
    for (size_t n = 1; n < N; ++n) {
        int chi = D == 1 ? 1 : exactnum::kronecker(D, static_cast<long>(n));
        if (chi != 0) b[n] = chi > 0 ? f.a[n] : -f.a[n];
    }
    Real iw = (w / 2) % 2 ? Real(-1) : Real(1);
    auto pieces = [&](const Real& A, Real& s1, Real& s2) {
        s1 = 0;
        s2 = 0;
        for (size_t n = 1; n < N; ++n) {
            if (b[n].is_zero()) continue;
            Real tpn = Real(2) * pi * Real(static_cast<long>(n));
            s1 += b[n] * upper_gamma_int(l, tpn * A) / rpow(tpn, l);
            s2 += b[n] * upper_gamma_int(w - l, tpn / (Real(M) * A)) / rpow(tpn, w - l);
        }
        s2 *= iw * mp::pow(Real(M), Real(w) / Real(2) - Real(l));
    };
    Real A1 = Real(1) / sqM, A2 = Real(5) / (Real(4) * sqM);
    Real a1, b1, a2, b2;
    pieces(A1, a1, b1);
    pieces(A2, a2, b2);
    // root number: the value must not depend on the splitting point
    Real plus = mp::abs((a1 + b1) - (a2 + b2)), minus = mp::abs((a1 - b1) - (a2 - b2));
    Real eps = plus <= minus ? Real(1) : Real(-1);
    Real v1 = a1 + eps * b1, v2 = a2 + eps * b2;
    Real scale = rpow(Real(2) * pi, l) / factorial_real(l - 1);
    Real mid = v1 * scale;
    Real rad = mp::abs(v1 - v2) * mp::abs(scale) + mp::ldexp(mp::abs(mid), -bits + 16);
    return Ball(mid, rad);
}

Real eisenstein_real_analytic(const Real& x, const Real& y, int m) {
    double yd = std::max(0.1, y.to_double());
    EisensteinData E = eisenstein_data(m, eisenstein_terms(yd, mp::working_precision()));
    return eisenstein_eval(E, x, y);
}

Ball petersson_numeric(const EmbeddedForm& f) { return domain_integrals({f}, nullptr).plain[0]; }

Ball rankin_selberg_integral(const EmbeddedForm& f, int m) {
    require(m >= 2 && m <= f.weight - 1, "Rankin–Selberg point out of range");
    EisensteinData E = eisenstein_for_domain(m);
    return domain_integrals({f}, &E).weighted[0];
}

namespace {

// integral over [1, oo) of y^(s-1) e^(-c y) dy = c^-s Gamma(s, c), s = m + 1/2
Real tail_integral_half(long m, const Real& c) {
    Real sc = mp::sqrt(c);
    Real erfc;
    mpfr_erfc(erfc.raw(), sc.raw(), MPFR_RNDN);
    Real g = mp::sqrt(Real::pi()) * erfc; // Gamma(1/2, c)
    Real t(0.5);
    Real ec = mp::exp(-c);
    for (long i = 0; i < m; ++i) {
        g = t * g + mp::pow(c, t) * ec;
        t += Real(1);
    }
    return g / mp::pow(c, t);
}

Real series_norm2(const std::vector<Real>& a, const Complex& q, std::vector<Complex>& qp) {
    Complex acc(a.empty() ? Real(0) : a[0]);
    qp[0] = Complex(Real(1));
    for (size_t k = 1; k < a.size(); ++k) {
        qp[k] = qp[k - 1] * q;
        if (a[k].is_zero()) continue;
        acc.re += a[k] * qp[k].re;
        acc.im += a[k] * qp[k].im;
    }
    return acc.norm2();
}

// lower region {0 <= x <= 1/2, sqrt(1 - x^2) <= y <= 1}, doubled
Real halfint_lower(const HalfIntegralCharts& g, size_t n) {
    const GaussLegendre& gl = gauss_legendre(n);
    Real pi = Real::pi();
    Real half(0.5), quarter(0.25);
    Real k = Real(g.lambda) + half;
    Real rho(g.half_offset);
    Real scale0 = mp::pow(Real(4), -k);
    size_t N = std::max({g.infinity.size(), g.zero.size(), g.half.size()});
    std::vector<Complex> qp(N + 1);
    auto q_at = [&](const Real& x, const Real& y) {
        Real r = mp::exp(Real(-2) * pi * y);
        return Complex(r * mp::cos(Real(2) * pi * x), r * mp::sin(Real(2) * pi * x));
    };
    Real total(0);
    for (size_t i = 0; i < n; ++i) {
        Real x = quarter * (gl.nodes[i] + Real(1));
        Real wx = quarter * gl.weights[i];
        Real y0 = mp::sqrt(Real(1) - x * x);
        Real hy = (Real(1) - y0) * half;
        Real inner(0);
        for (size_t j = 0; j < n; ++j) {
            Real y = y0 + hy * (gl.nodes[j] + Real(1));
            Real v = series_norm2(g.infinity, q_at(x, y), qp);
            Real v0(0);
            for (int t = 0; t < 4; ++t) v0 += series_norm2(g.zero, q_at((x + Real(t)) * quarter, y * quarter), qp);
            v += scale0 * v0;
            v += mp::exp(Real(-4) * pi * rho * y) * series_norm2(g.half, q_at(x + half, y), qp);
            inner += v * mp::pow(y, k - Real(2)) * gl.weights[j];
        }
        total += wx * hy * inner;
    }
    return Real(2) * total;
}

} // namespace

Ball petersson_halfint(const HalfIntegralCharts& g) {
    require(g.lambda >= 2, "petersson_halfint: lambda must be at least 2");
    long bits = mp::working_precision();
    Real pi = Real::pi();
    Real k = Real(g.lambda) + Real(0.5);
    const long m = g.lambda - 1; // y^(k-2) = y^(s-1) with s = m + 1/2
    Real tol = mp::ldexp(Real(1), -bits / 2);
    require(g.zero.empty() || mp::abs(g.zero[0]) < tol, "petersson_halfint: form does not vanish at the cusp 0");
    require(g.infinity.empty() || mp::abs(g.infinity[0]) < tol, "petersson_halfint: form does not vanish at oo");
    // the truncated expansions must reach 2^-bits at the lowest points used
    auto enough = [&](size_t count, double rate) { return rate * static_cast<double>(count) > (bits + 20) * std::log(2.0) + 4 * g.lambda; };
    require(enough(g.infinity.size(), 2 * M_PI * std::sqrt(3.0) / 2) && enough(g.zero.size(), 2 * M_PI * std::sqrt(3.0) / 8) &&
                enough(g.half.size(), 2 * M_PI * std::sqrt(3.0) / 2),
            "petersson_halfint: insufficient q-expansion precision");
    Real up(0);
    for (size_t n = 1; n < g.infinity.size(); ++n)
        if (!g.infinity[n].is_zero())
            up += g.infinity[n] * g.infinity[n] * tail_integral_half(m, Real(4) * pi * Real(static_cast<long>(n)));
    Real up0(0);
    for (size_t n = 1; n < g.zero.size(); ++n)
        if (!g.zero[n].is_zero()) up0 += g.zero[n] * g.zero[n] * tail_integral_half(m, pi * Real(static_cast<long>(n)));
    up += Real(4) * mp::pow(Real(4), -k) * up0;
    Real rho(g.half_offset);
    for (size_t n = 0; n < g.half.size(); ++n)
        if (!g.half[n].is_zero())
            up += g.half[n] * g.half[n] * tail_integral_half(m, Real(4) * pi * (Real(static_cast<long>(n)) + rho));
    size_t nodes = quadrature_nodes(bits);
    Real lo1 = halfint_lower(g, nodes), lo2 = halfint_lower(g, nodes + nodes / 4);
    Real mid = (up + lo2) / Real(6);
    Real rad = mp::abs(lo2 - lo1) / Real(6) + mp::ldexp(mp::abs(mid), -bits + 16);
    return Ball(mid, rad);
}

std::vector<NFElem> adjoint_local_factor(const NFElem& ap, long p, int w) {
    const FieldPtr& K = ap.field();
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(w - 1));
    NFElem e1 = ap * ap * exactnum::make_rational(1, pk) - K->from_rational(2); // beta^2 + beta^-2
    NFElem one = K->one();
    // (1 - X)(1 - e1 X + X^2)
    return {one, -(e1 + one), e1 + one, -one};
}

Ball L_adjoint_numeric(const EmbeddedForm& f, int m) {
    int w = f.weight;
    Ball I = rankin_selberg_integral(f, m);
    Real pi = Real::pi();
    // I(m) = Gamma(w+m-1) (4 pi)^-(w+m-1) zeta(m) L(m, Ad) / zeta(2m)
    Real c = mp::zeta(2 * m) * rpow(Real(4) * pi, w + m - 1) / (factorial_real(w + m - 2) * mp::zeta(m));
    return I * Ball(c);
}

std::vector<Ball> adjoint_normalized_numeric(const std::vector<EmbeddedForm>& fs, int m) {
    require(!fs.empty(), "no forms given");
    int w = fs.front().weight;
    require(m >= 2 && m <= w - 1, "Rankin–Selberg point out of range");
    EisensteinData E = eisenstein_for_domain(m);
    DomainIntegrals d = domain_integrals(fs, &E);
    Ball c(adjoint_normalizer(w, m));
    std::vector<Ball> out;
    for (size_t t = 0; t < fs.size(); ++t) out.push_back(c * d.weighted[t] / d.plain[t]);
    return out;
}

Ball adjoint_normalized_numeric(const EmbeddedForm& f, int m) { return adjoint_normalized_numeric(std::vector<EmbeddedForm>{f}, m)[0]; }

bool recognize_rational(const Real& x, const Integer& max_den, const Real& tol, Rational& out) {
    // convergents of the continued fraction of x
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real r = x;
    for (int it = 0; it < 10000; ++it) {
        Integer a;
        {
            Real fl = r;
            mpfr_floor(fl.raw(), r.raw());
            a = fl.round();
        }
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational cand(p1, q1);
        cand.canonicalize();
        if (mp::abs(Real(cand) - x) <= tol) {
            out = cand;
            return true;
        }
        Real frac = r - Real(a);
        if (frac.is_zero()) break;
        r = Real(1) / frac;
    }
    return false;
}

NFElem reconstruct(const FieldPtr& K, const std::vector<Real>& values) {
    auto roots = real_embeddings(K);
    size_t d = roots.size();
    require(values.size() == d, "one value per real embedding is required");
    // solve the Vandermonde system for power-basis coordinates
    std::vector<std::vector<Real>> A(d, std::vector<Real>(d + 1));
    for (size_t i = 0; i < d; ++i) {
        Real t(1);
        for (size_t j = 0; j < d; ++j) {
            A[i][j] = t;
            t *= roots[i];
        }
        A[i][d] = values[i];
    }
    for (size_t c = 0; c < d; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < d; ++r)
            if (mp::abs(A[r][c]) > mp::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (size_t r = 0; r < d; ++r) {
            if (r == c) continue;
            Real fct = A[r][c] / A[c][c];
            for (size_t k = c; k <= d; ++k) A[r][k] -= fct * A[c][k];
        }
    }
    long bits = mp::working_precision();
    Real scale(1);
    for (auto& v : values) scale = mp::max(scale, mp::abs(v));
    Real tol = mp::ldexp(scale, -(bits * 3) / 4);
    Integer max_den = 1;
    max_den <<= static_cast<unsigned long>(bits / 3);
    std::vector<Rational> coords;
    for (size_t c = 0; c < d; ++c) {
        Real x = A[c][d] / A[c][c];
        Rational q;
        if (!recognize_rational(x, max_den, tol, q))
            fail(ErrorKind::insufficient_precision, "no rational of bounded height matches the coordinate");
        coords.push_back(q);
    }
    return K->element(coords);
}

AdjointValue adjoint_normalized(const forms1::PrimitiveForm& f, int m, long bits) {
    require(m % 2 == 1, "adjoint values are taken at odd arguments");
    require(m >= 3 && m <= f.weight - 1, "adjoint argument out of range");
    require(bits >= 64, "working precision below 64 bits");
    AdjointValue out;
    out.form = f;
    out.m = m;

    struct Level {
        long bits;
        std::vector<Ball> numeric;
        std::optional<NFElem> value;
    };
    auto evaluate = [&](long b) {
        Level lv{b, {}, std::nullopt};
        mp::WorkingPrecision wp(b);
        std::vector<EmbeddedForm> fs;
        for (size_t e = 0; e < static_cast<size_t>(f.hecke_field->degree()); ++e) fs.push_back(embed_form(f, e));
        lv.numeric = adjoint_normalized_numeric(fs, m);
        std::vector<Real> vals;
        for (auto& v : lv.numeric) vals.push_back(v.mid());
        try {
            lv.value = reconstruct(f.hecke_field, vals);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::insufficient_precision) throw;
        }
        return lv;
    };

    // bits against 2 bits; on failure 2 bits against 4 bits, then give up
    Level lo = evaluate(bits);
    for (int round = 0; round < 2; ++round) {
        Level hi = evaluate(2 * lo.bits);
        if (lo.value && hi.value && *lo.value == *hi.value) {
            out.value = *lo.value;
            out.precision_bits = lo.bits;
            out.numeric = lo.numeric;
            out.verified = true;
            return out;
        }
        lo = std::move(hi);
    }
    if (!lo.value)
        fail(ErrorKind::insufficient_precision, "adjoint value not recognized in the Hecke field");
    out.value = *lo.value;
    out.precision_bits = lo.bits;
    out.numeric = lo.numeric;
    out.verified = false;
    return out;
}

} // namespace dii::lser
