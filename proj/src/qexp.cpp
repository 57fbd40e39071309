#include "dii/qexp.hpp"

#include <algorithm>

#include "dii/error.hpp"

namespace dii::qexp {

ZSeries mul(const ZSeries& a, const ZSeries& b) {
    size_t n = std::min(a.precision(), b.precision());
    ZSeries r{std::vector<Integer>(n, Integer(0))};
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < n; ++j)
            if (b.c[j] != 0) mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
    return r;
}

ZSeries pow(const ZSeries& a, int e, size_t prec) {
    require(e >= 0, "negative power of a series");
    ZSeries r{std::vector<Integer>(prec, Integer(0))};
    if (prec) r.c[0] = 1;
    ZSeries b{std::vector<Integer>(a.c.begin(), a.c.begin() + std::min(prec, a.precision()))};
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    size_t n = std::min(a.precision(), b.precision());
    QSeries r{std::vector<Rational>(n, Rational(0))};
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < n; ++j)
            if (b.c[j] != 0) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

QSeries add(const QSeries& a, const QSeries& b) {
    size_t n = std::min(a.precision(), b.precision());
    QSeries r{std::vector<Rational>(n)};
    for (size_t i = 0; i < n; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

QSeries scale(const QSeries& a, const Rational& s) {
    QSeries r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

QSeries truncate(const QSeries& a, size_t prec) {
    require(prec <= a.precision(), "cannot extend a truncated series");
    return QSeries{std::vector<Rational>(a.c.begin(), a.c.begin() + prec)};
}

QSeries to_q(const ZSeries& a) {
    QSeries r;
    r.c.reserve(a.precision());
    for (auto& x : a.c) r.c.emplace_back(x);
    return r;
}

bool is_zero(const QSeries& a) {
    return std::all_of(a.c.begin(), a.c.end(), [](const Rational& x) { return x == 0; });
}

KSeries to_field(const QSeries& a, const FieldPtr& K) {
    KSeries r{K, {}};
    for (auto& x : a.c) r.c.push_back(K->from_rational(x));
    return r;
}

KSeries add(const KSeries& a, const KSeries& b) {
    require(exactnum::same_field(a.field, b.field), "series over different fields");
    size_t n = std::min(a.precision(), b.precision());
    KSeries r{a.field, {}};
    for (size_t i = 0; i < n; ++i) r.c.push_back(a.c[i] + b.c[i]);
    return r;
}

KSeries scale(const KSeries& a, const NFElem& s) {
    KSeries r{a.field, {}};
    for (auto& x : a.c) r.c.push_back(x * s);
    return r;
}

KSeries combine(const std::vector<QSeries>& basis, const std::vector<NFElem>& coeffs, size_t prec) {
    require(basis.size() == coeffs.size() && !coeffs.empty(), "combine needs matching nonempty inputs");
    const FieldPtr& K = coeffs[0].field();
    int d = K->degree();
    KSeries r{K, {}};
    for (size_t n = 0; n < prec; ++n) {
        std::vector<Rational> acc(d, Rational(0));
        for (size_t i = 0; i < basis.size(); ++i) {
            require(n < basis[i].precision(), "basis precision too small");
            const Rational& b = basis[i].c[n];
            if (b == 0) continue;
            for (int j = 0; j < d; ++j) acc[j] += b * coeffs[i].coords()[j];
        }
        r.c.push_back(K->element(std::move(acc)));
    }
    return r;
}

Integer sigma(long k, long n) {
    require(n >= 1, "sigma needs n >= 1");
    Integer s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        s += t;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, k);
            s += t;
        }
    }
    return s;
}

QSeries eisenstein(int w, size_t prec) {
    require(w >= 4 && w % 2 == 0, "eisenstein needs even weight >= 4");
    Rational c = Rational(-2 * w) / exactnum::bernoulli(w);
    QSeries r{std::vector<Rational>(prec, Rational(0))};
    if (prec) r.c[0] = 1;
    for (size_t n = 1; n < prec; ++n) r.c[n] = c * Rational(sigma(w - 1, static_cast<long>(n)));
    return r;
}

ZSeries delta(size_t prec) {
    // prod (1 - q^n), then its 24th power shifted by one
    ZSeries e{std::vector<Integer>(prec, Integer(0))};
    if (prec) e.c[0] = 1;
    for (size_t n = 1; n < prec; ++n) {
        // multiply by (1 - q^n)
        for (size_t i = prec; i-- > n;) e.c[i] -= e.c[i - n];
    }
    ZSeries p = pow(e, 24, prec);
    ZSeries r{std::vector<Integer>(prec, Integer(0))};
    for (size_t i = 1; i < prec; ++i) r.c[i] = p.c[i - 1];
    return r;
}

ZSeries theta(size_t prec) {
    ZSeries r{std::vector<Integer>(prec, Integer(0))};
    if (prec) r.c[0] = 1;
    for (size_t n = 1; n * n < prec; ++n) r.c[n * n] += 2;
    return r;
}

ZSeries f2_generator(size_t prec) {
    ZSeries r{std::vector<Integer>(prec, Integer(0))};
    for (size_t m = 1; m < prec; m += 2) r.c[m] = sigma(1, static_cast<long>(m));
    return r;
}

std::string to_string(const QSeries& a, size_t terms) {
    std::string s;
    for (size_t i = 0; i < std::min(terms, a.precision()); ++i) {
        if (a.c[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + exactnum::to_string(a.c[i]) + ")q^" + std::to_string(i);
    }
    return s + " + O(q^" + std::to_string(std::min(terms, a.precision())) + ")";
}

std::string to_string(const KSeries& a, size_t terms) {
    std::string s;
    for (size_t i = 0; i < std::min(terms, a.precision()); ++i) {
        if (a.c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + a.c[i].to_string() + ")q^" + std::to_string(i);
    }
    return s + " + O(q^" + std::to_string(std::min(terms, a.precision())) + ")";
}

} // namespace dii::qexp
