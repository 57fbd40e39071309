#pragma once

// Truncated q-expansions over Z, Q or a number field.

#include <string>
#include <vector>

#include "dii/exactnum.hpp"

namespace dii::qexp {

using exactnum::FieldPtr;
using exactnum::Integer;
using exactnum::NFElem;
using exactnum::Rational;

// Coefficients a_0 .. a_{N-1}; the precision is N.
template <class T>
struct Series {
    std::vector<T> c;
    size_t precision() const { return c.size(); }
    const T& operator[](size_t i) const { return c[i]; }
    T& operator[](size_t i) { return c[i]; }
};

using ZSeries = Series<Integer>;
using QSeries = Series<Rational>;

// Series over a number field; all coefficients share one parent field.
struct KSeries {
    FieldPtr field;
    std::vector<NFElem> c;
    size_t precision() const { return c.size(); }
    const NFElem& operator[](size_t i) const { return c[i]; }
};

ZSeries mul(const ZSeries& a, const ZSeries& b);
ZSeries pow(const ZSeries& a, int e, size_t prec);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries add(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const Rational& s);
QSeries truncate(const QSeries& a, size_t prec);
QSeries to_q(const ZSeries& a);
bool is_zero(const QSeries& a);

KSeries to_field(const QSeries& a, const FieldPtr& K);
KSeries add(const KSeries& a, const KSeries& b);
KSeries scale(const KSeries& a, const NFElem& s);
// Linear combination sum coeffs[i] * basis[i], truncated to prec.
KSeries combine(const std::vector<QSeries>& basis, const std::vector<NFElem>& coeffs, size_t prec);

// sigma_k(n) for n >= 1.
Integer sigma(long k, long n);

// E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n for even w >= 4.
QSeries eisenstein(int w, size_t prec);
// Delta = q prod (1 - q^n)^24.
ZSeries delta(size_t prec);
// theta = sum_{n in Z} q^{n^2}.
ZSeries theta(size_t prec);
// Weight-2 form on Gamma0(4): sum over odd m of sigma_1(m) q^m.
ZSeries f2_generator(size_t prec);

std::string to_string(const QSeries& a, size_t terms = 10);
std::string to_string(const KSeries& a, size_t terms = 10);

} // namespace dii::qexp
