#include "dii/mp.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace dii::mp {

namespace {
thread_local long g_precision = 256;
}

long working_precision() { return g_precision; }

WorkingPrecision::WorkingPrecision(long bits) : saved_(g_precision) { g_precision = bits; }
WorkingPrecision::~WorkingPrecision() { g_precision = saved_; }

Real::Real() { mpfr_init2(v_, g_precision); mpfr_set_zero(v_, 1); }
Real::Real(int v) { mpfr_init2(v_, g_precision); mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(long v) { mpfr_init2(v_, g_precision); mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(double v) { mpfr_init2(v_, g_precision); mpfr_set_d(v_, v, MPFR_RNDN); }
Real::Real(const mpz_class& v) { mpfr_init2(v_, g_precision); mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }
Real::Real(const mpq_class& v) { mpfr_init2(v_, g_precision); mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN); }
Real::Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}
Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::from_string(const std::string& s) {
    Real r;
    mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    std::unique_ptr<char[]> buf(new char[digits + 64]);
    mpfr_snprintf(buf.get(), digits + 64, "%.*Rg", digits, v_);
    return std::string(buf.get());
}

mpq_class Real::to_rational() const {
    mpz_class m;
    long e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class s = 1;
        s <<= e;
        q *= s;
    } else {
        mpz_class s = 1;
        s <<= -e;
        q /= s;
    }
    q.canonicalize();
    return q;
}

mpz_class Real::round() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(v_));
    mpfr_round(t, v_);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return std::numeric_limits<long>::min() / 4;
    return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) {
    if (mpfr_get_prec(v_) < g_precision) mpfr_prec_round(v_, g_precision, MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (mpfr_get_prec(v_) < g_precision) mpfr_prec_round(v_, g_precision, MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (mpfr_get_prec(v_) < g_precision) mpfr_prec_round(v_, g_precision, MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (mpfr_get_prec(v_) < g_precision) mpfr_prec_round(v_, g_precision, MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define DII_UNARY(name, fn)                 \
    Real name(const Real& x) {              \
        Real r;                             \
        fn(r.raw(), x.raw(), MPFR_RNDN);    \
        return r;                           \
    }
DII_UNARY(abs, mpfr_abs)
DII_UNARY(sqrt, mpfr_sqrt)
DII_UNARY(exp, mpfr_exp)
DII_UNARY(log, mpfr_log)
DII_UNARY(sin, mpfr_sin)
DII_UNARY(cos, mpfr_cos)
DII_UNARY(gamma, mpfr_gamma)
#undef DII_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
Real pow(const Real& x, const Real& y) {
    Real r;
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
Real pow(const Real& x, long n) {
    Real r;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
Real zeta(long n) {
    Real r;
    mpfr_zeta_ui(r.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    return r;
}
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real ldexp(const Real& x, long e) {
    Real r(x);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

Complex& Complex::operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
Complex& Complex::operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}
Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator*(Complex a, const Real& s) { a.re *= s; a.im *= s; return a; }
Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm2();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real abs(const Complex& z) {
    Real r;
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}
Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
Complex log(const Complex& z) { return {log(abs(z)), atan2(z.im, z.re)}; }
Complex sqrt(const Complex& z) {
    if (z.re.is_zero() && z.im.is_zero()) return Complex(Real(0));
    Real m = sqrt(abs(z));
    Real half = atan2(z.im, z.re) / Real(2);
    return {m * cos(half), m * sin(half)};
}
Complex pow(const Complex& z, long n) {
    Complex result(Real(1));
    Complex base = z;
    bool inv = n < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    if (inv) return Complex(Real(1)) / result;
    return result;
}

namespace {

// Upper bound for half an ulp of x at the working precision.
Real ulp_bound(const Real& x) {
    WorkingPrecision wp(64);
    if (x.is_zero()) return Real(0);
    Real r(1);
    mpfr_mul_2si(r.raw(), r.raw(), x.exponent() - x.precision(), MPFR_RNDU);
    return r;
}

Real add_up(const Real& a, const Real& b) {
    WorkingPrecision wp(64);
    Real r;
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}
Real mul_up(const Real& a, const Real& b) {
    WorkingPrecision wp(64);
    Real r;
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}
Real abs_up(const Real& a) {
    WorkingPrecision wp(64);
    Real r;
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDU);
    return r;
}

} // namespace

Ball::Ball(Real mid, Real rad) : mid_(std::move(mid)) {
    WorkingPrecision wp(64);
    rad_ = abs_up(rad);
}

Ball Ball::exact(const mpq_class& q) {
    Real m(q);
    return Ball(m, ulp_bound(m));
}

bool Ball::contains(const Real& x) const {
    Real d = abs(x - mid_);
    return d <= add_up(rad_, ulp_bound(d));
}

bool Ball::contains(const mpq_class& q) const { return contains(Real(q)); }

double Ball::relative_radius() const {
    if (mid_.is_zero()) return std::numeric_limits<double>::infinity();
    return (rad_ / abs(mid_)).to_double();
}

Ball Ball::widened(const Real& extra) const { return Ball(mid_, add_up(rad_, abs_up(extra))); }

std::string Ball::to_string(int digits) const { return mid_.to_string(digits) + " +/- " + rad_.to_string(3); }

Ball operator+(const Ball& a, const Ball& b) {
    Real m = a.mid_ + b.mid_;
    Real r = add_up(add_up(a.rad_, b.rad_), ulp_bound(m));
    return Ball(std::move(m), std::move(r));
}
Ball operator-(const Ball& a, const Ball& b) {
    Real m = a.mid_ - b.mid_;
    Real r = add_up(add_up(a.rad_, b.rad_), ulp_bound(m));
    return Ball(std::move(m), std::move(r));
}
Ball operator*(const Ball& a, const Ball& b) {
    Real m = a.mid_ * b.mid_;
    Real r = add_up(add_up(mul_up(abs_up(a.mid_), b.rad_), mul_up(abs_up(b.mid_), a.rad_)), mul_up(a.rad_, b.rad_));
    r = add_up(r, ulp_bound(m));
    return Ball(std::move(m), std::move(r));
}
Ball operator/(const Ball& a, const Ball& b) {
    // |a/b - am/bm| <= (ra + |am/bm| rb) / (|bm| - rb)
    Real m = a.mid_ / b.mid_;
    WorkingPrecision wp(64);
    Real denom;
    mpfr_sub(denom.raw(), abs(b.mid_).raw(), b.rad_.raw(), MPFR_RNDD);
    Real num = add_up(a.rad_, mul_up(abs_up(m), b.rad_));
    Real r;
    if (denom.sign() <= 0) {
        mpfr_set_inf(r.raw(), 1);
    } else {
        mpfr_div(r.raw(), num.raw(), denom.raw(), MPFR_RNDU);
    }
    r = add_up(r, ulp_bound(m));
    return Ball(std::move(m), std::move(r));
}

} // namespace dii::mp
