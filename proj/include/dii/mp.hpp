#pragma once

// Thin RAII wrappers over MPFR: a real type whose precision follows the
// thread's working precision, a complex pair, and a midpoint-radius ball.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace dii::mp {

// Bits of precision used for newly created values on this thread.
long working_precision();

class WorkingPrecision {
public:
    explicit WorkingPrecision(long bits);
    ~WorkingPrecision();
    WorkingPrecision(const WorkingPrecision&) = delete;
    WorkingPrecision& operator=(const WorkingPrecision&) = delete;

private:
    long saved_;
};

class Real {
public:
    Real();
    Real(int v);
    Real(long v);
    Real(double v);
    Real(const mpz_class& v);
    Real(const mpq_class& v);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real pi();
    static Real from_string(const std::string& s);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits = 30) const;
    // Exact conversion of the binary value to a rational.
    mpq_class to_rational() const;
    // Nearest integer.
    mpz_class round() const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    long exponent() const; // binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for 0

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

private:
    mpfr_t v_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real gamma(const Real& x);
Real zeta(long n);
Real max(const Real& a, const Real& b);
// 2^e
Real ldexp(const Real& x, long e);

struct Complex {
    Real re;
    Real im;
    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& s);
Complex operator/(const Complex& a, const Complex& b);
Real abs(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z); // principal branch
Complex sqrt(const Complex& z); // principal branch
Complex pow(const Complex& z, long n);

// Midpoint-radius enclosure; radius kept at 64 bits and rounded upward.
class Ball {
public:
    Ball() = default;
    Ball(Real mid, Real rad = Real(0));
    static Ball exact(const mpq_class& q);

    const Real& mid() const { return mid_; }
    const Real& rad() const { return rad_; }
    bool contains(const Real& x) const;
    bool contains(const mpq_class& q) const;
    bool positive() const { return mid_ - rad_ > Real(0); }
    // Relative radius |rad/mid| as a double (inf for zero midpoint).
    double relative_radius() const;
    // Adds a nonnegative error term to the radius.
    Ball widened(const Real& extra) const;
    std::string to_string(int digits = 25) const;

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);

private:
    Real mid_;
    Real rad_;
};

} // namespace dii::mp
