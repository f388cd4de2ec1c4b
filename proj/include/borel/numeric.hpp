#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>

namespace borel {

using ExactRational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using BigReal = boost::multiprecision::mpfr_float;

/// Smallest working precision accepted anywhere in the library.
inline constexpr unsigned kMinPrecisionBits = 128;
inline constexpr unsigned kDefaultPrecisionBits = 320;

/// Sets the process-wide working precision used for every BigReal created
/// afterwards. Values below kMinPrecisionBits are raised to it.
void set_precision_bits(unsigned bits);
unsigned precision_bits();

/// Restores the previous working precision on scope exit.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned previous_;
};

/// 2^(1-bits) at the current working precision.
BigReal unit_roundoff();

BigReal to_real(const ExactRational& q);
BigReal parse_real(const std::string& text);

/// "num/den" (or "num" for integers); exact and decimal-free.
std::string rational_to_string(const ExactRational& q);
ExactRational parse_rational(const std::string& text);

/// Fixed decimal rendering with `digits` significant figures.
std::string to_string(const BigReal& x, int digits);
std::string to_string(const BigReal& x);

double to_double(const BigReal& x);

BigReal pi();

/// Minimal complex arithmetic over BigReal; std::complex is only specified
/// for the built-in floating types.
struct Complex {
    BigReal re;
    BigReal im;

    Complex() : re(0), im(0) {}
    Complex(BigReal r, BigReal i = BigReal(0)) : re(std::move(r)), im(std::move(i)) {}

    Complex conj() const { return {re, -im}; }
    BigReal abs() const;
    BigReal arg() const;

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const BigReal& s) { return {a.re * s, a.im * s}; }
};

Complex exp(const Complex& z);
Complex log(const Complex& z);
/// Principal branch.
Complex pow(const Complex& z, const BigReal& exponent);

}  // namespace borel
