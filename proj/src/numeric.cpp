#include "borel/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace borel {

namespace {

// boost's variable-precision mpfr_float is configured in decimal digits.
unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

void set_precision_bits(unsigned bits) {
    if (bits < kMinPrecisionBits) bits = kMinPrecisionBits;
    BigReal::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() {
    BigReal probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : previous_(BigReal::default_precision()) {
    set_precision_bits(bits);
}

PrecisionGuard::~PrecisionGuard() { BigReal::default_precision(previous_); }

BigReal unit_roundoff() {
    BigReal u(1);
    return ldexp(u, 1 - static_cast<int>(precision_bits()));
}

BigReal to_real(const ExactRational& q) { return BigReal(q); }

BigReal parse_real(const std::string& text) {
    try {
        return BigReal(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a real number: '" + text + "'");
    }
}

std::string rational_to_string(const ExactRational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

ExactRational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return ExactRational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return ExactRational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an exact rational: '" + text + "'");
    }
}

std::string to_string(const BigReal& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

std::string to_string(const BigReal& x) {
    return to_string(x, static_cast<int>(precision_bits() * 0.30103));
}

double to_double(const BigReal& x) { return x.convert_to<double>(); }

BigReal pi() {
    BigReal p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

BigReal Complex::abs() const { return hypot(re, im); }

BigReal Complex::arg() const { return atan2(im, re); }

Complex operator/(const Complex& a, const Complex& b) {
    BigReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Complex exp(const Complex& z) {
    BigReal m = boost::multiprecision::exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {boost::multiprecision::log(z.abs()), z.arg()}; }

Complex pow(const Complex& z, const BigReal& exponent) {
    if (z.re == 0 && z.im == 0) return {};
    return exp(log(z) * exponent);
}

}  // namespace borel
