#include "borel/gamma.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace borel {

namespace {

constexpr unsigned kGuardBits = 48;

// B_0..B_{n} via the Akiyama-Tanigawa transform, memoized.
const std::vector<ExactRational>& bernoulli_table(int n) {
    static std::mutex mutex;
    static std::vector<ExactRational> table;
    std::lock_guard lock(mutex);
    if (static_cast<int>(table.size()) <= n) {
        const int count = std::max(n + 1, 2 * static_cast<int>(table.size()) + 8);
        std::vector<ExactRational> row(static_cast<std::size_t>(count));
        table.assign(static_cast<std::size_t>(count), ExactRational(0));
        for (int m = 0; m < count; ++m) {
            row[static_cast<std::size_t>(m)] = ExactRational(1, m + 1);
            for (int j = m; j >= 1; --j) {
                row[static_cast<std::size_t>(j - 1)] =
                    ExactRational(j) * (row[static_cast<std::size_t>(j - 1)] - row[static_cast<std::size_t>(j)]);
            }
            table[static_cast<std::size_t>(m)] = row[0];
        }
        // The transform yields B_1 = +1/2.
        table[1] = ExactRational(-1, 2);
    }
    return table;
}

// Copy `x` into a value carrying the current default precision.
BigReal round_to_working(const BigReal& x) {
    BigReal r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

BigReal log_gamma_stirling(const BigReal& x, unsigned bits) {
    // Remainder after optimal truncation is ~ exp(-2 pi x).
    const double threshold = bits * std::log(2.0) / (2.0 * M_PI) + 2.0;

    BigReal z = x;
    BigReal shift_product(1);
    while (z < threshold) {
        shift_product *= z;
        z += 1;
    }

    BigReal result = (z - BigReal(0.5)) * log(z) - z + log(2 * pi()) / 2;
    const BigReal eps = ldexp(BigReal(1), -static_cast<int>(bits) - 8);
    const BigReal z2 = z * z;
    BigReal zpow = z;  // z^{2k-1}
    BigReal previous_magnitude = -1;
    for (int k = 1;; ++k) {
        const auto& b = bernoulli_table(2 * k)[static_cast<std::size_t>(2 * k)];
        BigReal term = to_real(b) / (BigReal(2 * k) * BigReal(2 * k - 1) * zpow);
        BigReal magnitude = abs(term);
        if (previous_magnitude >= 0 && magnitude > previous_magnitude) break;  // asymptotic tail
        result += term;
        if (magnitude < eps * abs(result)) break;
        previous_magnitude = magnitude;
        zpow *= z2;
    }
    return result - log(shift_product);
}

}  // namespace

ExactRational bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    return bernoulli_table(n)[static_cast<std::size_t>(n)];
}

BigReal log_gamma(const BigReal& x) {
    if (!(x > 0)) throw std::domain_error("log_gamma: argument must be positive");
    const unsigned bits = precision_bits();
    BigReal hi;
    {
        PrecisionGuard guard(bits + kGuardBits);
        BigReal xx = round_to_working(x);
        hi = log_gamma_stirling(xx, bits + kGuardBits);
    }
    return round_to_working(hi);
}

BigReal gamma(const BigReal& x) {
    if (!(x > 0)) throw std::domain_error("gamma: argument must be positive");
    const unsigned bits = precision_bits();
    BigReal hi;
    {
        PrecisionGuard guard(bits + kGuardBits);
        BigReal xx = round_to_working(x);
        hi = exp(log_gamma_stirling(xx, bits + kGuardBits));
    }
    return round_to_working(hi);
}

}  // namespace borel
