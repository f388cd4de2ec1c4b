#include "doctest.h"

#include "borel/series_gen.hpp"
#include "borel/spectrum.hpp"

#include <random>

using namespace borel;
using series::extend_w_series;

namespace {

using Poly = std::vector<ExactRational>;

// Truncated power-series helpers for the cross-expansion check.
Poly mul(const Poly& a, const Poly& b, int order) {
    Poly c(static_cast<std::size_t>(order + 1), ExactRational(0));
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// f(h(g)) with h(0) = 0.
Poly compose(const Poly& f, const Poly& h, int order) {
    Poly out(static_cast<std::size_t>(order + 1), ExactRational(0));
    Poly power(static_cast<std::size_t>(order + 1), ExactRational(0));
    power[0] = 1;
    for (int k = 0; k <= order && k < static_cast<int>(f.size()); ++k) {
        for (int i = 0; i <= order; ++i) out[i] += f[k] * power[i];
        power = mul(power, h, order);
    }
    return out;
}

// (1 - 3h/2)^{-p/2}
Poly binomial_energy(int p, int order) {
    Poly out(static_cast<std::size_t>(order + 1));
    ExactRational coef = 1;
    for (int k = 0; k <= order; ++k) {
        out[k] = coef;
        // next: coef * (p/2 + k) / (k+1) * 3/2
        coef = coef * (ExactRational(p, 2) + k) / (k + 1) * ExactRational(3, 2);
    }
    return out;
}

ExactRational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 17);
    return ExactRational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("Rayleigh-Schroedinger energy coefficients") {
    const auto e = spectrum::energy_series(6);
    REQUIRE(e.size() >= 7);
    const Poly expected = {ExactRational(1),           ExactRational(3, 4),         ExactRational(-21, 16),
                           ExactRational(333, 64),     ExactRational(-30885, 1024), ExactRational(916731, 4096),
                           ExactRational(-65518401, 32768)};
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(e[k] == expected[k]);
}

TEST_CASE("semi-classical b2 coefficients") {
    const auto b = spectrum::b2_series(6);
    REQUIRE(b.size() >= 7);
    const Poly expected = {ExactRational(1),          ExactRational(5, 8),          ExactRational(-35, 32),
                           ExactRational(2555, 512),  ExactRational(-69545, 2048),  ExactRational(4849705, 16384),
                           ExactRational(-202337485, 65536)};
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(b[k] == expected[k]);
}

TEST_CASE("b2 coefficients alternate in sign") {
    const auto b = spectrum::b2_series(100);
    REQUIRE(b.size() >= 101);
    for (int k = 1; k <= 100; ++k) CHECK((b[k] > 0) == (k % 2 == 1));
}

TEST_CASE("ODE residual vanishes for random free coefficients") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 12; ++trial) {
        const ExactRational a1 = random_rational(rng);
        const ExactRational a2 = random_rational(rng);
        const ExactRational a3 = random_rational(rng);
        const int N = 6 + trial;
        const auto w = extend_w_series(a1, a2, a3, N);
        REQUIRE(w.order() == N);
        const ExactRational E = -2 * a1;
        const ExactRational rho = 12 * a2 + 4 * a1 * a1;
        const ExactRational g = 30 * a3 + 16 * a1 * a2;
        auto a = [&](int n) { return n >= 1 && n <= N ? w.a(n) : ExactRational(0); };
        // coefficient of x^{2k} in -(W'' + W'^2) + rho x^2 + g x^4 - E
        for (int k = 0; k <= N - 1; ++k) {
            ExactRational r = -ExactRational(2 * (k + 1) * (2 * k + 1)) * a(k + 1);
            for (int m = 1; m <= k; ++m) r -= ExactRational(4 * m * (k + 1 - m)) * a(m) * a(k + 1 - m);
            if (k == 0) r -= E;
            if (k == 1) r += rho;
            if (k == 2) r += g;
            CHECK(r == 0);
        }
        CHECK(w.a(4) == -(24 * a1 * a3 + 16 * a2 * a2) / 56);
    }
}

TEST_CASE("W series is deterministic and cached transparently") {
    const auto x = extend_w_series(ExactRational(-1, 2), ExactRational(-1, 8), ExactRational(1, 3), 20);
    const auto y = extend_w_series(ExactRational(-1, 2), ExactRational(-1, 8), ExactRational(1, 3), 20);
    CHECK(x.coeffs == y.coeffs);
    const auto shorter = extend_w_series(ExactRational(-1, 2), ExactRational(-1, 8), ExactRational(1, 3), 8);
    for (int n = 1; n <= 8; ++n) CHECK(shorter.a(n) == x.a(n));
}

TEST_CASE("Bender-Wu triangularity") {
    const auto [a, e] = series::bender_wu_expand(8, 10);
    CHECK(a.get(1, 0) == ExactRational(-1, 2));
    for (int n = 1; n <= 8; ++n) {
        for (int m = 0; m < n - 1; ++m) CHECK(a.get(n, m) == 0);
        CHECK(a.get(n, n - 1) != 0);
    }
    for (int m = 0; m <= 10; ++m) CHECK(e.coeffs[m] == -2 * a.get(1, m));
}

TEST_CASE("Bender-Wu and semi-classical expansions agree order by order in g") {
    const int order = 4;
    const auto b2 = spectrum::b2_series(order);
    // g(h) = h b2(h) E(h)^3, invert for h(g) by fixed-point iteration.
    const Poly gh_over_h = mul(Poly(b2.begin(), b2.end()), binomial_energy(3, order), order);
    Poly h = {0, 1};
    for (int it = 0; it < order + 1; ++it) {
        // h = g / (gh_over_h)(h)
        const Poly denom = compose(gh_over_h, h, order);
        Poly inv(static_cast<std::size_t>(order + 1), ExactRational(0));
        inv[0] = 1 / denom[0];
        for (int k = 1; k <= order; ++k) {
            ExactRational s = 0;
            for (int j = 1; j <= k; ++j) s += denom[j] * inv[k - j];
            inv[k] = -s / denom[0];
        }
        h = mul(Poly{0, 1}, inv, order);
    }
    const Poly E = compose(binomial_energy(1, order), h, order);
    const auto rs = spectrum::energy_series(order);
    for (int k = 0; k <= order; ++k) CHECK(E[k] == rs[k]);
}

TEST_CASE("excited prefactor parity and b3 linear coefficient") {
    for (int q = 0; q <= 5; ++q) {
        const auto [c, b3] = series::excited_expand(q, q + 6, 6);
        for (const auto& [key, value] : c.entries())
            if ((key.first + q) % 2 == 1) CHECK(value == 0);
        CHECK(c.get(q, 0) == 1);
        CHECK(b3.coeffs.at(1) == ExactRational(-2 * q));
    }
    CHECK_THROWS_AS(series::excited_expand(-1, 4, 4), std::invalid_argument);
}

TEST_CASE("scalar series JSON round trip") {
    series::ScalarSeries s;
    s.variable = series::Variable::Hbar;
    const auto b = spectrum::b2_series(12);
    s.coeffs.assign(b.begin(), b.end());
    const auto back = series::scalar_series_from_json(series::to_json(s));
    CHECK(back.variable == series::Variable::Hbar);
    CHECK(back.coeffs == s.coeffs);
}
