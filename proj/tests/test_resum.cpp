#include "doctest.h"

#include "borel/gamma.hpp"
#include "borel/resum.hpp"
#include "borel/spectrum.hpp"

using namespace borel;
using namespace borel::resum;

namespace {

// Zero-padded to `length` coefficients.
AsymptoticSeries inverse_s(std::vector<BigReal> c, std::size_t length = 0) {
    AsymptoticSeries s;
    s.coeffs = std::move(c);
    if (s.coeffs.size() < length) s.coeffs.resize(length, BigReal(0));
    return s;
}

BigReal rel(const BigReal& a, const BigReal& b) { return abs(a - b) / abs(b); }

AsymptoticSeries b2_series(int order) {
    return AsymptoticSeries::from_exact(spectrum::b2_series(order), SeriesKind::InverseS, "b2");
}

}  // namespace

TEST_CASE("constant series reproduces the truncated exponential") {
    const auto s = inverse_s({BigReal(3), 0, 0});
    const BigReal s0(2);
    const BigReal lambda(10);
    for (int P : {0, 5, 40, 80}) {
        BigReal sum(0);
        BigReal term(1);
        for (int p = 0; p <= P; ++p) {
            sum += term;
            term *= lambda * s0 / (p + 1);
        }
        const BigReal expected = 3 * exp(-lambda * s0) * sum;
        CHECK(rel(l_n(s, s0, BigReal(1), lambda, 2, P), expected) <= 16 * unit_roundoff());
    }
    CHECK(abs(l_n(s, s0, BigReal(1), lambda, 2, 120) - 3) < BigReal("1e-20"));
}

TEST_CASE("single coefficient with P = 0 is c_k e^{-lambda s0} lambda^k / k!") {
    for (int k = 0; k <= 6; ++k) {
        std::vector<BigReal> c(7, BigReal(0));
        c[k] = BigReal("1.75");
        const auto s = inverse_s(c);
        const BigReal s0("0.8");
        const BigReal lambda("3.5");
        const BigReal expected = BigReal("1.75") * exp(-lambda * s0) * pow(lambda, k) / gamma(BigReal(k + 1));
        CHECK(rel(l_n(s, s0, BigReal(1), lambda, 6, 0), expected) <= 16 * unit_roundoff());
    }
}

TEST_CASE("1/s at s0 = 2") {
    const auto s = inverse_s({BigReal(0), BigReal(1)});
    CHECK(rel(l_n(s, BigReal(2), BigReal(1), BigReal(10), 1, 60), BigReal("0.5")) < BigReal("1e-6"));
}

TEST_CASE("b2 at hbar = 0.30 at the reference alpha and lambda") {
    set_precision_bits(320);
    const auto s = b2_series(31);
    const BigReal v = l_n(s, 1 / BigReal("0.30"), BigReal("2.8555"), BigReal("13.0189"), 30, 50);
    CHECK(rel(v, BigReal("1.1392958")) < BigReal("1e-5"));
}

TEST_CASE("doubling precision leaves l_n unchanged to the working precision") {
    const auto s = b2_series(31);
    BigReal lo;
    {
        PrecisionGuard g(320);
        lo = l_n(s, 1 / BigReal("0.30"), BigReal("2.8555"), BigReal("13.0189"), 30, 50);
    }
    PrecisionGuard g(640);
    const auto s_hi = b2_series(31);
    const BigReal hi = l_n(s_hi, 1 / BigReal("0.30"), BigReal("2.8555"), BigReal("13.0189"), 30, 50);
    CHECK(abs(lo - hi) / abs(hi) < BigReal("1e-80"));
}

TEST_CASE("shift_series binomial oracle") {
    const BigReal s0("0.7");
    // 1/s -> 1/(s + s0) = sum_k (-s0)^{k-1} s^{-k}
    const auto one = shift_series(inverse_s({BigReal(0), BigReal(1)}, 13), s0, 12);
    CHECK(one.coeffs[0] == 0);
    for (int k = 1; k <= 12; ++k) CHECK(rel(one.coeffs[k], pow(-s0, k - 1)) <= 8 * unit_roundoff());
    // 1/s^2 -> sum_k (k-1) (-s0)^{k-2} s^{-k}
    const auto two = shift_series(inverse_s({BigReal(0), BigReal(0), BigReal(1)}, 13), s0, 12);
    CHECK(two.coeffs[1] == 0);
    for (int k = 2; k <= 12; ++k) CHECK(rel(two.coeffs[k], (k - 1) * pow(-s0, k - 2)) <= 8 * unit_roundoff());
    // no shift
    const auto b = b2_series(11);
    const auto same = shift_series(b, BigReal(0), 10);
    for (int k = 0; k <= 10; ++k) CHECK(same.coeffs[k] == b.coeffs[k]);
}

TEST_CASE("shifted and direct forms agree on singularity-free polynomials") {
    // f(s) = 1 + 2/s - 3/s^2 + 1/s^3. At lambda = 20 the e^{-lambda s0}
    // remainder is below 1e-10 for s0 >= 1.5.
    const auto f = inverse_s({BigReal(1), BigReal(2), BigReal(-3), BigReal(1)}, 201);
    for (const char* text : {"1.5", "2", "2.5"}) {
        const BigReal s0(text);
        const BigReal exact = 1 + 2 / s0 - 3 / (s0 * s0) + 1 / (s0 * s0 * s0);
        const auto shifted = shift_series(f, s0, 200);
        CHECK(rel(shifted_l_n(shifted, BigReal(1), BigReal(20), 200), exact) < BigReal("1e-9"));
        CHECK(rel(l_n(f, s0, BigReal(1), BigReal(20), 3, 200), exact) < BigReal("1e-9"));
    }
    const auto inv = shift_series(inverse_s({BigReal(0), BigReal(1)}, 81), BigReal(2), 80);
    CHECK(rel(shifted_l_n(inv, BigReal(1), BigReal(10), 80), BigReal("0.5")) < BigReal("1e-6"));
}

TEST_CASE("t_n and u_n direct formulas") {
    // Harmonic W = -x^2/2: T_N = -lambda^{-alpha} / (2 Gamma(2 alpha + 1)).
    AsymptoticSeries w;
    w.kind = SeriesKind::WEvenPowers;
    w.coeffs = {BigReal(0), BigReal("-0.5"), BigReal(0)};
    const BigReal alpha("1.3");
    const BigReal lambda(7);
    CHECK(rel(t_n(w, alpha, lambda, 2), -pow(lambda, -alpha) / (2 * gamma(2 * alpha + 1))) <= 16 * unit_roundoff());

    const auto p = inverse_s({BigReal(1), BigReal(-2), BigReal(3)});
    const BigReal expected = 1 - 2 * pow(lambda, alpha) / gamma(alpha + 1) +
                             3 * pow(lambda, 2 * alpha) / gamma(2 * alpha + 1);
    CHECK(rel(u_n(p, alpha, lambda, 2), expected) <= 16 * unit_roundoff());
}

TEST_CASE("lambda_M never grows as sigma tightens") {
    const auto s = b2_series(31);
    const BigReal s0 = 1 / BigReal("0.30");
    BigReal previous(1e9);
    for (const char* sigma : {"1", "1e-1", "1e-2", "1e-3", "1e-4", "1e-5"}) {
        const BigReal lm = select_lambda_max(s, s0, BigReal("2.8555"), 30, 50, BigReal(sigma));
        CHECK(lm <= previous);
        previous = lm;
    }
}

TEST_CASE("alpha selection") {
    ResumConfig cfg;
    const auto constant = inverse_s({BigReal(2), BigReal(0), BigReal(0)});
    const auto top = select_alpha_max(constant, BigReal(1), 2, 50, cfg.sigma_percent, cfg);
    CHECK(top.alpha == cfg.alpha_max);

    const auto s = b2_series(31);
    const auto sel = select_alpha_max(s, 1 / BigReal("0.35"), 30, 50, cfg.sigma_percent, cfg);
    CHECK(rel(sel.alpha, BigReal("2.8557")) < BigReal("0.02"));
}

TEST_CASE("config validation") {
    ResumConfig cfg;
    cfg.N = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.sigma_percent = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.lambda_grid = {BigReal(1), BigReal(1)};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("curve classification") {
    std::vector<BigReal> xs;
    for (int i = 0; i <= 400; ++i) xs.push_back(BigReal(i) / 40);
    auto shape = [&](auto f) {
        std::vector<BigReal> ys;
        for (const auto& x : xs) ys.push_back(f(x));
        return classify_values(xs, ys);
    };
    CHECK(shape([](const BigReal& x) { return BigReal(exp(-x)); }) == CurveShape::Decreasing);
    CHECK(shape([](const BigReal& x) { return BigReal(1 + x * x); }) == CurveShape::Increasing);
    CHECK(shape([](const BigReal& x) { return BigReal(2 + BigReal("1e-6") * exp(-x)); }) == CurveShape::Flat);
    CHECK(shape([](const BigReal& x) { return BigReal(sin(5 * x) * exp(BigReal("0.2") * x)); }) ==
          CurveShape::OscillatingGrowing);
    CHECK(shape([](const BigReal& x) { return BigReal(sin(5 * x) * exp(BigReal("-0.2") * x)); }) ==
          CurveShape::OscillatingDamped);
    CHECK(shape([](const BigReal& x) { return BigReal(sin(5 * x)); }) == CurveShape::OscillatingFixed);
}
