#include "doctest.h"

#include "borel/gamma.hpp"
#include "borel/singularity.hpp"

using namespace borel;
using namespace borel::singularity;
using resum::AsymptoticSeries;

namespace {

BigReal rel(const BigReal& a, const BigReal& b) { return abs(a - b) / abs(b); }

// Coefficients c_n = n! t_n of U(x) = e^{-x^2} q(x), so U shares the sign
// pattern of the polynomial q and the resummed prefactor converges.
AsymptoticSeries gaussian_times(const std::vector<BigReal>& q, int order = 200) {
    std::vector<BigReal> gauss(static_cast<std::size_t>(order + 1), BigReal(0));
    BigReal term(1);
    for (int k = 0; 2 * k <= order; ++k) {
        gauss[2 * k] = term;
        term *= BigReal(-1) / (k + 1);
    }
    AsymptoticSeries s;
    s.coeffs.assign(static_cast<std::size_t>(order + 1), BigReal(0));
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int n = static_cast<int>(i); n <= order; ++n) s.coeffs[n] += q[i] * gauss[n - i];
    BigReal factorial(1);
    for (int n = 0; n <= order; ++n) {
        if (n > 0) factorial *= n;
        s.coeffs[n] *= factorial;
    }
    return s;
}

// f(s) = 1 + rho/(s - p) + c.c. expanded in 1/s.
struct SyntheticPole {
    Complex p{BigReal("0.2"), BigReal("0.8")};
    Complex rho{BigReal("0.3"), BigReal("0.1")};

    AsymptoticSeries series(int N) const {
        AsymptoticSeries f;
        f.coeffs.push_back(BigReal(1));
        Complex power(BigReal(1));
        for (int n = 1; n <= N + 1; ++n) {
            f.coeffs.push_back(2 * (rho * power).re);
            power = power * p;
        }
        return f;
    }
    BigReal exact(const BigReal& s0) const { return 1 + 2 * (rho / (Complex(s0) - p)).re; }
};

}  // namespace

TEST_CASE("node counts of known sign patterns") {
    const BigReal a("0.5");
    CHECK(count_nodes(gaussian_times({-a, BigReal(0), BigReal(1)}), {BigReal(0), BigReal(2)}, 400) == 2);
    CHECK(count_nodes(gaussian_times({BigReal(0), BigReal(1)}), {BigReal(0), BigReal(2)}, 400) == 1);
    CHECK(count_nodes(gaussian_times({BigReal(0), BigReal(-1), BigReal(0), BigReal(1)}), {BigReal(0), BigReal(2)},
                      400) == 3);
    CHECK(count_nodes(gaussian_times({BigReal(1), BigReal(0), BigReal(1)}), {BigReal(0), BigReal(2)}, 400) == 0);
}

TEST_CASE("node counting refuses samples coarser than the node spacing") {
    // (x - 0.505)(x - 0.535), no parity
    const auto close = gaussian_times({BigReal("0.270175"), BigReal("-1.04"), BigReal(1)});
    CHECK_THROWS_AS(count_nodes(close, {BigReal(0), BigReal(1)}, 100), SingularityError);
    CHECK(count_nodes(close, {BigReal(0), BigReal(1)}, 2000) == 2);
}

TEST_CASE("doubling samples keeps the node count") {
    const auto p = gaussian_times({BigReal(0), BigReal("0.3"), BigReal(0), BigReal(-1)});
    for (int samples : {100, 200, 400}) {
        const int base = count_nodes(p, {BigReal(0), BigReal(2)}, samples);
        CHECK(base == 3);
        CHECK(count_nodes(p, {BigReal(0), BigReal(2)}, 2 * samples) == base);
    }
}

TEST_CASE("prefactor evaluation rejects an unconverged sum") {
    AsymptoticSeries poly;
    poly.coeffs = {BigReal(1), BigReal(1), BigReal(1)};
    CHECK_THROWS_AS(evaluate_prefactor(poly, BigReal(2)), SingularityError);
    const auto g = gaussian_times({BigReal(1)});
    CHECK(rel(evaluate_prefactor(g, BigReal("1.3")), exp(-BigReal("1.69"))) < BigReal("1e-30"));
}

TEST_CASE("oscillation fit on constructed curves") {
    std::vector<BigReal> xs;
    std::vector<BigReal> fixed;
    std::vector<BigReal> growing;
    for (int i = 0; i <= 2000; ++i) {
        const BigReal x = BigReal(i) / 100;
        xs.push_back(x);
        fixed.push_back(1 + BigReal("0.3") * cos(2 * x + BigReal("0.4")));
        growing.push_back(1 + BigReal("0.3") * cos(2 * x + BigReal("0.4")) * exp(BigReal("0.05") * x));
    }
    const auto f = fit_oscillation(xs, fixed);
    CHECK(abs(f.period - pi()) < BigReal("1e-4"));
    CHECK(abs(f.amplitude - BigReal("0.3")) < BigReal("1e-4"));
    CHECK(abs(f.phase - BigReal("0.4")) < BigReal("1e-3"));
    CHECK(abs(f.offset - 1) < BigReal("1e-4"));
    CHECK(abs(f.growth) < BigReal("1e-6"));

    const auto g = fit_oscillation(xs, growing);
    CHECK(abs(g.growth - BigReal("0.05") * pi() / 2) < BigReal("1e-3"));

    std::vector<BigReal> flat(xs.size(), BigReal(1));
    CHECK_THROWS_AS(fit_oscillation(xs, flat), SingularityError);
}

TEST_CASE("synthetic pole round trip") {
    PrecisionGuard guard(320);
    const SyntheticPole f;
    const int N = 60;
    const int P = 120;
    const BigReal s0("0.5");
    const auto series = f.series(N);
    auto curve = [&](const BigReal& alpha) {
        resum::DoubleSumKernel k(series, s0, alpha, N, P);
        std::vector<BigReal> xs;
        std::vector<BigReal> ys;
        for (BigReal l("0.1"); l < 60; l += BigReal("0.1")) {
            auto v = k.evaluate(l);
            if (resum::percent_difference(v) > BigReal("1e-6")) break;
            xs.push_back(l);
            ys.push_back(v.first);
        }
        return std::make_pair(xs, ys);
    };
    auto pole = fit_pole_in_alpha(curve, s0, BigReal("1.5"), BigReal("2.2"), BigReal("1e-4"));
    // the pole seen through f(s^alpha_T)
    const Complex seen = pow(f.p, 1 / pole.alpha_T);
    CHECK(abs(pole.x_p - seen.re) < BigReal("1e-3"));
    CHECK(abs(pole.y_p - seen.im) < BigReal("1e-3"));

    const BigReal lambda(10);
    const BigReal raw = resum::DoubleSumKernel(series, s0, BigReal(1), N, P)(lambda);
    const auto c = pole_correction(raw, s0, BigReal(1), lambda, pole);
    const BigReal exact = f.exact(s0);
    const BigReal baseline = abs(raw - exact) / exact;
    CHECK(abs(c.corrected_value - exact) / exact < BigReal("1e-3"));
    CHECK(abs(c.corrected_value - exact) / exact < baseline / 10);
}

TEST_CASE("pole correction decays when alpha_M pulls the pole left of s0") {
    // Fixed amplitude at alpha_T = 1.5; rotated back to alpha_M = 1 the pole
    // lies left of s0, so the correction decays.
    PoleEstimate pole;
    pole.alpha_T = BigReal("1.5");
    pole.y_p = BigReal("0.8");
    pole.x_p = pow(BigReal("0.5"), 1 / pole.alpha_T);
    pole.amplitude_c = BigReal("0.01");
    pole.phase_nu = BigReal("0.3");
    const BigReal s0("0.5");
    pole_correction(BigReal(1), s0, BigReal(1), BigReal(1), pole);
    REQUIRE(pole.s_c.re < s0);
    // same phase every period
    const BigReal period = 2 * pi() / pole.s_c.im;
    BigReal previous(1);
    for (int k = 0; k < 8; ++k) {
        const auto c = pole_correction(BigReal(1), s0, BigReal(1), 1 + k * period, pole);
        CHECK(abs(c.correction) < previous);
        previous = abs(c.correction);
    }
}

TEST_CASE("log cosh test function") {
    const auto c = log_cosh_cubic_coeffs(18);
    CHECK(c[6] == ExactRational(1, 2));
    CHECK(c[12] == ExactRational(-1, 12));
    CHECK(c[18] == ExactRational(1, 45));
    for (int n = 0; n <= 18; ++n)
        if (n % 6 != 0) CHECK(c[n] == 0);
    const Complex z = log_cosh_cubic_zero();
    // 1/z^3 = s^{-3} is a zero of cosh: x^3 = i pi/2 up to sign
    const Complex x = Complex(BigReal(1)) / z;
    const Complex x3 = x * x * x;
    CHECK(abs(x3.re) < BigReal("1e-60"));
    CHECK(abs(abs(x3.im) - pi() / 2) < BigReal("1e-60"));
    CHECK(abs(z.re - BigReal("0.74500")) < BigReal("1e-5"));
    CHECK(abs(z.im + BigReal("0.43013")) < BigReal("1e-5"));
}
