// Acceptance gate: one PASS/FAIL line per criterion. Tolerances are fixed
// here and nowhere else.

#include "borel/gamma.hpp"
#include "borel/series_gen.hpp"
#include "borel/singularity.hpp"
#include "borel/spectrum.hpp"
#include "tables.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace borel;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

BigReal rel(const BigReal& a, const BigReal& b) { return abs(a - b) / abs(b); }

resum::ResumConfig base_cfg() {
    resum::ResumConfig cfg;
    cfg.N = 30;
    cfg.P = 50;
    cfg.precision_bits = 320;
    return cfg;
}

// Folds a table's row and column verdicts into one line.
void judge_table(Verdict& v, const tables::Table& t) {
    int failed = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].pass) continue;
        ++failed;
        const auto& cells = t.rows[i].cells;
        v.require(false, "row " + (cells.empty() ? std::to_string(i) : cells.front()) +
                             (t.rows[i].note.empty() ? "" : ": " + t.rows[i].note));
    }
    for (const auto& c : t.checks) v.require(c.pass, c.name + (c.detail.empty() ? "" : ": " + c.detail));
    v.detail << " " << (t.rows.size() - failed) << "/" << t.rows.size() << " rows";
}

void criterion_series(Verdict& v) {
    const std::vector<ExactRational> rs = {ExactRational(1),           ExactRational(3, 4),
                                           ExactRational(-21, 16),      ExactRational(333, 64),
                                           ExactRational(-30885, 1024), ExactRational(916731, 4096),
                                           ExactRational(-65518401, 32768)};
    const std::vector<ExactRational> b2 = {ExactRational(1),           ExactRational(5, 8),
                                           ExactRational(-35, 32),      ExactRational(2555, 512),
                                           ExactRational(-69545, 2048), ExactRational(4849705, 16384),
                                           ExactRational(-202337485, 65536)};
    const auto e = spectrum::energy_series(6);
    const auto b = spectrum::b2_series(6);
    for (std::size_t k = 0; k < rs.size(); ++k) {
        v.require(e.at(k) == rs[k], "E_" + std::to_string(k) + " = " + rational_to_string(e.at(k)));
        v.require(b.at(k) == b2[k], "b2_" + std::to_string(k) + " = " + rational_to_string(b.at(k)));
    }
}

void criterion_einf(Verdict& v) {
    const auto r = spectrum::infinite_coupling(base_cfg());
    v.detail << " E_inf = " << to_string(r.E_inf, 12);
    v.require(rel(r.E_inf, BigReal("1.0603632150")) <= BigReal("2e-6"), "vs resummed reference");
    v.require(rel(r.E_inf, BigReal("1.06036209")) <= BigReal("1.2e-6"), "vs exact");
}

void criterion_tuning(Verdict& v) {
    const spectrum::TuneConfig cfg;
    const std::vector<std::pair<const char*, const char*>> rows = {
        {"0.0578320", "1.0397505"}, {"0.8379430", "1.3483997"}, {"4.8319442", "2.0000000"}};
    for (const auto& [g, E] : rows) {
        const auto t = spectrum::tune_ground_rho(BigReal(1), BigReal(g), cfg, BigReal("1e-14"));
        v.detail << " E(" << g << ") = " << to_string(t.E, 10);
        v.require(tables::matches_figures(t.E, BigReal(E), 8), std::string("g = ") + g);
    }
}

void criterion_zero(Verdict& v) {
    const auto c = singularity::log_cosh_cubic_coeffs(300);
    const auto w = resum::AsymptoticSeries::from_exact(c);
    singularity::LocateConfig cfg;
    cfg.N = 270;
    cfg.P = 300;
    const auto pole = singularity::locate_zero_s_plane(w, BigReal("0.75"), cfg);
    v.detail << " zero = " << to_string(pole.x_p, 6) << " + " << to_string(pole.y_p, 6) << "i";
    const BigReal dx = pole.x_p - BigReal("0.738");
    const BigReal dy = pole.y_p - BigReal("0.429");
    v.require(sqrt(dx * dx + dy * dy) < BigReal("0.01"), "numerical zero");

    const Complex z = singularity::log_cosh_cubic_zero();
    const BigReal r = cbrt(2 / pi());
    const BigReal ex = r * sqrt(BigReal(3)) / 2;
    const BigReal ey = -r / 2;
    v.require(abs(z.re - ex) < BigReal("1e-6") && abs(z.im - ey) < BigReal("1e-6"), "closed form");
    // x = 1/z solves cosh(x^3) = 0
    const Complex x = Complex(BigReal(1)) / z;
    const Complex x3 = x * x * x;
    v.require(abs(x3.re) < BigReal("1e-6") && abs(abs(x3.im) - pi() / 2) < BigReal("1e-6"), "closed form is a zero");
}

// ---------------------------------------------------------------------------
// Property suite

bool prop_ode_residual() {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 13);
    for (int trial = 0; trial < 20; ++trial) {
        const ExactRational a1(num(rng), den(rng));
        const ExactRational a2(num(rng), den(rng));
        const ExactRational a3(num(rng), den(rng));
        const int N = 12;
        const auto w = series::extend_w_series(a1, a2, a3, N);
        auto a = [&](int n) { return n >= 1 && n <= N ? w.a(n) : ExactRational(0); };
        for (int k = 0; k <= N - 1; ++k) {
            ExactRational r = -ExactRational(2 * (k + 1) * (2 * k + 1)) * a(k + 1);
            for (int m = 1; m <= k; ++m) r -= ExactRational(4 * m * (k + 1 - m)) * a(m) * a(k + 1 - m);
            if (k == 0) r += 2 * a1;
            if (k == 1) r += 12 * a2 + 4 * a1 * a1;
            if (k == 2) r += 30 * a3 + 16 * a1 * a2;
            if (r != 0) return false;
        }
    }
    return true;
}

bool prop_kernel_identities() {
    resum::AsymptoticSeries s;
    s.coeffs = {BigReal(0), BigReal(0), BigReal(0), BigReal("2.5")};
    const BigReal s0("0.9");
    const BigReal lambda(4);
    const BigReal direct = BigReal("2.5") * exp(-lambda * s0) * pow(lambda, 3) / 6;
    if (rel(resum::l_n(s, s0, BigReal(1), lambda, 3, 0), direct) > 16 * unit_roundoff()) return false;
    resum::AsymptoticSeries inv;
    inv.coeffs = {BigReal(0), BigReal(1)};
    return rel(resum::l_n(inv, BigReal(2), BigReal(1), BigReal(10), 1, 60), BigReal("0.5")) < BigReal("1e-6");
}

bool prop_shift_oracle() {
    const BigReal s0("1.3");
    resum::AsymptoticSeries inv2;
    inv2.coeffs.assign(16, BigReal(0));
    inv2.coeffs[2] = 1;
    const auto t = resum::shift_series(inv2, s0, 15);
    for (int k = 2; k <= 15; ++k)
        if (rel(t.coeffs[k], (k - 1) * pow(-s0, k - 2)) > 8 * unit_roundoff()) return false;
    return true;
}

bool prop_gamma() {
    BigInt f = 1;
    for (int n = 1; n <= 100; ++n) {
        if (rel(gamma(BigReal(n)), BigReal(f)) > unit_roundoff()) return false;
        f *= n;
    }
    for (int i = 1; i < 300; i += 7) {
        const BigReal x = BigReal(i) + BigReal(1) / 1024;
        if (rel(gamma(x + 1), x * gamma(x)) > 2 * unit_roundoff()) return false;
    }
    return true;
}

bool prop_symanzik() {
    const spectrum::TuneConfig cfg;
    const auto raw = spectrum::tune_ground(1, BigReal("-0.3"), BigReal(1), cfg, BigReal("1e-12"));
    const auto via_rho = spectrum::tune_ground_rho(raw.frame.rho_hat, raw.frame.g_hat, cfg, BigReal("1e-12"));
    return rel(via_rho.E, raw.frame.E_hat) < BigReal("1e-6");
}

bool prop_pole_round_trip() {
    PrecisionGuard guard(320);
    const Complex p(BigReal("0.2"), BigReal("0.8"));
    const Complex rho(BigReal("0.3"), BigReal("0.1"));
    const BigReal s0("0.5");
    const int N = 60;
    const int P = 120;
    resum::AsymptoticSeries f;
    f.coeffs.push_back(BigReal(1));
    Complex power(BigReal(1));
    for (int n = 1; n <= N + 1; ++n) {
        f.coeffs.push_back(2 * (rho * power).re);
        power = power * p;
    }
    const BigReal exact = 1 + 2 * (rho / (Complex(s0) - p)).re;
    auto curve = [&](const BigReal& alpha) {
        resum::DoubleSumKernel k(f, s0, alpha, N, P);
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
    auto pole = singularity::fit_pole_in_alpha(curve, s0, BigReal("1.5"), BigReal("2.2"), BigReal("1e-4"));
    const BigReal lambda(10);
    const BigReal raw = resum::DoubleSumKernel(f, s0, BigReal(1), N, P)(lambda);
    const auto c = singularity::pole_correction(raw, s0, BigReal(1), lambda, pole);
    return abs(c.corrected_value - exact) / exact < BigReal("1e-3");
}

bool prop_node_counts(std::ostringstream& detail) {
    const spectrum::TuneConfig cfg;
    const auto ground = spectrum::tune_ground_rho(BigReal(0), BigReal(1), cfg, BigReal("1e-14"));
    const auto odd = spectrum::tune_excited(spectrum::Parity::Odd, {BigReal(-1), BigReal(3)}, ground, cfg,
                                            BigReal("1e-10"), 40);
    const auto even = spectrum::tune_excited(spectrum::Parity::Even, {BigReal("0.01"), BigReal(8)}, ground, cfg,
                                             BigReal("1e-10"), 40);
    // ascending tau within each parity is ascending energy
    std::vector<int> nodes;
    if (!odd.empty()) nodes.push_back(odd[0].nodes);
    if (!even.empty()) nodes.push_back(even[0].nodes);
    if (odd.size() > 1) nodes.push_back(odd[1].nodes);
    detail << " nodes";
    for (int n : nodes) detail << " " << n;
    return odd.size() >= 2 && !even.empty() && odd[0].nodes == 1 && even[0].nodes == 2 && odd[1].nodes == 3;
}

void criterion_properties(Verdict& v) {
    const std::vector<std::pair<std::string, std::function<bool()>>> props = {
        {"ode-residual", prop_ode_residual},
        {"kernel-identities", prop_kernel_identities},
        {"shift-oracle", prop_shift_oracle},
        {"gamma", prop_gamma},
        {"symanzik", prop_symanzik},
        {"pole-round-trip", prop_pole_round_trip},
        {"node-counts", [&] { return prop_node_counts(v.detail); }},
    };
    for (const auto& [name, check] : props) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception& e) {
            v.detail << " " << name << " threw: " << e.what();
        }
        v.require(ok, name);
    }
}

}  // namespace

int main() {
    set_precision_bits(320);
    const auto cfg = base_cfg();
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
        {"series regression", criterion_series},
        {"semi-classical table", [&](Verdict& v) { judge_table(v, tables::table_h(cfg)); }},
        {"Bender-Wu table", [&](Verdict& v) { judge_table(v, tables::table_g(cfg)); }},
        {"infinite coupling", criterion_einf},
        {"excited infinite coupling", [&](Verdict& v) { judge_table(v, tables::table_einf(cfg)); }},
        {"shifted expansion", [&](Verdict& v) { judge_table(v, tables::table_hshifted(cfg)); }},
        {"error correction", [&](Verdict& v) { judge_table(v, tables::table_error(cfg)); }},
        {"tuning eigenvalues", criterion_tuning},
        {"zero location", criterion_zero},
        {"property suites", criterion_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ":"
                  << v.detail.str() << " (" << static_cast<int>(secs) << " s)" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
