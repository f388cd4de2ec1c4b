// borel: series generation, resummation, tuning, pole analysis and table
// regeneration from the command line.

#include "tables.hpp"

#include "borel/numeric.hpp"
#include "borel/resum.hpp"
#include "borel/series_gen.hpp"
#include "borel/singularity.hpp"
#include "borel/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace borel;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, Failed = 1, BadArgs = 2, IoError = 3, NoBracket = 4, Unreachable = 5 };

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    unsigned precision_bits = kDefaultPrecisionBits;
    int N = 30;
    int P = 50;
    std::string sigma = "1e-3";
    std::vector<std::string> alpha_grid;   // min max step
    std::vector<std::string> lambda_grid;  // min max points
    std::string format = "csv";
    std::string out;

    resum::ResumConfig resum() const {
        resum::ResumConfig c;
        c.N = N;
        c.P = P;
        c.sigma_percent = parse_real(sigma);
        c.precision_bits = precision_bits;
        if (!alpha_grid.empty()) {
            if (alpha_grid.size() != 3) throw std::invalid_argument("--alpha-grid takes MIN MAX STEP");
            c.alpha_min = parse_real(alpha_grid[0]);
            c.alpha_max = parse_real(alpha_grid[1]);
            c.alpha_step = parse_real(alpha_grid[2]);
            if (!(c.alpha_min > 0) || !(c.alpha_max > c.alpha_min) || !(c.alpha_step > 0))
                throw std::invalid_argument("--alpha-grid needs 0 < MIN < MAX and STEP > 0");
        }
        if (!lambda_grid.empty()) {
            if (lambda_grid.size() != 3) throw std::invalid_argument("--lambda-grid takes MIN MAX POINTS");
            c.lambda_grid = resum::geometric_grid(parse_real(lambda_grid[0]), parse_real(lambda_grid[1]),
                                                  std::stoi(lambda_grid[2]));
        }
        c.validate();
        return c;
    }
};

// Values from a JSON file; flags given on the command line win.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot read config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config file: ") + e.what());
    }
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    if (j.contains("precision_bits") && !given("--precision-bits")) cfg.precision_bits = j["precision_bits"].get<unsigned>();
    if (j.contains("N") && !given("--N")) cfg.N = j["N"].get<int>();
    if (j.contains("P") && !given("--P")) cfg.P = j["P"].get<int>();
    if (j.contains("sigma_percent") && !given("--sigma")) {
        const auto& s = j["sigma_percent"];
        cfg.sigma = s.is_string() ? s.get<std::string>() : s.dump();
    }
    auto triple = [](const json& g, const char* a, const char* b, const char* c) {
        auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        return std::vector<std::string>{str(g.at(a)), str(g.at(b)), str(g.at(c))};
    };
    if (j.contains("alpha_grid") && !given("--alpha-grid")) cfg.alpha_grid = triple(j["alpha_grid"], "min", "max", "step");
    if (j.contains("lambda_grid") && !given("--lambda-grid"))
        cfg.lambda_grid = triple(j["lambda_grid"], "min", "max", "points");
    if (j.contains("output_format") && !given("--format")) cfg.format = j["output_format"].get<std::string>();
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) throw IoFailure("cannot write '" + cfg.out + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    if (!out) throw IoFailure("write to '" + cfg.out + "' failed");
}

std::string num(const BigReal& x) { return to_string(x, 30); }

json resum_json(const resum::ResumResult& r) {
    json j;
    j["value"] = num(r.value);
    j["alpha_M"] = num(r.alpha_used);
    j["lambda_M"] = num(r.lambda_used);
    j["classification"] = resum::to_string(r.curve.classification);
    j["warnings"] = r.warnings;
    return j;
}

std::string render(const RunConfig& cfg, const json& j) {
    if (cfg.format == "json") return j.dump(2);
    // Flat objects become a two-line CSV; nested values are dumped as JSON.
    std::ostringstream head, body;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        head << (first ? "" : ",") << it.key();
        const auto& v = it.value();
        std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
        if (cell.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            cell = quoted + "\"";
        }
        body << (first ? "" : ",") << cell;
        first = false;
    }
    return head.str() + "\n" + body.str() + "\n";
}

// ---------------------------------------------------------------------------

int cmd_series(const RunConfig& cfg, const std::string& kind, int order, int q) {
    if (order < 0) throw std::invalid_argument("--order must be >= 0");
    series::ScalarSeries s;
    if (kind == "bender-wu")
        s = series::bender_wu_expand(2, order).second;
    else if (kind == "semiclassical")
        s = series::semiclassical_expand(3, order).second;
    else if (kind == "excited")
        s = series::excited_expand(q, std::max(q, 1), order).second;
    else
        throw std::invalid_argument("unknown series kind '" + kind + "'");
    emit(cfg, series::to_json(s));
    return Ok;
}

int cmd_resum(const RunConfig& cfg, const std::string& expansion, const std::string& at, int q,
              const std::string& series_file, bool shifted) {
    const auto rc = cfg.resum();
    PrecisionGuard guard(rc.precision_bits);
    json j;
    if (!series_file.empty()) {
        std::ifstream in(series_file);
        if (!in) throw IoFailure("cannot read '" + series_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        const auto s = series::scalar_series_from_json(buf.str());
        if (static_cast<int>(s.coeffs.size()) <= rc.N) throw std::invalid_argument("series file shorter than N + 1 terms");
        const auto series = resum::AsymptoticSeries::from_exact(s.coeffs);
        const BigReal x = parse_real(at);
        if (!(x > 0)) throw std::invalid_argument("--at must be positive");
        const auto r = shifted ? resum::resum_shifted(series, 1 / x, rc) : resum::resum(series, 1 / x, rc);
        j["at"] = at;
        j.update(resum_json(r));
    } else if (expansion == "g") {
        const auto r = spectrum::bender_wu_energy(parse_real(at), rc);
        j["g"] = at;
        j["E"] = num(r.E);
        j.update(resum_json(*r.resum));
    } else if (expansion == "h") {
        const auto p = spectrum::semiclassical_point(parse_real(at), rc, shifted);
        j["hbar"] = at;
        j["b2"] = num(p.b2);
        j["E"] = num(p.E);
        j["g"] = num(p.g);
        j.update(resum_json(p.resum));
    } else if (expansion == "einf") {
        const auto x = spectrum::infinite_coupling(rc);
        j["E_inf"] = num(x.E_inf);
        j["b2"] = num(x.b2);
        j.update(resum_json(x.resum));
    } else if (expansion == "b3") {
        const auto x = spectrum::excited_infinite(q, rc);
        j["q"] = q;
        j["b3"] = num(x.b3);
        j["E_q_inf"] = num(x.E_q_inf);
        j.update(resum_json(x.resum));
    } else {
        throw std::invalid_argument("unknown expansion '" + expansion + "'");
    }
    emit(cfg, render(cfg, j));
    return Ok;
}

int cmd_tune_ground(const RunConfig& cfg, const std::string& g, const std::string& rho, const std::string& tol,
                    const std::optional<std::string>& a2, int k_sign) {
    spectrum::TuneConfig tc;
    tc.N = cfg.N;
    tc.sigma_percent = parse_real(cfg.sigma);
    tc.precision_bits = std::max(cfg.precision_bits, tc.precision_bits);
    PrecisionGuard guard(tc.precision_bits);
    const auto t = a2 ? spectrum::tune_ground(k_sign, parse_real(*a2), parse_real(g), tc, parse_real(tol))
                      : spectrum::tune_ground_rho(parse_real(rho), parse_real(g), tc, parse_real(tol));
    json j;
    j["a3"] = num(t.a3);
    j["E"] = num(t.E);
    j["rho"] = num(t.rho);
    j["g"] = num(t.g);
    j["k"] = t.state.k;
    j["a2"] = num(t.state.a2);
    j["N"] = t.N;
    emit(cfg, render(cfg, j));
    return Ok;
}

int cmd_tune_excited(const RunConfig& cfg, const std::string& parity, const std::vector<std::string>& bracket,
                     bool raw_coefficient, const std::string& g, const std::string& rho, const std::string& tol,
                     int steps) {
    if (bracket.size() != 2) throw std::invalid_argument("--bracket takes LO HI");
    spectrum::Parity p;
    if (parity == "odd")
        p = spectrum::Parity::Odd;
    else if (parity == "even")
        p = spectrum::Parity::Even;
    else
        throw std::invalid_argument("--parity must be odd or even");
    spectrum::TuneConfig tc;
    tc.N = cfg.N;
    tc.sigma_percent = parse_real(cfg.sigma);
    tc.precision_bits = std::max(cfg.precision_bits, tc.precision_bits);
    PrecisionGuard guard(tc.precision_bits);
    BigReal lo(bracket[0]);
    BigReal hi(bracket[1]);
    // The raw coefficient is c_2 (even) or c_3 (odd) = -tau.
    if (raw_coefficient) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
    }
    const auto ground = spectrum::tune_ground_rho(parse_real(rho), parse_real(g), tc, BigReal("1e-14"));
    const auto levels = spectrum::tune_excited(p, {lo, hi}, ground, tc, parse_real(tol), steps);
    json j;
    j["E0"] = num(ground.E);
    j["rho"] = num(ground.rho);
    j["g"] = num(ground.g);
    j["levels"] = json::array();
    for (const auto& l : levels) {
        json e;
        e["tau"] = num(l.tau);
        e[p == spectrum::Parity::Odd ? "c3" : "c2"] = num(-l.tau);
        e["E_q_minus_E0"] = num(l.E_q);
        e["E"] = num(l.E_q + ground.E);
        e["nodes"] = l.nodes;
        e["N"] = l.N;
        j["levels"].push_back(e);
    }
    if (cfg.format == "json") {
        emit(cfg, j.dump(2));
    } else {
        std::ostringstream os;
        os << "tau," << (p == spectrum::Parity::Odd ? "c3" : "c2") << ",E_q_minus_E0,E,nodes,N\n";
        for (const auto& e : j["levels"])
            os << e["tau"].get<std::string>() << ',' << e[p == spectrum::Parity::Odd ? "c3" : "c2"].get<std::string>()
               << ',' << e["E_q_minus_E0"].get<std::string>() << ',' << e["E"].get<std::string>() << ','
               << e["nodes"].get<int>() << ',' << e["N"].get<int>() << '\n';
        emit(cfg, os.str());
    }
    return Ok;
}

int cmd_poles_test_function(const RunConfig& cfg, int N, int P) {
    singularity::LocateConfig lc;
    lc.N = N;
    lc.P = P;
    lc.precision_bits = cfg.precision_bits;
    PrecisionGuard guard(lc.precision_bits);
    const auto w = resum::AsymptoticSeries::from_exact(singularity::log_cosh_cubic_coeffs(N + 6));
    const auto pole = singularity::locate_zero_s_plane(w, BigReal("0.75"), lc);
    const auto exact = singularity::log_cosh_cubic_zero();
    json j;
    j["s_real"] = num(pole.x_p);
    j["s_imag"] = num(pole.y_p);
    j["exact_real"] = num(exact.re);
    j["exact_imag"] = num(abs(exact.im));
    j["distance"] = num((Complex(pole.x_p, pole.y_p) - Complex(exact.re, abs(exact.im))).abs());
    emit(cfg, render(cfg, j));
    return Ok;
}

int cmd_poles_ground(const RunConfig& cfg, const std::string& a2s, const std::string& a3s, int k) {
    PrecisionGuard guard(std::max(cfg.precision_bits, 512u));
    const BigReal a2(a2s);
    const BigReal a3(a3s);
    const int n = std::max(cfg.N, 60);
    std::vector<BigReal> c(static_cast<std::size_t>(2 * n + 1), BigReal(0));
    const auto a = spectrum::w_coefficients(k, a2, a3, n);
    for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(2 * i)] = a[static_cast<std::size_t>(i - 1)];
    resum::AsymptoticSeries w;
    w.coeffs = std::move(c);
    json j;
    j["a3"] = a3s;
    singularity::RealZeroConfig rc;
    rc.resum = cfg.resum();
    rc.resum.N = 2 * n - 1;
    const auto real = singularity::locate_zero_real(w, rc);
    if (real) {
        j["s_real"] = num(*real);
        j["s_imag"] = "0";
    } else {
        singularity::LocateConfig lc;
        lc.N = 2 * n - 1;
        lc.P = cfg.P;
        const auto pole = singularity::locate_zero_s_plane(w, (lc.s0_lo + lc.s0_hi) / 2, lc);
        j["s_real"] = num(pole.x_p);
        j["s_imag"] = num(pole.y_p);
    }
    emit(cfg, render(cfg, j));
    return Ok;
}

int cmd_poles_correct(const RunConfig& cfg, const std::string& hbar) {
    const auto rc = cfg.resum();
    PrecisionGuard guard(rc.precision_bits);
    const auto c = spectrum::corrected_semiclassical_point(parse_real(hbar), rc);
    json j;
    j["hbar"] = hbar;
    j["alpha_M"] = num(c.raw.resum.alpha_used);
    j["lambda_M"] = num(c.raw.resum.lambda_used);
    j["g_raw"] = num(c.raw.g);
    j["alpha_T"] = num(c.pole.alpha_T);
    j["x_p"] = num(c.pole.x_p);
    j["y_p"] = num(c.pole.y_p);
    j["amplitude"] = num(c.pole.amplitude_c);
    j["phase"] = num(c.pole.phase_nu);
    j["correction"] = num(c.correction.correction);
    j["g_corr"] = num(c.g_corr);
    j["order"] = "leading";
    emit(cfg, render(cfg, j));
    return Ok;
}

int cmd_table(const RunConfig& cfg, const std::string& name) {
    const auto t = tables::run_table(name, cfg.resum());
    emit(cfg, cfg.format == "json" ? tables::to_json(t) : tables::to_csv(t));
    return t.all_pass() ? Ok : Failed;
}

int cmd_ratio_plot(const RunConfig& cfg, int order) {
    if (order < 2) throw std::invalid_argument("--order must be >= 2");
    PrecisionGuard guard(cfg.precision_bits);
    const auto b2 = spectrum::b2_series(order - 1);
    std::ostringstream os;
    os << "n,ratio\n";
    for (int n = 1; n < order; ++n) {
        // Successive terms divided, sign removed.
        const BigReal r = abs(to_real(b2[static_cast<std::size_t>(n)]) / to_real(b2[static_cast<std::size_t>(n - 1)]));
        os << n << ',' << to_string(r, 20) << '\n';
    }
    emit(cfg, os.str());
    return Ok;
}

int cmd_curve(const RunConfig& cfg, const std::string& expansion, const std::string& at,
              const std::optional<std::string>& alpha, const std::string& lambda_max) {
    const auto rc = cfg.resum();
    PrecisionGuard guard(rc.precision_bits);
    std::vector<ExactRational> exact;
    if (expansion == "g")
        exact = spectrum::energy_series(rc.N + 1);
    else if (expansion == "h" || expansion == "h-shifted")
        exact = spectrum::b2_series(rc.N + 1);
    else
        throw std::invalid_argument("--expansion must be g, h or h-shifted");
    const bool shifted = expansion == "h-shifted";
    const auto series = resum::AsymptoticSeries::from_exact(exact);
    const BigReal s0 = 1 / parse_real(at);
    BigReal a;
    if (alpha)
        a = parse_real(*alpha);
    else
        a = (shifted ? resum::resum_shifted(series, s0, rc) : resum::resum(series, s0, rc)).alpha_used;
    const BigReal top(lambda_max);
    std::ostringstream os;
    os << "# alpha = " << to_string(a, 10) << "\n";
    os << "lambda,L_N,L_Nminus1\n";
    auto write = [&](const auto& kernel) {
        for (const auto& lambda : rc.grid()) {
            if (lambda > top) break;
            const auto v = kernel.evaluate(lambda);
            os << to_string(lambda, 12) << ',' << to_string(v.first, 20) << ',' << to_string(v.second, 20) << '\n';
        }
    };
    if (shifted)
        write(resum::SingleSumKernel(resum::shift_series(series, s0, rc.N).coeffs, a, rc.N));
    else
        write(resum::DoubleSumKernel(series, s0, a, rc.N, rc.P));
    emit(cfg, os.str());
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modified Borel summation of perturbation series"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string config_file;
    app.add_option("--config", config_file, "JSON file with run settings")->check(CLI::ExistingFile);
    app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")->check(CLI::PositiveNumber);
    app.add_option("--N", cfg.N, "number of series terms")->check(CLI::PositiveNumber);
    app.add_option("--P", cfg.P, "truncation of the (s - s0) expansion")->check(CLI::NonNegativeNumber);
    app.add_option("--sigma", cfg.sigma, "agreement threshold between L_N and L_N-1, in percent");
    app.add_option("--alpha-grid", cfg.alpha_grid, "MIN MAX STEP")->expected(3);
    app.add_option("--lambda-grid", cfg.lambda_grid, "MIN MAX POINTS (geometric)")->expected(3);
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    int status = Ok;
    auto guarded = [&](auto&& body) {
        return [&, body] {
            if (!config_file.empty()) apply_config_file(config_file, cfg, app);
            status = body();
        };
    };

    auto* series_cmd = app.add_subcommand("series", "write exact coefficients as JSON");
    std::string series_kind;
    int series_order = 30;
    int series_q = 1;
    series_cmd->add_option("kind", series_kind, "bender-wu | semiclassical | excited")->required();
    series_cmd->add_option("--order", series_order, "highest order");
    series_cmd->add_option("--q", series_q, "excitation level (excited only)");
    series_cmd->callback(guarded([&] { return cmd_series(cfg, series_kind, series_order, series_q); }));

    auto* resum_cmd = app.add_subcommand("resum", "resum one expansion at one point");
    std::string expansion = "g";
    std::string at = "1";
    int resum_q = 1;
    std::string series_file;
    bool shifted = false;
    resum_cmd->add_option("--expansion", expansion, "g | h | einf | b3");
    resum_cmd->add_option("--at", at, "coupling g or hbar (s0 = 1/at)");
    resum_cmd->add_option("--q", resum_q, "level for b3");
    resum_cmd->add_option("--series", series_file, "JSON series file to resum instead");
    resum_cmd->add_flag("--shifted", shifted, "use the shifted single-sum form");
    resum_cmd->callback(guarded([&] { return cmd_resum(cfg, expansion, at, resum_q, series_file, shifted); }));

    auto* tune_cmd = app.add_subcommand("tune", "boundary-condition tuning");
    tune_cmd->require_subcommand(1);
    auto* ground_cmd = tune_cmd->add_subcommand("ground", "tune a_3 for the ground state");
    std::string tune_g = "1";
    std::string tune_rho = "1";
    std::string tune_tol = "1e-12";
    std::optional<std::string> tune_a2;
    int k_sign = 1;
    ground_cmd->add_option("--g", tune_g, "coupling");
    ground_cmd->add_option("--rho", tune_rho, "harmonic coefficient (>= 0)");
    ground_cmd->add_option("--tol", tune_tol, "bracket width");
    ground_cmd->add_option("--a2", tune_a2, "tune at this a_2 directly (rho follows)");
    ground_cmd->add_option("--k-sign", k_sign, "sign of a_1/a_2 with --a2")->check(CLI::IsMember({-1, 1}));
    ground_cmd->callback(guarded([&] { return cmd_tune_ground(cfg, tune_g, tune_rho, tune_tol, tune_a2, k_sign); }));

    auto* excited_cmd = tune_cmd->add_subcommand("excited", "tune tau for excited states");
    std::string parity = "odd";
    std::vector<std::string> bracket{"0.01", "4"};
    bool raw_coefficient = false;
    std::string ex_g = "1";
    std::string ex_rho = "0";
    std::string ex_tol = "1e-10";
    int steps = 40;
    excited_cmd->add_option("--parity", parity, "odd | even");
    excited_cmd->add_option("--bracket", bracket, "LO HI")->expected(2);
    excited_cmd->add_flag("--coefficient", raw_coefficient, "bracket is over c_2/c_3 = -tau");
    excited_cmd->add_option("--g", ex_g, "coupling of the ground state");
    excited_cmd->add_option("--rho", ex_rho, "harmonic coefficient of the ground state");
    excited_cmd->add_option("--tol", ex_tol, "bracket width");
    excited_cmd->add_option("--steps", steps, "scan steps over the bracket");
    excited_cmd->callback(guarded(
        [&] { return cmd_tune_excited(cfg, parity, bracket, raw_coefficient, ex_g, ex_rho, ex_tol, steps); }));

    auto* poles_cmd = app.add_subcommand("poles", "singularity location and correction");
    poles_cmd->require_subcommand(1);
    auto* test_fn = poles_cmd->add_subcommand("test-function", "zero of e^{x^3} + e^{-x^3} in the s plane");
    int tf_N = 270;
    int tf_P = 300;
    test_fn->add_option("--terms", tf_N, "series terms");
    test_fn->add_option("--expansion-order", tf_P, "truncation of the (s - s0) expansion");
    test_fn->callback(guarded([&] { return cmd_poles_test_function(cfg, tf_N, tf_P); }));
    auto* pg = poles_cmd->add_subcommand("ground", "zero of a detuned ground state (s_real,s_imag,a3)");
    std::string pg_a2 = "-0.1875";
    std::string pg_a3;
    int pg_k = 4;
    pg->add_option("--a2", pg_a2, "a_2");
    pg->add_option("--a3", pg_a3, "a_3")->required();
    pg->add_option("--k", pg_k, "a_1 / a_2");
    pg->callback(guarded([&] { return cmd_poles_ground(cfg, pg_a2, pg_a3, pg_k); }));
    auto* pc = poles_cmd->add_subcommand("correct", "leading pole-pair correction of the shifted b_2 resummation");
    std::string pc_hbar = "0.3";
    pc->add_option("--hbar", pc_hbar, "hbar");
    pc->callback(guarded([&] { return cmd_poles_correct(cfg, pc_hbar); }));

    auto* table_cmd = app.add_subcommand("table", "regenerate a reference table and compare");
    std::string table_name;
    table_cmd->add_option("name", table_name, "g | h | einf | hshifted | error")
        ->required()
        ->check(CLI::IsMember(tables::table_names()));
    table_cmd->callback(guarded([&] { return cmd_table(cfg, table_name); }));

    auto* diag_cmd = app.add_subcommand("diagnose", "curves and coefficient ratios for plotting");
    diag_cmd->require_subcommand(1);
    auto* ratio = diag_cmd->add_subcommand("ratio-plot", "|b2_n / b2_{n-1}| for the first ORDER coefficients");
    int ratio_order = 100;
    ratio->add_option("--order", ratio_order, "coefficient count");
    ratio->callback(guarded([&] { return cmd_ratio_plot(cfg, ratio_order); }));
    auto* curve = diag_cmd->add_subcommand("curve", "L_N and L_N-1 against lambda");
    std::string curve_exp = "g";
    std::string curve_g;
    std::string curve_hbar;
    std::optional<std::string> curve_alpha;
    std::string curve_top = "100";
    curve->add_option("--expansion", curve_exp, "g | h | h-shifted");
    curve->add_option("--g", curve_g, "coupling (expansion g)");
    curve->add_option("--hbar", curve_hbar, "hbar (expansion h)");
    curve->add_option("--alpha", curve_alpha, "fixed alpha (default: alpha_M)");
    curve->add_option("--lambda-max", curve_top, "last lambda");
    curve->callback(guarded([&] {
        const std::string point = curve_exp == "g" ? curve_g : curve_hbar;
        if (point.empty()) throw std::invalid_argument("give --g or --hbar to match --expansion");
        return cmd_curve(cfg, curve_exp, point, curve_alpha, curve_top);
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadArgs;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return IoError;
    } catch (const spectrum::TuneError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == spectrum::TuneError::Kind::BracketNotFound ? NoBracket : Unreachable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Failed;
    }
    return status;
}
