#include "borel/spectrum.hpp"

#include "borel/series_gen.hpp"
#include "borel/singularity.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace borel::spectrum {

using resum::CurveShape;

std::string to_string(Method m) {
    switch (m) {
        case Method::BenderWu: return "bender-wu";
        case Method::Semiclassical: return "semiclassical";
        case Method::SemiclassicalShifted: return "semiclassical-shifted";
        case Method::Tuning: return "tuning";
    }
    return "unknown";
}

namespace {

std::mutex& series_mutex() {
    static std::mutex m;
    return m;
}

template <class Make>
std::vector<ExactRational> cached(std::map<std::pair<int, int>, std::vector<ExactRational>>& cache, int key, int order,
                                  Make make) {
    std::lock_guard lock(series_mutex());
    auto it = cache.lower_bound({key, order});
    if (it != cache.end() && it->first.first == key) {
        auto& c = it->second;
        return {c.begin(), c.begin() + order + 1};
    }
    auto c = make();
    cache[{key, order}] = c;
    return {c.begin(), c.begin() + order + 1};
}

std::map<std::pair<int, int>, std::vector<ExactRational>>& series_cache() {
    static std::map<std::pair<int, int>, std::vector<ExactRational>> cache;
    return cache;
}

void need_series(int have, const resum::ResumConfig& cfg) {
    if (cfg.N >= have) throw std::invalid_argument("series shorter than the requested N");
}

}  // namespace

std::vector<ExactRational> energy_series(int order) {
    return cached(series_cache(), -1, order, [&] { return series::bender_wu_expand(2, order).second.coeffs; });
}

std::vector<ExactRational> b2_series(int order) {
    return cached(series_cache(), -2, order, [&] { return series::semiclassical_expand(3, order).second.coeffs; });
}

std::vector<ExactRational> b3_series(int q, int order) {
    if (q < 0) throw std::invalid_argument("b3_series: q must be >= 0");
    return cached(series_cache(), q, order, [&] { return series::excited_expand(q, q, order).second.coeffs; });
}

SpectrumResult bender_wu_energy(const BigReal& g, const resum::ResumConfig& cfg) {
    if (!(g > 0)) throw std::invalid_argument("bender_wu_energy: g must be positive");
    PrecisionGuard guard(cfg.precision_bits);
    const auto coeffs = energy_series(cfg.N + 1);
    need_series(static_cast<int>(coeffs.size()), cfg);
    auto series = resum::AsymptoticSeries::from_exact(coeffs, resum::SeriesKind::InverseS, "E(g)");
    SpectrumResult out;
    out.method = Method::BenderWu;
    auto r = resum::resum(series, 1 / g, cfg);
    out.E = r.value;
    out.warnings = r.warnings;
    out.resum = std::move(r);
    return out;
}

BigReal semiclassical_energy(const BigReal& hbar) { return 1 / sqrt(1 - 3 * hbar / 2); }

SemiclassicalPoint semiclassical_point(const BigReal& hbar, const resum::ResumConfig& cfg, bool shifted) {
    if (!(hbar > 0)) throw std::invalid_argument("semiclassical_point: hbar must be > 0");
    if (!(3 * hbar < 2)) throw std::invalid_argument("semiclassical_point: hbar must be < 2/3 (E has a pole there)");
    PrecisionGuard guard(cfg.precision_bits);
    const auto coeffs = b2_series(cfg.N + 1);
    auto series = resum::AsymptoticSeries::from_exact(coeffs, resum::SeriesKind::InverseS, "b2(hbar)");
    SemiclassicalPoint p;
    p.hbar = hbar;
    p.resum = shifted ? resum::resum_shifted(series, 1 / hbar, cfg) : resum::resum(series, 1 / hbar, cfg);
    p.b2 = p.resum.value;
    p.E = semiclassical_energy(hbar);
    p.g = hbar * p.b2 * p.E * p.E * p.E;
    return p;
}

CorrectedPoint corrected_semiclassical_point(const BigReal& hbar, const resum::ResumConfig& cfg,
                                             const BigReal& alpha_hi) {
    PrecisionGuard guard(cfg.precision_bits);
    CorrectedPoint out;
    out.raw = semiclassical_point(hbar, cfg, true);
    const auto series =
        resum::AsymptoticSeries::from_exact(b2_series(cfg.N + 1), resum::SeriesKind::InverseS, "b2(hbar)");
    const auto shifted = resum::shift_series(series, 1 / hbar, cfg.N);

    // Even samples of L_N from 0 up to where L_N and L_{N-1} separate.
    const BigReal step("0.01");
    auto curve = [&](const BigReal& alpha) {
        resum::SingleSumKernel kernel(shifted.coeffs, alpha, cfg.N);
        std::vector<BigReal> xs;
        std::vector<BigReal> ys;
        for (BigReal lambda = step; lambda <= 100; lambda += step) {
            auto values = kernel.evaluate(lambda);
            if (resum::percent_difference(values) > cfg.sigma_percent) break;
            xs.push_back(lambda);
            ys.push_back(std::move(values.first));
        }
        return std::make_pair(std::move(xs), std::move(ys));
    };
    const BigReal alpha_M = out.raw.resum.alpha_used;
    out.pole = singularity::fit_pole_in_alpha(curve, BigReal(0), alpha_M, alpha_hi, cfg.alpha_width);
    out.correction = singularity::pole_correction(out.raw.b2, BigReal(0), alpha_M, out.raw.resum.lambda_used, out.pole);
    const BigReal E = semiclassical_energy(hbar);
    out.g_corr = hbar * out.correction.corrected_value * E * E * E;
    return out;
}

InfiniteCoupling infinite_coupling(const resum::ResumConfig& cfg) {
    PrecisionGuard guard(cfg.precision_bits);
    const auto coeffs = b2_series(cfg.N + 1);
    auto series = resum::AsymptoticSeries::from_exact(coeffs, resum::SeriesKind::InverseS, "b2(hbar)");
    InfiniteCoupling out;
    out.resum = resum::resum(series, BigReal(3) / 2, cfg);
    out.b2 = out.resum.value;
    // g = hbar b_2 E^3 with E -> E_inf g^{1/3} as hbar -> 2/3.
    out.E_inf = cbrt(3 / (2 * out.b2));
    return out;
}

ExcitedInfinite excited_infinite(int q, const resum::ResumConfig& cfg, const std::optional<BigReal>& E_inf) {
    if (q < 1) throw std::invalid_argument("excited_infinite: q must be >= 1");
    PrecisionGuard guard(cfg.precision_bits);
    const BigReal e0 = E_inf ? *E_inf : infinite_coupling(cfg).E_inf;
    const auto coeffs = b3_series(q, cfg.N + 1);
    auto series = resum::AsymptoticSeries::from_exact(coeffs, resum::SeriesKind::InverseS, "b3(hbar)");
    ExcitedInfinite out;
    out.q = q;
    out.resum = resum::resum(series, BigReal(3) / 2, cfg);
    out.b3 = out.resum.value;
    out.E_q_inf = -BigReal(3) / 2 * out.b3 * e0;
    return out;
}

// ---------------------------------------------------------------------------

std::vector<BigReal> TuneConfig::default_lambda_grid() {
    return resum::geometric_grid(BigReal("0.1"), BigReal(2000), 200);
}

const std::vector<BigReal>& TuneConfig::grid() const {
    static const std::vector<BigReal> fallback = default_lambda_grid();
    return lambda_grid.empty() ? fallback : lambda_grid;
}

ScaledFrame scaled_frame(int k, const BigReal& a2, const BigReal& a3) {
    const BigReal a1 = a2 * k;
    return {-2 * a1, 12 * a2 + 4 * a1 * a1, 30 * a3 + 16 * a1 * a2};
}

std::vector<BigReal> w_coefficients(int k, const BigReal& a2, const BigReal& a3, int n) {
    if (n < 3) throw std::invalid_argument("w_coefficients: need at least 3 coefficients");
    std::vector<BigReal> a(static_cast<std::size_t>(n), BigReal(0));
    a[0] = a2 * k;
    a[1] = a2;
    a[2] = a3;
    series::apply_w_recurrence(a);
    return a;
}

namespace {

// The (T_N, T_{N-1}) pairs over the prefix of the grid on which they agree to
// sigma; the window ends where truncation takes over.
template <class Kernel>
std::vector<BigReal> trusted_window(const Kernel& kernel, const TuneConfig& cfg) {
    std::vector<BigReal> out;
    for (const auto& lambda : cfg.grid()) {
        auto values = kernel.evaluate(lambda);
        if (resum::percent_difference(values) > cfg.sigma_percent) break;
        out.push_back(std::move(values.first));
    }
    return out;
}

resum::AsymptoticSeries as_w_series(const std::vector<BigReal>& a) {
    resum::AsymptoticSeries s;
    s.kind = resum::SeriesKind::WEvenPowers;
    s.coeffs.reserve(a.size() + 1);
    s.coeffs.push_back(BigReal(0));
    s.coeffs.insert(s.coeffs.end(), a.begin(), a.end());
    return s;
}

}  // namespace

CurveShape classify_ground(int k, const BigReal& a2, const BigReal& a3, int N, const TuneConfig& cfg) {
    const ScaledFrame f = scaled_frame(k, a2, a3);
    if (!(f.g_hat > 0)) return CurveShape::Decreasing;
    const auto w = as_w_series(w_coefficients(k, a2, a3, N));
    resum::TKernel kernel(w, cfg.alpha, N);
    const auto values = trusted_window(kernel, cfg);
    if (values.size() < 3) return CurveShape::Indeterminate;
    const BigReal limit = -sqrt(f.g_hat) / 18;
    for (const auto& v : values)
        if (v > limit) return CurveShape::Increasing;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] > values[i + 1]) return CurveShape::Decreasing;
    // A maximum at the very end of the window still counts as turning down.
    if (values.back() < values[values.size() - 2]) return CurveShape::Decreasing;
    return CurveShape::Flat;
}

GroundTuning tune_ground(int k_sign, const BigReal& a2, const BigReal& g, const TuneConfig& cfg, const BigReal& tol) {
    if (k_sign != 1 && k_sign != -1) throw std::invalid_argument("tune_ground: k_sign must be +1 or -1");
    if (!(g > 0)) throw std::invalid_argument("tune_ground: g must be positive");
    if (!(tol > 0)) throw std::invalid_argument("tune_ground: tol must be positive");
    PrecisionGuard guard(cfg.precision_bits);
    const int k = 4 * k_sign;
    TuneState state;
    state.k = k;
    state.a2 = a2;
    int N = cfg.N;

    // a_3 below a3_floor makes g^ <= 0; scan offsets above it.
    const BigReal a3_floor = -16 * k * a2 * a2 / 30;
    auto classify = [&](const BigReal& a3) { return classify_ground(k, a2, a3, N, cfg); };
    std::optional<BigReal> lo;
    std::optional<BigReal> hi;
    BigReal previous;
    CurveShape previous_shape = CurveShape::Indeterminate;
    const auto offsets = resum::geometric_grid(BigReal("1e-6"), BigReal(1000), 46);
    for (const auto& d : offsets) {
        BigReal a3 = a3_floor + d;
        const CurveShape shape = classify(a3);
        if (shape == CurveShape::Increasing && previous_shape == CurveShape::Decreasing) {
            lo = previous;
            hi = a3;
            break;
        }
        if (shape == CurveShape::Increasing || shape == CurveShape::Decreasing) {
            previous_shape = shape;
            previous = a3;
        }
    }
    if (!lo) throw TuneError(TuneError::Kind::BracketNotFound, "tune_ground: bracket not found");

    state.a3_low = *lo;
    state.a3_high = *hi;
    while (state.a3_high - state.a3_low > tol) {
        BigReal mid = (state.a3_low + state.a3_high) / 2;
        CurveShape shape = classify(mid);
        while (shape != CurveShape::Increasing && shape != CurveShape::Decreasing) {
            if (2 * N > cfg.N_max)
                throw TuneError(TuneError::Kind::Indeterminate,
                                "tune_ground: accuracy unreachable at N = " + std::to_string(N));
            N *= 2;
            shape = classify(mid);
        }
        if (shape == CurveShape::Increasing)
            state.a3_high = mid;
        else
            state.a3_low = mid;
        ++state.iterations;
    }

    GroundTuning out;
    out.a3 = (state.a3_low + state.a3_high) / 2;
    out.frame = scaled_frame(k, a2, out.a3);
    out.g = g;
    const BigReal ratio = cbrt(g / out.frame.g_hat);
    out.E = out.frame.E_hat * ratio;
    out.rho = out.frame.rho_hat * ratio * ratio;
    out.N = N;
    out.state = std::move(state);
    return out;
}

GroundTuning tune_ground(int k_sign, const ExactRational& a2, const BigReal& g, const TuneConfig& cfg,
                         const BigReal& tol) {
    PrecisionGuard guard(cfg.precision_bits);
    return tune_ground(k_sign, to_real(a2), g, cfg, tol);
}

GroundTuning tune_ground_rho(const BigReal& rho, const BigReal& g, const TuneConfig& cfg, const BigReal& tol) {
    if (rho < 0) throw std::invalid_argument("tune_ground_rho: rho < 0 is only available through tune_ground");
    if (!(g > 0)) throw std::invalid_argument("tune_ground_rho: g must be positive");
    PrecisionGuard guard(cfg.precision_bits);
    if (rho == 0) return tune_ground(1, BigReal(-3) / 16, g, cfg, tol);

    const BigReal g1 = g / (rho * sqrt(rho));
    // The a_3 bracket is tightened to tol relative to g^ so the ratio below is
    // resolved well beyond the hbar tolerance.
    auto tuned = [&](const BigReal& hbar) {
        const BigReal a2 = -1 / (8 * hbar);
        return tune_ground(1, a2, g1, cfg, tol);
    };
    auto mismatch = [&](const GroundTuning& t) {
        return log(t.frame.g_hat / (t.frame.rho_hat * sqrt(t.frame.rho_hat))) - log(g1);
    };

    // g(hbar) rises from 0 to infinity on (0, 2/3); false position with the
    // Illinois modification on log g.
    // Very small hbar puts a_2 far from the scan range of tune_ground, so the
    // bracket starts central and widens only as far as needed.
    const BigReal hbar_min("1e-3");
    const BigReal hbar_max = BigReal(2) / 3 - BigReal("1e-6");
    BigReal lo("0.1");
    BigReal hi("0.6");
    GroundTuning t_lo = tuned(lo);
    BigReal f_lo = mismatch(t_lo);
    while (f_lo > 0 && lo > hbar_min) {
        hi = lo;
        lo = max(lo / 4, hbar_min);
        t_lo = tuned(lo);
        f_lo = mismatch(t_lo);
    }
    GroundTuning t_hi = tuned(hi);
    BigReal f_hi = mismatch(t_hi);
    while (f_hi < 0 && hi < hbar_max) {
        lo = hi;
        f_lo = f_hi;
        hi = min((hi + 2 * hbar_max) / 3, hbar_max);
        t_hi = tuned(hi);
        f_hi = mismatch(t_hi);
    }
    if (f_lo > 0 || f_hi < 0)
        throw TuneError(TuneError::Kind::BracketNotFound, "tune_ground_rho: g outside the reachable range");
    GroundTuning best = t_lo;
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        BigReal hbar = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        GroundTuning t = tuned(hbar);
        BigReal f = mismatch(t);
        best = t;
        if (abs(f) <= tol || hi - lo <= tol) break;
        if (f < 0) {
            lo = hbar;
            f_lo = f;
            if (side == -1) f_hi /= 2;
            side = -1;
        } else {
            hi = hbar;
            f_hi = f;
            if (side == 1) f_lo /= 2;
            side = 1;
        }
    }
    // Back to the requested rho by E(rho, g) = sqrt(rho) E(1, g rho^{-3/2}).
    best.E *= sqrt(rho);
    best.rho *= rho;
    best.g = g;
    return best;
}

std::pair<std::vector<BigReal>, BigReal> prefactor_coefficients(Parity parity, const BigReal& tau,
                                                                const std::vector<BigReal>& w, int n_max) {
    if (w.size() < 3) throw std::invalid_argument("prefactor_coefficients: need a_1..a_3");
    const int first = parity == Parity::Even ? 0 : 1;
    if (n_max < first + 2) throw std::invalid_argument("prefactor_coefficients: n_max too small");
    std::vector<BigReal> c(static_cast<std::size_t>(n_max + 1), BigReal(0));
    c[static_cast<std::size_t>(first)] = 1;
    c[static_cast<std::size_t>(first + 2)] = -tau;
    // x^n coefficient of -(P'' + 2 P' W') = E_q P:
    //   (n+2)(n+1) c_{n+2} + 4 sum_m m (n+2-2m) a_m c_{n+2-2m} + E_q c_n = 0.
    const BigReal E_q = parity == Parity::Even ? BigReal(2 * tau) : BigReal(6 * tau - 4 * w[0]);
    for (int n = first + 2; n + 2 <= n_max; n += 2) {
        BigReal sum(0);
        for (int m = 1; 2 * m <= n + 2; ++m) {
            const int j = n + 2 - 2 * m;
            if (j == 0 || m > static_cast<int>(w.size())) continue;
            sum += BigReal(m * j) * w[static_cast<std::size_t>(m - 1)] * c[static_cast<std::size_t>(j)];
        }
        c[static_cast<std::size_t>(n + 2)] = -(4 * sum + E_q * c[static_cast<std::size_t>(n)]) / ((n + 2) * (n + 1));
    }
    return {std::move(c), E_q};
}

CurveShape classify_excited(Parity parity, const BigReal& tau, const std::vector<BigReal>& w, int N,
                            const TuneConfig& cfg) {
    auto [c, E_q] = prefactor_coefficients(parity, tau, w, N);
    resum::SingleSumKernel kernel(std::move(c), cfg.alpha, N);
    const auto values = trusted_window(kernel, cfg);
    if (values.size() < 4) return CurveShape::Indeterminate;
    // Compare the end of the window with its value a tenth earlier.
    const auto& end = values.back();
    const auto& earlier = values[values.size() * 9 / 10 - 1];
    if (end > earlier) return CurveShape::Increasing;
    if (end < earlier) return CurveShape::Decreasing;
    return CurveShape::Flat;
}

std::vector<ExcitedLevel> tune_excited(Parity parity, const std::pair<BigReal, BigReal>& bracket,
                                       const GroundTuning& ground, const TuneConfig& cfg, const BigReal& tol,
                                       int steps) {
    if (!(bracket.first < bracket.second)) throw std::invalid_argument("tune_excited: empty tau bracket");
    if (steps < 1) throw std::invalid_argument("tune_excited: steps must be >= 1");
    if (!(tol > 0)) throw std::invalid_argument("tune_excited: tol must be positive");
    PrecisionGuard guard(cfg.precision_bits);
    auto w_at = [&](int n) { return w_coefficients(ground.state.k, ground.state.a2, ground.a3, n); };
    auto verdict_at = [&](const std::vector<BigReal>& w, int n, const BigReal& tau) {
        const CurveShape s = classify_excited(parity, tau, w, n, cfg);
        return s == CurveShape::Increasing ? 1 : (s == CurveShape::Decreasing ? -1 : 0);
    };

    int N = cfg.N;
    auto w = w_at(N);
    std::vector<std::pair<BigReal, BigReal>> flips;
    BigReal previous = bracket.first;
    int previous_verdict = verdict_at(w, N, previous);
    for (int i = 1; i <= steps; ++i) {
        BigReal tau = bracket.first + (bracket.second - bracket.first) * i / steps;
        const int v = verdict_at(w, N, tau);
        if (v == 0) continue;
        if (previous_verdict != 0 && v != previous_verdict) flips.emplace_back(previous, tau);
        previous = tau;
        previous_verdict = v;
    }
    if (flips.empty()) throw TuneError(TuneError::Kind::BracketNotFound, "tune_excited: no sign flip in bracket");

    auto bisect = [&](const std::vector<BigReal>& wn, int n, BigReal lo, BigReal hi) {
        const int v_lo = verdict_at(wn, n, lo);
        while (hi - lo > tol) {
            BigReal mid = (lo + hi) / 2;
            const int v = verdict_at(wn, n, mid);
            if (v == 0)
                throw TuneError(TuneError::Kind::OscillationAmbiguity,
                                "tune_excited: U_N cannot be classified; lower alpha below 1");
            if (v == v_lo)
                lo = mid;
            else
                hi = mid;
        }
        return BigReal((lo + hi) / 2);
    };

    const BigReal scale = cbrt(ground.g / ground.frame.g_hat);
    std::vector<ExcitedLevel> levels;
    for (auto [lo, hi] : flips) {
        int n = N;
        auto wn = w;
        BigReal tau = bisect(wn, n, lo, hi);
        // Truncation moves tau far more than tol; double N until it settles.
        BigReal shift = abs(hi - lo);
        while (shift > tol && 2 * n <= cfg.N_max) {
            const int n2 = 2 * n;
            auto w2 = w_at(n2);
            BigReal half = max(BigReal(10) * tol, shift);
            std::optional<BigReal> found;
            for (int widen = 0; widen < 6 && !found; ++widen, half *= 4) {
                const int a = verdict_at(w2, n2, tau - half);
                const int b = verdict_at(w2, n2, tau + half);
                if (a != 0 && b != 0 && a != b) found = bisect(w2, n2, tau - half, tau + half);
            }
            if (!found) break;
            shift = abs(*found - tau);
            tau = *found;
            n = n2;
            wn = std::move(w2);
        }

        ExcitedLevel level;
        level.tau = tau;
        level.tau_uncertainty = max(shift, tol);
        level.N = n;
        const BigReal E_q = prefactor_coefficients(parity, tau, wn, n).second;
        level.E_q_hat = E_q;
        level.E_q = E_q * scale;

        // Nodes of the resummed prefactor, counted where the two ends of the
        // tau uncertainty still resum to the same sign.
        const int n_long = 2 * n;
        const auto w_long = w_at(n_long);
        auto resummed = [&](const BigReal& t) {
            resum::AsymptoticSeries p;
            p.coeffs = prefactor_coefficients(parity, t, w_long, n_long).first;
            p.source = "prefactor";
            return p;
        };
        const auto p_mid = resummed(tau);
        const auto p_low = resummed(tau - level.tau_uncertainty);
        const auto p_high = resummed(tau + level.tau_uncertainty);
        BigReal x_end(0);
        for (const auto& x : cfg.grid()) {
            try {
                const BigReal u_low = singularity::evaluate_prefactor(p_low, x);
                const BigReal u_high = singularity::evaluate_prefactor(p_high, x);
                if ((u_low > 0) != (u_high > 0)) break;
            } catch (const singularity::SingularityError&) {
                break;
            }
            x_end = x;
        }
        if (!(x_end > 0))
            throw TuneError(TuneError::Kind::Indeterminate, "tune_excited: prefactor not resolved for node counting");
        level.node_domain = x_end;
        level.nodes = singularity::count_nodes(p_mid, {BigReal(0), x_end}, 400);
        levels.push_back(std::move(level));
    }
    return levels;
}

}  // namespace borel::spectrum
