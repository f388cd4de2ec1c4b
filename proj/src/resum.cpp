#include "borel/resum.hpp"

#include "borel/gamma.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace borel::resum {

namespace {

void check_finite(const BigReal& v, const char* what, int n, int p) {
    if (!isfinite(v)) {
        std::ostringstream os;
        os << what << ": term (n=" << n << ", p=" << p << ") is not finite at " << precision_bits()
           << " bits; raise the working precision";
        throw ResumError(os.str(), n, p);
    }
}


}  // namespace

AsymptoticSeries AsymptoticSeries::from_exact(const std::vector<ExactRational>& exact, SeriesKind kind,
                                              std::string source) {
    AsymptoticSeries s;
    s.kind = kind;
    s.source = std::move(source);
    s.coeffs.reserve(exact.size());
    for (const auto& c : exact) s.coeffs.push_back(to_real(c));
    return s;
}

std::vector<BigReal> geometric_grid(const BigReal& lo, const BigReal& hi, int points) {
    if (points < 2 || !(lo > 0) || !(hi > lo)) throw std::invalid_argument("geometric_grid: need 0 < lo < hi, points >= 2");
    std::vector<BigReal> grid;
    grid.reserve(static_cast<std::size_t>(points));
    const BigReal ratio = log(hi / lo);
    for (int i = 0; i < points; ++i) grid.push_back(lo * exp(ratio * i / (points - 1)));
    grid.back() = hi;
    return grid;
}

std::vector<BigReal> arithmetic_grid(const BigReal& lo, const BigReal& hi, const BigReal& step) {
    if (!(step > 0) || hi < lo) throw std::invalid_argument("arithmetic_grid: need step > 0 and lo <= hi");
    std::vector<BigReal> grid;
    const BigReal slack = step / 1000;
    for (int i = 0;; ++i) {
        BigReal x = lo + step * i;
        if (x > hi + slack) break;
        grid.push_back(x);
    }
    return grid;
}

std::vector<BigReal> ResumConfig::default_lambda_grid() {
    return geometric_grid(BigReal("0.1"), BigReal(100), 400);
}

const std::vector<BigReal>& ResumConfig::grid() const {
    static const std::vector<BigReal> empty;
    return lambda_grid.empty() ? empty : lambda_grid;
}

void ResumConfig::validate() const {
    if (N < 2) throw std::invalid_argument("ResumConfig: N must be >= 2");
    if (P < 0) throw std::invalid_argument("ResumConfig: P must be >= 0");
    if (!(alpha > 0)) throw std::invalid_argument("ResumConfig: alpha must be > 0");
    if (!(sigma_percent > 0)) throw std::invalid_argument("ResumConfig: sigma must be > 0");
    if (!(alpha_min > 0) || !(alpha_max >= alpha_min) || !(alpha_step > 0))
        throw std::invalid_argument("ResumConfig: invalid alpha grid");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 0)) throw std::invalid_argument("ResumConfig: lambda grid must be positive");
        if (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1]))
            throw std::invalid_argument("ResumConfig: lambda grid must be strictly increasing");
    }
    if (precision_bits < kMinPrecisionBits) throw std::invalid_argument("ResumConfig: precision below 128 bits");
}

std::string to_string(CurveShape shape) {
    switch (shape) {
        case CurveShape::Flat: return "flat";
        case CurveShape::Increasing: return "increasing";
        case CurveShape::Decreasing: return "decreasing";
        case CurveShape::OscillatingGrowing: return "oscillating-growing";
        case CurveShape::OscillatingDamped: return "oscillating-damped";
        case CurveShape::OscillatingFixed: return "oscillating-fixed";
        case CurveShape::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

std::string LambdaCurve::to_csv() const {
    std::ostringstream os;
    os << "lambda,L_N,L_Nminus1\n";
    for (const auto& s : samples) {
        os << borel::to_string(s.lambda, 20) << ',' << borel::to_string(s.value, 30) << ','
           << borel::to_string(s.value_previous, 30) << '\n';
    }
    return os.str();
}

std::string LambdaCurve::sidecar_json() const {
    nlohmann::json j;
    j["classification"] = to_string(classification);
    j["samples"] = samples.size();
    return j.dump();
}

DoubleSumKernel::DoubleSumKernel(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, int N, int P)
    : alpha_(alpha), N_(N), P_(P) {
    if (!(s0 > 0)) throw std::invalid_argument("l_n: s0 must be positive");
    if (!(alpha > 0)) throw std::invalid_argument("l_n: alpha must be positive");
    if (N < 0 || N >= series.size()) throw std::invalid_argument("l_n: N exceeds the series length");
    if (P < 0) throw std::invalid_argument("l_n: P must be >= 0");
    coeffs_.assign(series.coeffs.begin(), series.coeffs.begin() + N + 1);
    s0_root_ = exp(log(s0) / alpha);
    gamma_n_.reserve(static_cast<std::size_t>(N + 1));
    for (int n = 0; n <= N; ++n) gamma_n_.push_back(gamma(alpha * n + 1));
}

std::pair<BigReal, BigReal> DoubleSumKernel::evaluate(const BigReal& lambda) const {
    if (!(lambda > 0)) throw std::invalid_argument("l_n: lambda must be positive");
    const BigReal lambda_alpha = exp(alpha_ * log(lambda));
    const BigReal step = s0_root_ * lambda;
    BigReal total(0);
    BigReal last(0);
    BigReal power(1);  // lambda^{alpha n}
    for (int n = 0; n <= N_; ++n) {
        if (n > 0) power *= lambda_alpha;
        if (coeffs_[static_cast<std::size_t>(n)] == 0) continue;
        // lambda^{alpha n + p} / Gamma(alpha n + p + 1) built up from p = 0.
        BigReal term = power / gamma_n_[static_cast<std::size_t>(n)];
        check_finite(term, "l_n", n, 0);
        BigReal inner = term;
        const BigReal base = alpha_ * n;
        for (int p = 1; p <= P_; ++p) {
            term *= step / (base + p);
            inner += term;
        }
        check_finite(inner, "l_n", n, P_);
        BigReal contribution = coeffs_[static_cast<std::size_t>(n)] * inner;
        total += contribution;
        // c_0 belongs to every truncation
        if (n > 0) last = contribution;
    }
    const BigReal damping = exp(-lambda * s0_root_);
    check_finite(damping, "l_n damping", -1, -1);
    BigReal value = total * damping;
    return {value, (total - last) * damping};
}

SingleSumKernel::SingleSumKernel(std::vector<BigReal> coeffs, const BigReal& alpha, int N)
    : coeffs_(std::move(coeffs)), alpha_(alpha), N_(N) {
    if (!(alpha > 0)) throw std::invalid_argument("single-sum kernel: alpha must be positive");
    if (N < 0 || N >= static_cast<int>(coeffs_.size()))
        throw std::invalid_argument("single-sum kernel: N exceeds the series length");
    coeffs_.resize(static_cast<std::size_t>(N + 1));
    // Stored pre-divided: c_n / Gamma(alpha n + 1).
    for (int n = 1; n <= N; ++n) coeffs_[static_cast<std::size_t>(n)] /= gamma(alpha * n + 1);
}

std::pair<BigReal, BigReal> SingleSumKernel::evaluate(const BigReal& lambda) const {
    if (!(lambda > 0)) throw std::invalid_argument("single-sum kernel: lambda must be positive");
    const BigReal lambda_alpha = exp(alpha_ * log(lambda));
    BigReal total = coeffs_[0];
    BigReal last(0);
    BigReal power(1);
    for (int n = 1; n <= N_; ++n) {
        power *= lambda_alpha;
        const auto& c = coeffs_[static_cast<std::size_t>(n)];
        if (c == 0) continue;
        BigReal term = c * power;
        total += term;
        last = term;
    }
    check_finite(total, "single-sum", N_, 0);
    return {total, total - last};
}

BigReal l_n(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, const BigReal& lambda, int N,
            int P) {
    return DoubleSumKernel(series, s0, alpha, N, P)(lambda);
}

AsymptoticSeries shift_series(const AsymptoticSeries& series, const BigReal& s0, int N) {
    if (N < 0 || N >= series.size()) throw std::invalid_argument("shift_series: N exceeds the series length");
    AsymptoticSeries out;
    out.kind = SeriesKind::InverseS;
    out.source = series.source.empty() ? "shifted" : series.source + " (shifted)";
    out.coeffs.assign(static_cast<std::size_t>(N + 1), BigReal(0));
    out.coeffs[0] = series.coeffs[0];
    // (s + s0)^{-n} = sum_{k>=n} binom(k-1, k-n) (-s0)^{k-n} s^{-k}
    std::vector<BigReal> s0_pow(static_cast<std::size_t>(N + 1));
    s0_pow[0] = 1;
    for (int j = 1; j <= N; ++j) s0_pow[static_cast<std::size_t>(j)] = s0_pow[static_cast<std::size_t>(j - 1)] * -s0;
    for (int n = 1; n <= N; ++n) {
        const auto& c = series.coeffs[static_cast<std::size_t>(n)];
        if (c == 0) continue;
        BigInt binom = 1;  // binom(k-1, k-n) at k = n
        for (int k = n; k <= N; ++k) {
            if (k > n) binom = binom * (k - 1) / (k - n);
            out.coeffs[static_cast<std::size_t>(k)] += c * BigReal(binom) * s0_pow[static_cast<std::size_t>(k - n)];
        }
    }
    return out;
}

BigReal shifted_l_n(const AsymptoticSeries& shifted, const BigReal& alpha, const BigReal& lambda, int N) {
    return SingleSumKernel(shifted.coeffs, alpha, N)(lambda);
}

TKernel::TKernel(const AsymptoticSeries& w, const BigReal& alpha, int N)
    : inner_([&] {
          if (w.kind != SeriesKind::WEvenPowers) throw std::invalid_argument("t_n: expects a w-even-powers series");
          auto c = w.coeffs;
          if (!c.empty()) c[0] = 0;
          return c;
      }(),
             2 * alpha, N),
      alpha_(alpha) {}

std::pair<BigReal, BigReal> TKernel::evaluate(const BigReal& lambda) const {
    auto [t, t_prev] = inner_.evaluate(lambda);
    const BigReal scale = exp(-3 * alpha_ * log(lambda));
    return {t * scale, t_prev * scale};
}

BigReal t_n(const AsymptoticSeries& w, const BigReal& alpha, const BigReal& lambda, int N) {
    return TKernel(w, alpha, N).evaluate(lambda).first;
}

BigReal u_n(const AsymptoticSeries& prefactor, const BigReal& alpha, const BigReal& lambda, int N) {
    return SingleSumKernel(prefactor.coeffs, alpha, N)(lambda);
}

BigReal percent_difference(const std::pair<BigReal, BigReal>& values) {
    const auto& [now, before] = values;
    if (before == 0) return now == 0 ? BigReal(0) : BigReal(std::numeric_limits<double>::infinity());
    return abs(now - before) / abs(before) * 100;
}

}  // namespace borel::resum

namespace borel::resum {

namespace {

// Indices where the discrete derivative changes sign (interior extrema).
std::vector<std::size_t> extrema(const std::vector<BigReal>& ys) {
    std::vector<std::size_t> out;
    int last_sign = 0;
    std::size_t last_index = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        const int sign = ys[i] > ys[i - 1] ? 1 : (ys[i] < ys[i - 1] ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) out.push_back(last_index);
        last_sign = sign;
        last_index = i;
    }
    return out;
}

}  // namespace

CurveShape classify_values(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys, const BigReal& flat_tol) {
    if (xs.size() != ys.size() || xs.size() < 8) return CurveShape::Indeterminate;

    const BigReal mid = (xs.front() + xs.back()) / 2;
    BigReal lo = ys.back();
    BigReal hi = ys.back();
    BigReal scale(0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < mid) continue;
        lo = min(lo, ys[i]);
        hi = max(hi, ys[i]);
        scale += abs(ys[i]);
        ++count;
    }
    scale /= count;
    if (scale == 0 ? hi == lo : (hi - lo) / scale <= flat_tol) return CurveShape::Flat;

    const auto ext = extrema(ys);
    if (ext.empty()) return ys.back() > ys.front() ? CurveShape::Increasing : CurveShape::Decreasing;
    if (ext.size() < 3) return CurveShape::Indeterminate;

    // Successive peak-to-trough swings; their mean log-ratio gives growth per half period.
    BigReal log_ratio(0);
    int ratios = 0;
    for (std::size_t i = 2; i < ext.size(); ++i) {
        BigReal a = abs(ys[ext[i - 1]] - ys[ext[i - 2]]);
        BigReal b = abs(ys[ext[i]] - ys[ext[i - 1]]);
        if (a == 0 || b == 0) continue;
        log_ratio += log(b / a);
        ++ratios;
    }
    if (ratios == 0) return CurveShape::Indeterminate;
    const BigReal ratio = exp(log_ratio / ratios);
    const BigReal eps("1e-2");
    if (ratio > 1 + eps) return CurveShape::OscillatingGrowing;
    if (ratio < 1 - eps) return CurveShape::OscillatingDamped;
    return CurveShape::OscillatingFixed;
}

CurveShape classify_curve(const LambdaCurve& curve, const BigReal& flat_tol) {
    std::vector<BigReal> xs;
    std::vector<BigReal> ys;
    xs.reserve(curve.samples.size());
    ys.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        xs.push_back(s.lambda);
        ys.push_back(s.value);
    }
    return classify_values(xs, ys, flat_tol);
}

BigReal select_lambda_max(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, int N, int P,
                          const BigReal& sigma_percent, const ResumConfig& cfg) {
    DoubleSumKernel kernel(series, s0, alpha, N, P);
    const auto grid = cfg.lambda_grid.empty() ? ResumConfig::default_lambda_grid() : cfg.lambda_grid;
    return select_lambda_max(kernel, grid, sigma_percent, cfg.lambda_rel_width);
}

AlphaSelection select_alpha_max(const AsymptoticSeries& series, const BigReal& s0, int N, int P,
                                const BigReal& sigma_percent, const ResumConfig& cfg) {
    ResumConfig local = cfg;
    local.sigma_percent = sigma_percent;
    return select_alpha_max([&](const BigReal& alpha) { return DoubleSumKernel(series, s0, alpha, N, P); }, local);
}

}  // namespace borel::resum

namespace borel::resum {

namespace {

// The shifted coefficients grow like s0^n, so L_N and L_{N-1} separate at
// much smaller lambda than in the double-sum form.
std::vector<BigReal> shifted_lambda_grid() { return geometric_grid(BigReal("1e-3"), BigReal(100), 500); }

struct AnyKernel {
    std::optional<DoubleSumKernel> dbl;
    std::optional<SingleSumKernel> single;
    std::pair<BigReal, BigReal> evaluate(const BigReal& lambda) const {
        return dbl ? dbl->evaluate(lambda) : single->evaluate(lambda);
    }
};

// Relative change of L_N over the last fifth of [0, lambda_M]; a resummation
// that settled on a plateau changes by far less than sigma there.
BigReal tail_variation(const AnyKernel& kernel, const BigReal& lambda_m, const BigReal& value) {
    const BigReal earlier = kernel.evaluate(lambda_m * BigReal("0.8")).first;
    if (value == 0) return abs(earlier);
    return abs(value - earlier) / abs(value);
}

ResumResult finish(const AnyKernel& kernel, const std::vector<BigReal>& grid, const BigReal& alpha,
                   const BigReal& lambda_m, const ResumConfig& cfg) {
    ResumResult r;
    r.alpha_used = alpha;
    r.lambda_used = lambda_m;
    r.curve = sample_curve(kernel, grid, lambda_m);
    auto [now, before] = kernel.evaluate(lambda_m);
    if (r.curve.samples.empty() || r.curve.samples.back().lambda != lambda_m)
        r.curve.samples.push_back({lambda_m, now, before});
    if (r.curve.samples.size() >= 8) r.curve.classification = classify_curve(r.curve);
    r.value = now;
    if (tail_variation(kernel, lambda_m, r.value) > cfg.sigma_percent * cfg.flat_window_factor / 100)
        r.warnings.push_back("no flat region before divergence");
    if (lambda_m == grid.back()) r.warnings.push_back("lambda_M reached the top of the lambda grid");
    return r;
}

AnyKernel make_kernel(const AsymptoticSeries& series, const std::optional<AsymptoticSeries>& shifted,
                      const BigReal& s0, const BigReal& alpha, const ResumConfig& cfg) {
    AnyKernel k;
    if (shifted)
        k.single.emplace(shifted->coeffs, alpha, cfg.N);
    else
        k.dbl.emplace(series, s0, alpha, cfg.N, cfg.P);
    return k;
}

ResumResult run(const AsymptoticSeries& series, const BigReal& s0, const ResumConfig& cfg, bool shifted,
                const std::optional<BigReal>& fixed_alpha) {
    cfg.validate();
    PrecisionGuard guard(cfg.precision_bits);
    std::optional<AsymptoticSeries> moved;
    if (shifted) moved = shift_series(series, s0, cfg.N);
    ResumConfig local = cfg;
    if (local.lambda_grid.empty()) local.lambda_grid = shifted ? shifted_lambda_grid() : ResumConfig::default_lambda_grid();
    auto build = [&](const BigReal& alpha) { return make_kernel(series, moved, s0, alpha, local); };

    BigReal alpha;
    BigReal lambda_m;
    if (fixed_alpha) {
        alpha = *fixed_alpha;
        lambda_m = select_lambda_max(build(alpha), local.lambda_grid, local.sigma_percent, local.lambda_rel_width);
    } else {
        auto sel = select_alpha_max(build, local);
        alpha = sel.alpha;
        lambda_m = sel.lambda;
    }
    return finish(build(alpha), local.lambda_grid, alpha, lambda_m, local);
}

}  // namespace

ResumResult resum(const AsymptoticSeries& series, const BigReal& s0, const ResumConfig& cfg) {
    return run(series, s0, cfg, false, std::nullopt);
}

ResumResult resum_shifted(const AsymptoticSeries& series, const BigReal& s0, const ResumConfig& cfg) {
    return run(series, s0, cfg, true, std::nullopt);
}

ResumResult resum_at_alpha(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha,
                           const ResumConfig& cfg, bool shifted) {
    return run(series, s0, cfg, shifted, alpha);
}

}  // namespace borel::resum
