#pragma once

// Template definitions for resum.hpp.

namespace borel::resum {

namespace detail {

// Turning-point tracker for one column of a lambda curve. Moves within
// rounding noise are ignored (the reference value is kept until the curve
// has really moved), otherwise a flat stretch reads as a string of turns.
struct TurnTrack {
    int direction = 0;
    bool turned = false;
    bool started = false;
    BigReal previous;
    void push(const BigReal& v) {
        if (!started) {
            previous = v;
            started = true;
            return;
        }
        const BigReal noise = BigReal(1e6) * unit_roundoff() * (abs(v) + abs(previous));
        if (abs(v - previous) <= noise) return;
        const int sign = v > previous ? 1 : -1;
        if (direction != 0 && sign != direction) turned = true;
        direction = sign;
        previous = v;
    }
};

struct LambdaScan {
    BigReal lambda;
    bool monotonic;
};

// select_lambda_max and monotonic_below in one pass over the grid, so every
// grid value is computed once. Empty when the first grid point fails.
template <PairKernel Kernel>
std::optional<LambdaScan> scan_lambda(const Kernel& kernel, const std::vector<BigReal>& grid,
                                      const BigReal& sigma_percent, const BigReal& rel_width) {
    TurnTrack now;
    TurnTrack before;
    std::size_t first_fail = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto values = kernel.evaluate(grid[i]);
        if (percent_difference(values) > sigma_percent) {
            first_fail = i;
            break;
        }
        now.push(values.first);
        before.push(values.second);
    }
    if (first_fail == 0) return std::nullopt;
    BigReal lambda = grid.back();
    if (first_fail < grid.size()) {
        BigReal lo = grid[first_fail - 1];
        BigReal hi = grid[first_fail];
        while ((hi - lo) > rel_width * lo) {
            BigReal mid = (lo + hi) / 2;
            if (percent_difference(kernel.evaluate(mid)) <= sigma_percent)
                lo = mid;
            else
                hi = mid;
        }
        lambda = lo;
        auto values = kernel.evaluate(lambda);
        now.push(values.first);
        before.push(values.second);
    }
    return LambdaScan{lambda, !(now.turned && before.turned)};
}

}  // namespace detail

template <PairKernel Kernel>
BigReal select_lambda_max(const Kernel& kernel, const std::vector<BigReal>& grid, const BigReal& sigma_percent,
                          const BigReal& rel_width) {
    if (grid.empty()) throw std::invalid_argument("select_lambda_max: empty lambda grid");
    if (!(sigma_percent > 0)) throw std::invalid_argument("select_lambda_max: sigma must be > 0");
    auto passes = [&](const BigReal& lambda) { return percent_difference(kernel.evaluate(lambda)) <= sigma_percent; };

    if (!passes(grid.front()))
        throw ResumError("select_lambda_max: L_N and L_{N-1} disagree already at the first grid point");
    std::size_t first_fail = grid.size();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!passes(grid[i])) {
            first_fail = i;
            break;
        }
    }
    if (first_fail == grid.size()) return grid.back();

    BigReal lo = grid[first_fail - 1];
    BigReal hi = grid[first_fail];
    while ((hi - lo) > rel_width * lo) {
        BigReal mid = (lo + hi) / 2;
        if (passes(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

template <PairKernel Kernel>
bool monotonic_below(const Kernel& kernel, const std::vector<BigReal>& grid, const BigReal& lambda_max) {
    detail::TurnTrack now;
    detail::TurnTrack before;
    auto visit = [&](const BigReal& lambda) {
        auto [a, b] = kernel.evaluate(lambda);
        now.push(a);
        before.push(b);
    };
    for (const auto& lambda : grid) {
        if (lambda >= lambda_max) break;
        visit(lambda);
    }
    visit(lambda_max);
    return !(now.turned && before.turned);
}

template <PairKernel Kernel>
LambdaCurve sample_curve(const Kernel& kernel, const std::vector<BigReal>& grid,
                         const std::optional<BigReal>& lambda_cap) {
    LambdaCurve curve;
    for (const auto& lambda : grid) {
        if (lambda_cap && lambda > *lambda_cap) break;
        auto [now, before] = kernel.evaluate(lambda);
        curve.samples.push_back({lambda, std::move(now), std::move(before)});
    }
    if (curve.samples.size() >= 8) curve.classification = classify_curve(curve);
    return curve;
}

template <class MakeKernel>
AlphaSelection select_alpha_max(const MakeKernel& make_kernel, const ResumConfig& cfg) {
    const std::vector<BigReal> lambda_grid =
        cfg.lambda_grid.empty() ? ResumConfig::default_lambda_grid() : cfg.lambda_grid;
    struct Trial {
        bool ok;
        BigReal lambda;
    };
    auto trial = [&](const BigReal& alpha) -> Trial {
        auto kernel = make_kernel(alpha);
        auto scan = detail::scan_lambda(kernel, lambda_grid, cfg.sigma_percent, cfg.lambda_rel_width);
        if (!scan) return {false, BigReal(0)};
        return {scan->monotonic, scan->lambda};
    };

    const auto alphas = arithmetic_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
    // Scan down from the top: at very small alpha the damping factor
    // e^{-lambda s0^{1/alpha}} dwarfs the P-truncated sum and the sigma rule
    // passes vacuously, so "largest passing alpha" is searched from above.
    std::size_t i = alphas.size();
    std::optional<Trial> found;
    while (i > 0) {
        --i;
        Trial t = trial(alphas[i]);
        if (t.ok) {
            found = std::move(t);
            break;
        }
    }
    if (!found) throw ResumError("select_alpha_max: no alpha on the grid gives a monotonic L_N");
    BigReal best_alpha = alphas[i];
    BigReal best_lambda = found->lambda;
    if (i + 1 == alphas.size()) return {best_alpha, best_lambda};
    ++i;

    BigReal lo = best_alpha;
    BigReal hi = alphas[i];
    while (hi - lo > cfg.alpha_width) {
        BigReal mid = (lo + hi) / 2;
        Trial t = trial(mid);
        if (t.ok) {
            lo = mid;
            best_lambda = t.lambda;
        } else {
            hi = mid;
        }
    }
    return {lo, best_lambda};
}

}  // namespace borel::resum
