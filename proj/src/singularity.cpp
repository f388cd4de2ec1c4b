#include "borel/singularity.hpp"

#include "borel/gamma.hpp"

#include <cmath>

namespace borel::singularity {

using resum::AsymptoticSeries;

OscillationFit fit_oscillation(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys) {
    if (xs.size() != ys.size() || xs.size() < 5) throw SingularityError("fit_oscillation: too few samples");
    struct Extremum {
        BigReal x;
        BigReal y;
        bool maximum;
    };
    std::vector<Extremum> ext;
    for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
        const BigReal d1 = ys[i] - ys[i - 1];
        const BigReal d2 = ys[i + 1] - ys[i];
        if (!((d1 > 0 && d2 <= 0) || (d1 < 0 && d2 >= 0))) continue;
        const BigReal h = xs[i] - xs[i - 1];
        const BigReal curv = ys[i + 1] - 2 * ys[i] + ys[i - 1];
        const BigReal slope = ys[i + 1] - ys[i - 1];
        Extremum e{xs[i], ys[i], d1 > 0};
        if (curv != 0) {
            e.x = xs[i] - h * slope / (2 * curv);
            e.y = ys[i] - slope * slope / (8 * curv);
        }
        ext.push_back(std::move(e));
    }
    if (ext.size() < 3) throw SingularityError("fit_oscillation: insufficient extrema (need at least three)");

    OscillationFit fit;
    for (const auto& e : ext) fit.extrema.push_back(e.x);
    std::vector<BigReal> swings;
    BigReal mid_sum(0);
    for (std::size_t j = 1; j < ext.size(); ++j) {
        swings.push_back(abs(ext[j].y - ext[j - 1].y));
        mid_sum += (ext[j].y + ext[j - 1].y) / 2;
    }
    fit.offset = mid_sum / swings.size();
    BigReal log_sum(0);
    BigReal swing_sum(0);
    for (std::size_t j = 0; j < swings.size(); ++j) {
        swing_sum += swings[j];
        if (j > 0) log_sum += log(swings[j] / swings[j - 1]);
    }
    fit.growth = log_sum / (swings.size() - 1);
    fit.amplitude = swing_sum / swings.size() / 2;
    fit.period = 2 * (ext.back().x - ext.front().x) / (ext.size() - 1);

    // Maxima sit at lambda y + nu = 0 (mod 2 pi), minima at pi.
    const BigReal y = 2 * pi() / fit.period;
    BigReal re(0);
    BigReal im(0);
    for (const auto& e : ext) {
        const BigReal theta = (e.maximum ? BigReal(0) : pi()) - y * e.x;
        re += cos(theta);
        im += sin(theta);
    }
    fit.phase = atan2(im, re);
    return fit;
}

namespace {

std::pair<std::vector<BigReal>, std::vector<BigReal>> sample_window(const resum::DoubleSumKernel& kernel,
                                                                     const LocateConfig& cfg) {
    std::vector<BigReal> xs;
    std::vector<BigReal> ys;
    BigReal worst(0);
    for (BigReal lambda = cfg.lambda_lo; lambda <= cfg.lambda_hi; lambda += cfg.lambda_step) {
        auto [now, before] = kernel.evaluate(lambda);
        worst = max(worst, abs(now - before));
        xs.push_back(lambda);
        ys.push_back(std::move(now));
    }
    if (!ys.empty() && worst > BigReal("1e-8") * (1 + abs(ys.back())))
        throw SingularityError("locate_zero_s_plane: S_N not converged over the lambda window; raise N or P");
    return {std::move(xs), std::move(ys)};
}

}  // namespace

PoleEstimate locate_zero_s_plane(const AsymptoticSeries& w, const BigReal& s0_guess, const LocateConfig& cfg) {
    if (cfg.N >= w.size()) throw std::invalid_argument("locate_zero_s_plane: series shorter than N");
    PrecisionGuard guard(cfg.precision_bits);
    auto fit_at = [&](const BigReal& s0) {
        resum::DoubleSumKernel kernel(w, s0, BigReal(1), cfg.N, cfg.P);
        auto [xs, ys] = sample_window(kernel, cfg);
        try {
            return fit_oscillation(xs, ys);
        } catch (const SingularityError&) {
            throw SingularityError("locate_zero_s_plane: no oscillation in the lambda window (try locate_zero_real)");
        }
    };

    // Growing swings mean s0 is left of x_p.
    BigReal lo = cfg.s0_lo;
    BigReal hi = cfg.s0_hi;
    if (s0_guess > lo && s0_guess < hi) {
        if (fit_at(s0_guess).growth > 0)
            lo = s0_guess;
        else
            hi = s0_guess;
    }
    if (!(fit_at(lo).growth > 0) || !(fit_at(hi).growth < 0))
        throw SingularityError("locate_zero_s_plane: s0 bracket does not straddle a fixed-amplitude point");
    while (hi - lo > cfg.tol) {
        BigReal mid = (lo + hi) / 2;
        if (fit_at(mid).growth > 0)
            lo = mid;
        else
            hi = mid;
    }
    const BigReal s0 = (lo + hi) / 2;
    const OscillationFit fit = fit_at(s0);
    PoleEstimate pole;
    pole.x_p = s0;
    pole.y_p = 2 * pi() / fit.period;
    pole.amplitude_c = fit.amplitude;
    pole.phase_nu = fit.phase;
    pole.alpha_T = 1;
    return pole;
}

std::optional<BigReal> locate_zero_real(const AsymptoticSeries& w, const RealZeroConfig& cfg) {
    PrecisionGuard guard(cfg.resum.precision_bits);
    std::vector<BigReal> ss;
    std::vector<BigReal> psi;
    bool broke = false;
    for (BigReal s0 = cfg.s0_start; s0 >= cfg.s0_min; s0 -= cfg.s0_step) {
        try {
            auto r = resum::resum_at_alpha(w, s0, BigReal(1), cfg.resum);
            if (!r.warnings.empty()) {
                broke = true;
                break;
            }
            ss.push_back(s0);
            psi.push_back(exp(r.value));
        } catch (const resum::ResumError&) {
            broke = true;
            break;
        }
    }
    if (!broke) return std::nullopt;
    if (ss.size() < 3) throw SingularityError("locate_zero_real: breakdown before three usable points");

    const std::size_t take = std::max<std::size_t>(3, ss.size() / 5);
    const std::size_t start = ss.size() - take;
    BigReal sx(0), sy(0), sxx(0), sxy(0);
    for (std::size_t i = start; i < ss.size(); ++i) {
        sx += ss[i];
        sy += psi[i];
        sxx += ss[i] * ss[i];
        sxy += ss[i] * psi[i];
    }
    const BigReal n(take);
    const BigReal b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const BigReal a = (sy - b * sx) / n;
    BigReal rss(0);
    BigReal scale(0);
    for (std::size_t i = start; i < ss.size(); ++i) {
        const BigReal r = psi[i] - (a + b * ss[i]);
        rss += r * r;
        scale += abs(psi[i]);
    }
    if (b == 0 || sqrt(rss / n) > cfg.max_residual * scale / n)
        throw SingularityError("locate_zero_real: extrapolation unstable");
    return -a / b;
}

namespace {

BigReal root_of(const BigReal& s0, const BigReal& alpha) {
    if (s0 == 0) return BigReal(0);
    return exp(log(s0) / alpha);
}

}  // namespace

CorrectionResult pole_correction(const BigReal& raw, const BigReal& s0, const BigReal& alpha_M,
                                 const BigReal& lambda, PoleEstimate& pole) {
    if (!(alpha_M > 0) || !(pole.alpha_T > 0)) throw std::invalid_argument("pole_correction: alpha must be positive");
    const Complex sp_T(root_of(s0, pole.alpha_T), pole.y_p);
    pole.s_c = pow(sp_T, pole.alpha_T / alpha_M);
    // rho_T e^{i lambda y}/(i y) + c.c. = c cos(lambda y + nu)
    pole.residue_T = Complex(BigReal(0), pole.y_p * pole.amplitude_c / 2) * Complex(cos(pole.phase_nu), sin(pole.phase_nu));
    // f(s^alpha) has residue rho s_*/(alpha p) at s_* = p^{1/alpha}, so
    // rho_M = rho_T (alpha_T/alpha_M) s_c / s_p^{1/alpha_T}.
    pole.residue_M = pole.residue_T * (pole.alpha_T / alpha_M) * pole.s_c / sp_T;
    const Complex d = pole.s_c - Complex(root_of(s0, alpha_M));
    const Complex term = pole.residue_M * exp(d * lambda) / d;
    CorrectionResult out;
    out.raw_value = raw;
    out.correction = 2 * term.re;
    out.corrected_value = raw - out.correction;
    if (abs(out.correction) > abs(raw) / 10)
        throw SingularityError("pole_correction: pole dominates (correction exceeds 10% of the value)");
    return out;
}

PoleEstimate fit_pole_in_alpha(
    const std::function<std::pair<std::vector<BigReal>, std::vector<BigReal>>(const BigReal&)>& curve,
    const BigReal& s0, BigReal lo, BigReal hi, const BigReal& tol) {
    auto growth = [&](const BigReal& alpha) {
        auto [xs, ys] = curve(alpha);
        return fit_oscillation(xs, ys).growth;
    };
    const BigReal g_lo = growth(lo);
    const BigReal g_hi = growth(hi);
    if ((g_lo > 0) == (g_hi > 0)) throw SingularityError("fit_pole_in_alpha: amplitude growth keeps its sign");
    const bool rising = g_hi > 0;
    while (hi - lo > tol) {
        BigReal mid = (lo + hi) / 2;
        if ((growth(mid) > 0) == rising)
            hi = mid;
        else
            lo = mid;
    }
    const BigReal alpha = (lo + hi) / 2;
    auto [xs, ys] = curve(alpha);
    const OscillationFit fit = fit_oscillation(xs, ys);
    PoleEstimate pole;
    pole.alpha_T = alpha;
    pole.x_p = root_of(s0, alpha);
    pole.y_p = 2 * pi() / fit.period;
    pole.amplitude_c = fit.amplitude;
    pole.phase_nu = fit.phase;
    return pole;
}

BigReal evaluate_prefactor(const AsymptoticSeries& prefactor, const BigReal& x) {
    // U(x) = sum c_n x^n / n!, the alpha = 1 single-sum kernel at lambda = x.
    BigReal sum(0);
    BigReal term_scale(1);
    BigReal largest(0);
    BigReal last(0);
    for (std::size_t n = 0; n < prefactor.coeffs.size(); ++n) {
        if (n > 0) term_scale *= x / n;
        const auto& c = prefactor.coeffs[n];
        if (c == 0) continue;
        BigReal term = c * term_scale;
        largest = max(largest, abs(term));
        last = abs(term);
        sum += term;
    }
    if (last > BigReal("1e-12") * largest && last > BigReal("1e-30"))
        throw SingularityError("evaluate_prefactor: truncation not negligible at x = " + to_string(x, 6));
    return sum;
}

QCheck prefactor_q_check(const AsymptoticSeries& prefactor, const BigReal& g, const std::vector<BigReal>& x_samples) {
    QCheck out;
    std::vector<BigReal> xs;
    std::vector<BigReal> qs;
    for (const auto& x : x_samples) {
        const BigReal p = evaluate_prefactor(prefactor, x);
        if (p == 0) continue;
        BigReal q = log(abs(p)) - 2 * sqrt(g) * x * x * x / 3;
        xs.push_back(x);
        qs.push_back(q);
        out.samples.emplace_back(x, std::move(q));
    }
    out.shape = resum::classify_values(xs, qs);
    return out;
}

int count_nodes(const AsymptoticSeries& prefactor, const std::pair<BigReal, BigReal>& domain, int samples) {
    if (samples < 2) throw std::invalid_argument("count_nodes: need at least two samples");
    if (!(domain.second > domain.first)) throw std::invalid_argument("count_nodes: empty domain");
    bool has_even = false;
    bool has_odd = false;
    for (std::size_t n = 0; n < prefactor.coeffs.size(); ++n) {
        if (prefactor.coeffs[n] == 0) continue;
        (n % 2 == 0 ? has_even : has_odd) = true;
    }
    const bool symmetric = !(has_even && has_odd) && domain.first >= 0;
    const BigReal lo = symmetric ? domain.first : (domain.first < 0 ? domain.first : -domain.second);
    const BigReal hi = domain.second;
    const BigReal width = (hi - lo) / samples;

    std::vector<int> changes;
    int previous_sign = 0;
    for (int i = 0; i <= samples; ++i) {
        const BigReal x = lo + width * i;
        if (symmetric && x == 0) continue;
        const BigReal p = evaluate_prefactor(prefactor, x);
        const int sign = p > 0 ? 1 : (p < 0 ? -1 : 0);
        if (sign == 0) continue;
        if (previous_sign != 0 && sign != previous_sign) changes.push_back(i);
        previous_sign = sign;
    }
    for (std::size_t j = 1; j < changes.size(); ++j)
        if (changes[j] - changes[j - 1] < 2) throw SingularityError("count_nodes: sample too coarse");
    const int count = static_cast<int>(changes.size());
    if (!symmetric) return count;
    return has_odd ? 2 * count + 1 : 2 * count;
}

std::vector<ExactRational> log_cosh_cubic_coeffs(int order) {
    if (order < 0) throw std::invalid_argument("log_cosh_cubic_coeffs: negative order");
    // log cosh u = sum_k 2^{2k} (2^{2k} - 1) B_{2k} u^{2k} / (2k (2k)!), u = x^3 = s^{-3}.
    std::vector<ExactRational> c(static_cast<std::size_t>(order + 1), ExactRational(0));
    BigInt factorial = 1;
    for (int k = 1; 6 * k <= order; ++k) {
        factorial *= (2 * k - 1) * (2 * k);
        const BigInt four_k = BigInt(1) << (2 * k);
        ExactRational v = bernoulli(2 * k) * ExactRational(four_k * (four_k - 1)) / ExactRational(factorial * (2 * k));
        c[static_cast<std::size_t>(6 * k)] = v;
    }
    return c;
}

Complex log_cosh_cubic_zero() {
    const BigReal r = cbrt(2 / pi());
    const BigReal theta = -pi() / 6;
    return {r * cos(theta), r * sin(theta)};
}

}  // namespace borel::singularity
