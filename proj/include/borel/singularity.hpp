#pragma once

// Singularities of resummed functions: zeros of the wavefunction seen as
// oscillations of the resummed log, node counting on excited prefactors, and
// the leading pole-pair correction to a resummed value.
//
// A conjugate pair of singularities at s_p^{1/alpha} = x_p +- i y_p adds
//   c cos(lambda y_p + nu) e^{lambda (x_p - s0^{1/alpha})}
// to L(lambda). The amplitude is constant exactly when x_p = s0^{1/alpha},
// which is how x_p is located; y_p comes from the period.

#include "borel/numeric.hpp"
#include "borel/resum.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace borel::singularity {

class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PoleEstimate {
    BigReal x_p;
    BigReal y_p;
    BigReal amplitude_c;
    BigReal phase_nu;
    BigReal alpha_T;
    Complex residue_T;
    Complex residue_M;
    Complex s_c;
};

struct CorrectionResult {
    BigReal raw_value;
    BigReal correction;
    BigReal corrected_value;
};

/// Summary of an oscillating curve sampled on an even grid.
struct OscillationFit {
    std::vector<BigReal> extrema;  // positions, refined by a parabola through three samples
    BigReal growth;                // mean log of successive swing ratios, per half period
    BigReal period;
    BigReal amplitude;  // c
    BigReal phase;      // nu, in (-pi, pi]
    BigReal offset;     // mean level
};

/// Needs at least three interior extrema. Throws SingularityError otherwise.
OscillationFit fit_oscillation(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys);

struct LocateConfig {
    int N = 240;
    int P = 300;
    BigReal lambda_lo = 80;
    BigReal lambda_hi = 160;
    BigReal lambda_step = BigReal("0.5");
    BigReal s0_lo = BigReal("0.5");
    BigReal s0_hi = 1;
    BigReal tol = BigReal("1e-4");
    unsigned precision_bits = 320;
};

/// Tunes s0 until S_N(lambda) (the double-sum resummation of w at s0,
/// alpha = 1) oscillates with fixed amplitude over the configured lambda
/// window; then x_p = s0 and y_p = 2 pi / period. `s0_guess`, when inside the
/// configured bracket, is tried first to orient the search.
PoleEstimate locate_zero_s_plane(const resum::AsymptoticSeries& w, const BigReal& s0_guess, const LocateConfig& cfg);

struct RealZeroConfig {
    BigReal s0_start = 2;
    BigReal s0_step = BigReal("0.02");
    BigReal s0_min = BigReal("0.02");
    BigReal max_residual = BigReal("1e-2");  // relative rms of the linear fit
    resum::ResumConfig resum;
};

/// Walks s0 down from s0_start, resumming W at alpha = 1, until the
/// resummation stops settling; fits Psi = e^W to a + b s over the last 20%
/// of the good points and returns the root -a/b. Empty when no breakdown
/// happens down to s0_min (no zero on the positive axis).
std::optional<BigReal> locate_zero_real(const resum::AsymptoticSeries& w, const RealZeroConfig& cfg);

/// Subtracts the pole pair at alpha_M from `raw`:
///   rho_M e^{lambda (s_c - s0^{1/alpha_M})} / (s_c - s0^{1/alpha_M}) + c.c.,
/// with s_c = (s0^{1/alpha_T} + i y_p)^{alpha_T/alpha_M} and rho_T = i y_p (c/2) e^{i nu}.
/// The residue of f(s^alpha) at p^{1/alpha} is rho p^{1/alpha}/(alpha p), hence
/// rho_M = rho_T (alpha_T/alpha_M) s_c / s_p^{1/alpha_T}.
/// `s0` is the expansion point in the frame being rotated (0 for the shifted
/// form). Fills the residue fields of `pole`. Throws SingularityError
/// ("pole dominates") when the correction exceeds 10% of |raw|.
CorrectionResult pole_correction(const BigReal& raw, const BigReal& s0, const BigReal& alpha_M,
                                 const BigReal& lambda, PoleEstimate& pole);

/// Fixed-amplitude tuning in alpha: `curve(alpha)` returns (lambda, L)
/// samples on an even grid; bisects alpha in [lo, hi] until the swing growth
/// changes sign, then fits the oscillation. x_p is set to s0^{1/alpha_T}.
PoleEstimate fit_pole_in_alpha(
    const std::function<std::pair<std::vector<BigReal>, std::vector<BigReal>>(const BigReal&)>& curve,
    const BigReal& s0, BigReal lo, BigReal hi, const BigReal& tol);

/// Resummed prefactor at x: U(x) = sum c_n x^n / n! (the alpha = 1 single-sum
/// kernel with lambda = x). Throws SingularityError where the last nonzero
/// term is not negligible against the largest one.
BigReal evaluate_prefactor(const resum::AsymptoticSeries& prefactor, const BigReal& x);

struct QCheck {
    std::vector<std::pair<BigReal, BigReal>> samples;  // (x, Q)
    resum::CurveShape shape = resum::CurveShape::Indeterminate;
};

/// Q(x) = log|P(x)| - (2/3) sqrt(g) x^3 on the given points, with its shape.
QCheck prefactor_q_check(const resum::AsymptoticSeries& prefactor, const BigReal& g,
                         const std::vector<BigReal>& x_samples);

/// Sign changes of P on (domain.first, domain.second], extended to the whole
/// axis by parity when P is even or odd (an odd P adds the node at 0).
/// Throws SingularityError ("sample too coarse") when two changes are closer
/// than two sample widths.
int count_nodes(const resum::AsymptoticSeries& prefactor, const std::pair<BigReal, BigReal>& domain, int samples);

/// W = log(e^{x^3} + e^{-x^3}) = log 2 + log cosh(x^3) as an inverse-s series
/// (s = 1/x) through s^{-order}. Exact.
std::vector<ExactRational> log_cosh_cubic_coeffs(int order);

/// Closed-form zero of e^{x^3} + e^{-x^3} nearest the positive real s axis:
/// (2/pi)^{1/3} e^{-i pi/6} (and its conjugate).
Complex log_cosh_cubic_zero();

}  // namespace borel::singularity
