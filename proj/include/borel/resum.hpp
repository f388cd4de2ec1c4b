#pragma once

// Modified Borel resummation by contour integration.
//
// For an asymptotic expansion f(s) ~ sum_n c_n s^{-n}, the contour integral
//   L(lambda) = (1/2 pi i) oint e^{lambda (s - s0)} f(s) / (s - s0) ds
// tends to f(s0) as lambda grows, provided f is analytic for Re(s) >= s0.
// Truncating f at order N and 1/(s - s0) at order P gives the double sum
//   L_N(lambda) = sum_{n<=N} sum_{p<=P} c_n e^{-lambda s0} s0^p
//                 lambda^{n+p} / Gamma(n+p+1),
// and replacing f(s) -> f(s^alpha), s0 -> s0^{1/alpha} rotates the
// singularities of f about the origin.

#include "borel/numeric.hpp"

#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace borel::resum {

enum class SeriesKind {
    InverseS,     // coeffs[n] multiplies s^{-n}
    WEvenPowers,  // coeffs[n] multiplies x^{2n} = s^{-2n}
};

struct AsymptoticSeries {
    std::vector<BigReal> coeffs;
    SeriesKind kind = SeriesKind::InverseS;
    std::string source;

    static AsymptoticSeries from_exact(const std::vector<ExactRational>& exact, SeriesKind kind = SeriesKind::InverseS,
                                       std::string source = {});
    int size() const { return static_cast<int>(coeffs.size()); }
};

/// Raised when a term of a resummation sum is not representable at the
/// working precision; carries the offending (n, p) indices.
class ResumError : public std::runtime_error {
public:
    ResumError(const std::string& what, int n = -1, int p = -1) : std::runtime_error(what), n_(n), p_(p) {}
    int n() const { return n_; }
    int p() const { return p_; }

private:
    int n_;
    int p_;
};

/// Geometric grid of `points` values from `lo` to `hi`.
std::vector<BigReal> geometric_grid(const BigReal& lo, const BigReal& hi, int points);
/// Arithmetic grid lo, lo + step, ..., <= hi.
std::vector<BigReal> arithmetic_grid(const BigReal& lo, const BigReal& hi, const BigReal& step);

struct ResumConfig {
    int N = 30;
    int P = 50;
    BigReal alpha = 1;
    BigReal sigma_percent = BigReal("1e-3");
    std::vector<BigReal> lambda_grid;  // empty -> default_lambda_grid()
    BigReal alpha_min = BigReal("0.05");
    BigReal alpha_max = BigReal("4.0");
    BigReal alpha_step = BigReal("0.05");
    BigReal lambda_rel_width = BigReal("1e-4");
    BigReal alpha_width = BigReal("1e-4");
    unsigned precision_bits = kDefaultPrecisionBits;
    // "no flat region" fires when L_N moves by more than this many sigma
    // over [0.8 lambda_M, lambda_M].
    BigReal flat_window_factor = BigReal(10);

    /// Throws std::invalid_argument on N < 2, P < 0, non-positive alpha or
    /// sigma, or a grid that is not strictly increasing and positive.
    void validate() const;
    const std::vector<BigReal>& grid() const;

    static std::vector<BigReal> default_lambda_grid();
};

enum class CurveShape {
    Flat,
    Increasing,
    Decreasing,
    OscillatingGrowing,
    OscillatingDamped,
    OscillatingFixed,
    Indeterminate,
};

std::string to_string(CurveShape shape);

struct CurveSample {
    BigReal lambda;
    BigReal value;           // L_N
    BigReal value_previous;  // L_{N-1}
};

struct LambdaCurve {
    std::vector<CurveSample> samples;
    CurveShape classification = CurveShape::Indeterminate;

    std::string to_csv() const;
    /// {"classification": ..., "samples": n}
    std::string sidecar_json() const;
};

struct ResumResult {
    BigReal value;
    BigReal alpha_used;
    BigReal lambda_used;
    LambdaCurve curve;
    std::vector<std::string> warnings;
};

/// Double-sum evaluator for fixed (series, s0, alpha, N, P); returns L_N and
/// L_{N-1} together since every selection rule compares the two. For series
/// with vanishing coefficients (parity, lacunary expansions) L_{N-1} drops the
/// last nonzero term rather than a zero one.
class DoubleSumKernel {
public:
    DoubleSumKernel(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, int N, int P);

    std::pair<BigReal, BigReal> evaluate(const BigReal& lambda) const;
    BigReal operator()(const BigReal& lambda) const { return evaluate(lambda).first; }

    const BigReal& rotated_s0() const { return s0_root_; }
    int N() const { return N_; }

private:
    std::vector<BigReal> coeffs_;
    BigReal alpha_;
    BigReal s0_root_;
    std::vector<BigReal> gamma_n_;  // Gamma(alpha n + 1)
    int N_;
    int P_;
};

/// Single-sum evaluator c_0 + sum_{n=1}^N c_n lambda^{alpha n} / Gamma(alpha n + 1)
/// (the shifted form and the prefactor integral U share it).
class SingleSumKernel {
public:
    SingleSumKernel(std::vector<BigReal> coeffs, const BigReal& alpha, int N);

    std::pair<BigReal, BigReal> evaluate(const BigReal& lambda) const;
    BigReal operator()(const BigReal& lambda) const { return evaluate(lambda).first; }

private:
    std::vector<BigReal> coeffs_;  // c_n / Gamma(alpha n + 1)
    BigReal alpha_;
    int N_;
};

BigReal l_n(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, const BigReal& lambda, int N,
            int P);

/// Re-expands f(s + s0) in powers of 1/s, truncated at order N.
AsymptoticSeries shift_series(const AsymptoticSeries& series, const BigReal& s0, int N);

/// c~_0 + sum_{n=1}^N c~_n lambda^{alpha n} / Gamma(alpha n + 1). The form
/// with Gamma(alpha n) is singular at n = 0; the kernel identity for
/// s^{-(n+1)} e^{lambda s} gives Gamma(alpha n + 1), used here.
BigReal shifted_l_n(const AsymptoticSeries& shifted, const BigReal& alpha, const BigReal& lambda, int N);

/// Large-x probe of W = sum a_n x^{2n}:
///   lambda^{-3 alpha} sum_{n=1}^N a_n lambda^{2 n alpha} / Gamma(2 n alpha + 1),
/// tending to -sqrt(g)/18 when the boundary condition holds.
BigReal t_n(const AsymptoticSeries& w, const BigReal& alpha, const BigReal& lambda, int N);

class TKernel {
public:
    TKernel(const AsymptoticSeries& w, const BigReal& alpha, int N);
    std::pair<BigReal, BigReal> evaluate(const BigReal& lambda) const;

private:
    SingleSumKernel inner_;
    BigReal alpha_;
};

/// sum_{n=0}^N c_n lambda^{alpha n} / Gamma(alpha n + 1) for P = sum c_n x^n.
BigReal u_n(const AsymptoticSeries& prefactor, const BigReal& alpha, const BigReal& lambda, int N);

/// Relative difference |L_N - L_{N-1}| / |L_{N-1}| in percent.
BigReal percent_difference(const std::pair<BigReal, BigReal>& values);

/// Any evaluator returning (L_N, L_{N-1}) for a given lambda.
template <class Kernel>
concept PairKernel = requires(const Kernel& k, const BigReal& x) {
    { k.evaluate(x) } -> std::convertible_to<std::pair<BigReal, BigReal>>;
};

/// Largest lambda before the first grid point where L_N and L_{N-1} differ by
/// more than sigma percent, refined by bisection to relative width
/// `rel_width`. Returns the top of the grid when every point passes. Throws
/// ResumError when the first grid point already fails.
template <PairKernel Kernel>
BigReal select_lambda_max(const Kernel& kernel, const std::vector<BigReal>& grid, const BigReal& sigma_percent,
                          const BigReal& rel_width);

BigReal select_lambda_max(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha, int N, int P,
                          const BigReal& sigma_percent, const ResumConfig& cfg = {});

/// Monotonicity test below lambda_max (grid points plus lambda_max itself).
/// A lone turn of L_N is the truncation error setting in and is tolerated;
/// the curve counts as non-monotonic only when L_N and L_{N-1} both turn,
/// i.e. an oscillation coming from a singularity.
template <PairKernel Kernel>
bool monotonic_below(const Kernel& kernel, const std::vector<BigReal>& grid, const BigReal& lambda_max);

struct AlphaSelection {
    BigReal alpha;
    BigReal lambda;
};

/// Largest alpha on the configured grid (refined by bisection) for which
/// L_N is monotonic for lambda < lambda_M(alpha). When several alpha qualify
/// the larger one wins, so a constant series returns the top of the grid.
/// `make_kernel(alpha)` builds the evaluator for a trial alpha.
template <class MakeKernel>
AlphaSelection select_alpha_max(const MakeKernel& make_kernel, const ResumConfig& cfg);

AlphaSelection select_alpha_max(const AsymptoticSeries& series, const BigReal& s0, int N, int P,
                                const BigReal& sigma_percent, const ResumConfig& cfg = {});

/// Samples L_N and L_{N-1} on `grid` (only points <= lambda_cap, when given).
template <PairKernel Kernel>
LambdaCurve sample_curve(const Kernel& kernel, const std::vector<BigReal>& grid,
                         const std::optional<BigReal>& lambda_cap = std::nullopt);

/// Shape of the L_N column of `curve`. Needs >= 8 samples.
CurveShape classify_curve(const LambdaCurve& curve, const BigReal& flat_tol = BigReal("1e-3"));
/// Same rule over a bare (x, y) sequence.
CurveShape classify_values(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys,
                           const BigReal& flat_tol = BigReal("1e-3"));

/// Full pipeline for f(s0): alpha_M by monotonicity, lambda_M by the sigma
/// rule, value L_N(lambda_M).
ResumResult resum(const AsymptoticSeries& series, const BigReal& s0, const ResumConfig& cfg);
/// Same with the shifted single-sum form.
ResumResult resum_shifted(const AsymptoticSeries& series, const BigReal& s0, const ResumConfig& cfg);
/// Evaluate at a fixed alpha (lambda_M still chosen by the sigma rule).
ResumResult resum_at_alpha(const AsymptoticSeries& series, const BigReal& s0, const BigReal& alpha,
                           const ResumConfig& cfg, bool shifted = false);

}  // namespace borel::resum

#include "borel/resum_impl.hpp"
