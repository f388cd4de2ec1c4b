#pragma once

// Energies of the quartic oscillator -Psi'' + rho x^2 Psi + g x^4 Psi = E Psi
// from resummed perturbation series, and the boundary-condition tuning
// solver that pins the free coefficient a_3 (or tau for excited states).

#include "borel/numeric.hpp"
#include "borel/resum.hpp"
#include "borel/singularity.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace borel::spectrum {

enum class Method { BenderWu, Semiclassical, SemiclassicalShifted, Tuning };
std::string to_string(Method m);

struct SpectrumResult {
    BigReal E;
    int q = 0;
    Method method = Method::BenderWu;
    std::optional<resum::ResumResult> resum;
    std::optional<BigReal> error_estimate;
    std::vector<std::string> warnings;
};

/// Rayleigh-Schroedinger E(g) at rho = 1, b_2(hbar) and b_3(hbar) for level q,
/// as exact coefficient lists (index = power). Cached per order.
std::vector<ExactRational> energy_series(int order);
std::vector<ExactRational> b2_series(int order);
std::vector<ExactRational> b3_series(int q, int order);

/// Resums E(g) at s0 = 1/g.
SpectrumResult bender_wu_energy(const BigReal& g, const resum::ResumConfig& cfg);

struct SemiclassicalPoint {
    BigReal hbar;
    BigReal b2;
    BigReal E;
    BigReal g;
    resum::ResumResult resum;
};

/// E = 1/sqrt(1 - 3 hbar / 2) at rho = 1.
BigReal semiclassical_energy(const BigReal& hbar);

/// Resums b_2 at s0 = 1/hbar (double sum, or the shifted form) and maps it to
/// the (E, g) point with g = hbar b_2 E^3. Rejects hbar outside (0, 2/3).
SemiclassicalPoint semiclassical_point(const BigReal& hbar, const resum::ResumConfig& cfg, bool shifted = false);

struct CorrectedPoint {
    SemiclassicalPoint raw;  // shifted resummation at alpha_M
    singularity::PoleEstimate pole;
    singularity::CorrectionResult correction;
    BigReal g_corr;
};

/// Shifted b_2 resummation with its dominant pole pair subtracted: alpha_T is
/// tuned in [alpha_M, alpha_hi] until L_N oscillates with fixed amplitude over
/// its trusted window, and the fitted pair is carried back to alpha_M.
/// Throws SingularityError when no fixed-amplitude alpha exists or the window
/// holds fewer than three extrema.
CorrectedPoint corrected_semiclassical_point(const BigReal& hbar, const resum::ResumConfig& cfg,
                                             const BigReal& alpha_hi = 4);

struct InfiniteCoupling {
    BigReal E_inf;  // E ~ E_inf g^{1/3}
    BigReal b2;     // b_2(2/3)
    resum::ResumResult resum;
};

InfiniteCoupling infinite_coupling(const resum::ResumConfig& cfg);

struct ExcitedInfinite {
    int q = 0;
    BigReal b3;
    BigReal E_q_inf;  // E_q - E_0 ~ E_q_inf g^{1/3}
    resum::ResumResult resum;
};

/// b_3(2/3) for level q >= 1 and E_{q,inf} = -(3/2) b_3 E_inf. Pass E_inf to
/// skip recomputing the ground-state limit.
ExcitedInfinite excited_infinite(int q, const resum::ResumConfig& cfg,
                                 const std::optional<BigReal>& E_inf = std::nullopt);

// ---------------------------------------------------------------------------
// Tuning

struct TuneConfig {
    int N = 30;        // starting coefficient count
    int N_max = 240;   // escalation stops here
    BigReal alpha = 1;
    BigReal sigma_percent = BigReal("1e-3");
    std::vector<BigReal> lambda_grid;  // empty -> default_lambda_grid()
    unsigned precision_bits = 512;

    static std::vector<BigReal> default_lambda_grid();
    const std::vector<BigReal>& grid() const;
};

class TuneError : public std::runtime_error {
public:
    enum class Kind { BracketNotFound, Indeterminate, OscillationAmbiguity };
    TuneError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct TuneState {
    int k = 4;  // a_1 / a_2
    BigReal a2;
    BigReal a3_low;
    BigReal a3_high;
    BigReal tau;
    int iterations = 0;
};

/// Scaled-frame quantities read off a_1 = k a_2, a_2, a_3:
/// E^ = -2 a_1, rho^ = 12 a_2 + 4 a_1^2, g^ = 30 a_3 + 16 a_1 a_2.
struct ScaledFrame {
    BigReal E_hat;
    BigReal rho_hat;
    BigReal g_hat;
};
ScaledFrame scaled_frame(int k, const BigReal& a2, const BigReal& a3);

struct GroundTuning {
    BigReal a3;
    BigReal E;
    BigReal rho;
    BigReal g;
    ScaledFrame frame;
    int N = 0;  // coefficient count that resolved the final bracket
    TuneState state;
};

/// a_1..a_n of W for a_1 = k a_2 at the working precision.
std::vector<BigReal> w_coefficients(int k, const BigReal& a2, const BigReal& a3, int n);

/// Large-lambda verdict on T_N for a trial a_3: Increasing when T_N overshoots
/// its boundary-condition limit -sqrt(g^)/18 inside the trusted window
/// (a_3 too large), Decreasing when it turns down below it (a_3 too small),
/// Flat when neither happens before T_N and T_{N-1} separate.
resum::CurveShape classify_ground(int k, const BigReal& a2, const BigReal& a3, int N, const TuneConfig& cfg);

/// Bisects a_3 at fixed (k, a_2) until the bracket is narrower than `tol`,
/// doubling N whenever the midpoint classifies as flat. E and rho follow from
/// the scaled frame by x -> c x at the requested g. Throws TuneError.
GroundTuning tune_ground(int k_sign, const BigReal& a2, const BigReal& g, const TuneConfig& cfg, const BigReal& tol);
GroundTuning tune_ground(int k_sign, const ExactRational& a2, const BigReal& g, const TuneConfig& cfg,
                         const BigReal& tol);

/// Ground state at a prescribed (rho >= 0, g). At rho = 1 with k = 4 the
/// choice a_2 = -1/(8 hbar) gives rho^ = (1 - 3 hbar/2)/hbar^2 and E = 1/sqrt(1 - 3 hbar/2)
/// exactly, so only hbar is solved for (so that g^/rho^{3/2} = g). Other rho
/// reduce to rho = 1 by E(rho, g) = sqrt(rho) E(1, g rho^{-3/2}); rho = 0
/// uses a_2 = -3/16, where rho^ vanishes.
GroundTuning tune_ground_rho(const BigReal& rho, const BigReal& g, const TuneConfig& cfg, const BigReal& tol);

enum class Parity { Even, Odd };

/// Prefactor P = sum c_n x^n of Psi_q = P Psi_0 with c_0 = 1, c_2 = -tau
/// (even) or c_1 = 1, c_3 = -tau (odd); returns c_0..c_n_max together with
/// E_q = E - E_0 in the scaled frame (2 tau even, 6 tau - 4 a_1 odd).
std::pair<std::vector<BigReal>, BigReal> prefactor_coefficients(Parity parity, const BigReal& tau,
                                                                const std::vector<BigReal>& w, int n_max);

/// Direction of U_N at the end of its trusted window: Increasing or
/// Decreasing (Flat when U_N does not move).
resum::CurveShape classify_excited(Parity parity, const BigReal& tau, const std::vector<BigReal>& w, int N,
                                   const TuneConfig& cfg);

struct ExcitedLevel {
    BigReal tau;
    BigReal E_q_hat;  // scaled frame
    BigReal E_q;      // at the ground tuning's (rho, g)
    BigReal tau_uncertainty;  // last shift of tau when N was doubled, at least tol
    int N = 0;
    int nodes = 0;
    BigReal node_domain;  // nodes were counted on [0, node_domain] (and its mirror)
};

/// Scans tau over `bracket` in `steps` steps, bisects every change between
/// increasing and decreasing U_N down to `tol`, doubling N (up to N_max)
/// while tau still moves by more than tol, and counts the nodes of the
/// resummed prefactor. Levels come back in ascending tau.
std::vector<ExcitedLevel> tune_excited(Parity parity, const std::pair<BigReal, BigReal>& bracket,
                                       const GroundTuning& ground, const TuneConfig& cfg, const BigReal& tol,
                                       int steps = 40);

}  // namespace borel::spectrum
