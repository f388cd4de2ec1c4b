#pragma once

// Exact perturbative coefficients for the quartic anharmonic oscillator.
//
// The ground-state wavefunction is written as exp(W) with
// W = sum_{n>=1} a_n x^{2n}; substituting into
//   -Psi'' + rho x^2 Psi + g x^4 Psi = E Psi
// gives E = -2 a_1, rho = 12 a_2 + 4 a_1^2, g = 30 a_3 + 16 a_1 a_2 and a
// quadratic recurrence for a_{n+1}, n >= 3. Everything here is exact rational
// arithmetic; the recurrence is also exposed as a template so the tuning
// solver can run it over BigReal.

#include "borel/numeric.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace borel::series {

/// Coefficients a_1..a_N of W = sum a_n x^{2n}.
struct WSeries {
    std::vector<ExactRational> coeffs;  // coeffs[n-1] = a_n

    int order() const { return static_cast<int>(coeffs.size()); }
    const ExactRational& a(int n) const { return coeffs.at(static_cast<std::size_t>(n - 1)); }
};

enum class Flavor { BenderWu, Semiclassical, Excited };

/// Sparse double expansion, e.g. a_n = sum_m a_{n,m} g^m.
class BivariateSeries {
public:
    BivariateSeries() = default;
    BivariateSeries(Flavor flavor, int level) : flavor_(flavor), level_(level) {}

    Flavor flavor() const { return flavor_; }
    /// Excitation level q for the excited flavor, 0 otherwise.
    int level() const { return level_; }

    /// Zero when (n, m) was never stored.
    ExactRational get(int n, int m) const;
    void set(int n, int m, ExactRational value);

    int max_n() const { return max_n_; }
    int max_m() const { return max_m_; }
    const std::map<std::pair<int, int>, ExactRational>& entries() const { return coeffs_; }

private:
    Flavor flavor_ = Flavor::BenderWu;
    int level_ = 0;
    int max_n_ = 0;
    int max_m_ = 0;
    std::map<std::pair<int, int>, ExactRational> coeffs_;
};

enum class Variable { G, Hbar };

struct ScalarSeries {
    Variable variable = Variable::G;
    std::vector<ExactRational> coeffs;  // coeffs[k] multiplies variable^k

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Applies the ground-state recurrence in place: entries 0..2 of `a` hold
/// a_1..a_3, the remainder (up to a.size()) is overwritten.
template <class T>
void apply_w_recurrence(std::vector<T>& a) {
    const int n_max = static_cast<int>(a.size());
    for (int n = 3; n < n_max; ++n) {
        T sum = 0;
        for (int m = 1; m <= n; ++m) {
            sum += T(4 * m * (n - m + 1)) * a[m - 1] * a[n - m];
        }
        a[n] = -sum / T(2 * (n + 1) * (2 * n + 1));
    }
}

/// a_1..a_{n_max} from the three free coefficients. Results are memoized per
/// exact (a1, a2, a3); the cache is invisible to callers.
WSeries extend_w_series(const ExactRational& a1, const ExactRational& a2, const ExactRational& a3, int n_max);

/// Bender-Wu expansion at rho = 1: a_{n,m} (zero for m < n-1) for all
/// m <= m_max, n <= n_max, and the Rayleigh-Schroedinger series E(g) to g^m_max.
std::pair<BivariateSeries, ScalarSeries> bender_wu_expand(int n_max, int m_max);

/// Semi-classical expansion a_n = sum_m a_{n,m} hbar^m with a_1 = -1/2,
/// a_2 = -1/8; returns a_{n,m} for 3 <= n <= n_max, m <= m_max and
/// b_2(hbar) = 16 a_1 a_2 + 30 a_3 hbar to hbar^m_max.
std::pair<BivariateSeries, ScalarSeries> semiclassical_expand(int n_max, int m_max);

/// Excited-state prefactor P_q = sum c_{n,k} hbar^k x^n and
/// b_3(hbar) = sum b_{3,k} hbar^k for level q, orders k <= k_max and powers
/// n <= n_max. Normalized by c_{q,0} = 1, c_{q,k>0} = 0. Throws
/// std::invalid_argument for q < 0.
std::pair<BivariateSeries, ScalarSeries> excited_expand(int q, int n_max, int k_max);

/// {"variable": "g"|"hbar", "coeffs": ["num/den", ...]}
std::string to_json(const ScalarSeries& s);
ScalarSeries scalar_series_from_json(const std::string& text);

/// Convenience: W(x) read as a polynomial in s = 1/x, i.e. the coefficient
/// list c_k of s^{-k} with c_{2n} = a_n.
std::vector<ExactRational> w_inverse_s_coeffs(const WSeries& w);

}  // namespace borel::series
