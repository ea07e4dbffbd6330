#pragma once

#include "discrim/ensemble.hpp"
#include "discrim/measurement.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace discrim {

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Gamma = 1 - Tr sqrt(sum_k p_k^2 rho_k^2), the minimum of the
/// approximate cost over POVM factorizations. Lower bound on the optimal
/// failure rate; 2*Gamma and Gamma*(2-Gamma) bound it from above.
double capital_gamma(const Ensemble& e);

/// Pure-state specialization of capital_gamma (identical value, the
/// states must be rank one).
double gamma_holevo_pure(const Ensemble& e);

/// Approximate cost C = sum_k p_k (1 - ||E_k rho_k||_1) with
/// E_k = M_k^{1/2}. The failure rate of m lies in [C, 2C].
double approximate_cost(const Ensemble& e, const Povm& m);

/// [Gamma, Gamma*(2-Gamma)]; the quadratic measurement's failure rate
/// lands inside.
Interval curlander_interval(const Ensemble& e);

/// (1 + P_succ_opt) * P_fail_opt = (2 - p) * p; upper bound on the
/// quadratic measurement's failure rate given the optimum. Never
/// exceeds 1.
double barnum_knill_bound(double p_fail_opt);

/// 1 - Tr[(sum_k p_k^s rho_k^s)^{1/s}] <= P_fail_opt for s >= 1.
/// s = 2 recovers capital_gamma, s = 1 gives 0.
double s_power_lower_bound(const Ensemble& e, double s);

/// Pure-state PGM bound:
/// 1 - Tr((sum p_l |psi_l><psi_l|)^{-1/2+} (sum p_l^{3/2} |psi_l><psi_l|)).
double pgm_pure_upper_bound(const Ensemble& e);

struct Lemma4Result {
    double lhs = 0.0; // 1 - Tr(E^dagger E rho)
    Interval range;   // [1, 2] x (1 - ||E rho||_1)
};

/// Evaluates both sides of the contraction estimate
/// 1 - Tr(E^dagger E rho) in [1,2] x (1 - ||E rho||_1) for ||E|| <= 1.
Lemma4Result lemma4_check(const Matrix& contraction, const DensityMatrix& rho);

struct BoundReport {
    double gamma = 0.0;
    Interval two_sided;  // [Gamma, 2 Gamma]
    Interval curlander;  // [Gamma, Gamma (2 - Gamma)]
    double hjrf_failure = 0.0;
    double pgm_failure = 0.0;
    std::vector<std::pair<double, double>> s_power; // (s, lower bound)
    std::optional<double> pure_gamma_holevo;
    std::optional<double> pgm_pure_upper;
    double cost_hjrf = 0.0;
};

inline const std::vector<double>& default_s_list() {
    static const std::vector<double> s{1.0, 1.5, 2.0, 3.0, 4.0};
    return s;
}

/// Computes every bound for one ensemble and verifies the inequality
/// chains before returning; an inconsistent report raises NumericError
/// instead of being handed to the caller.
BoundReport bound_report(const Ensemble& e,
                         const std::vector<double>& s_list = default_s_list());

} // namespace discrim
