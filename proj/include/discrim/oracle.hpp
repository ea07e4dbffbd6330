#pragma once

#include "discrim/ensemble.hpp"
#include "discrim/measurement.hpp"

namespace discrim {

/// Exact optimal failure rate for a two-state ensemble:
/// (1 - ||p_1 rho_1 - p_2 rho_2||_1) / 2.
double helstrom_two_state(const Ensemble& e);

/// Optimality-condition residual: with Y the Hermitian part of
/// sum_k p_k rho_k M_k, returns max_j lambda_max(p_j rho_j - Y). Values
/// at or below a small tolerance certify that m is optimal for e.
double ykl_residual(const Ensemble& e, const Povm& m);

struct DualBound {
    double upper_on_success = 1.0;
    double shift = 0.0; // PSD-restoring shift applied to Y
};

/// Weak-duality upper bound on the optimal success rate: shifts the
/// operator Y from ykl_residual until it dominates every p_k rho_k, then
/// returns min(1, Tr Y'). Sound for any measurement; tight when m is
/// close to optimal.
DualBound dual_bound(const Ensemble& e, const Povm& m);
double dual_upper_on_success(const Ensemble& e, const Povm& m);

/// Rigorous-at-tolerance enclosure of the optimal failure rate. The
/// upper end is achieved by the witness measurement; the lower end comes
/// from the dual bound built on the same witness. The interval width is
/// shift * dim, reported so callers can judge looseness.
struct CertifiedInterval {
    double lower = 0.0;
    double upper = 1.0;
    Povm witness;
    double dual_shift = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

CertifiedInterval certify(const Ensemble& e, double tol = 1e-10,
                          std::size_t max_iter = 500);

} // namespace discrim
