#pragma once

#include "discrim/ensemble.hpp"
#include "discrim/linalg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace discrim {

/// Positive-operator valued measure: one PSD effect per ensemble index,
/// plus an optional inconclusive residual, resolving the identity within
/// tol::completeness. Weighted square-root constructions resolve the
/// identity only on the span of the ensemble; the leftover projector is
/// stored as the residual so completeness stays checkable on the full
/// space.
class Povm {
  public:
    explicit Povm(std::vector<HermitianMatrix> effects,
                  std::optional<HermitianMatrix> residual = std::nullopt);

    std::size_t size() const { return effects_.size(); }
    Eigen::Index dim() const { return dim_; }
    const HermitianMatrix& effect(std::size_t k) const { return effects_[k]; }
    const std::vector<HermitianMatrix>& effects() const { return effects_; }
    const std::optional<HermitianMatrix>& residual() const { return residual_; }

    static Povm uniform(Eigen::Index dim, std::size_t outcomes);

  private:
    std::vector<HermitianMatrix> effects_;
    std::optional<HermitianMatrix> residual_;
    Eigen::Index dim_ = 0;
};

struct MeasurementReport {
    double success = 0.0;
    double failure = 0.0;
    // per_outcome(i, j) = Tr(M_i rho_j)
    RealMatrix per_outcome;
    double inconclusive_mass = 0.0;
};

/// Success rate sum_k p_k Tr(rho_k M_k) and the full outcome table.
MeasurementReport evaluate(const Ensemble& e, const Povm& m);

/// Pretty good measurement: linear weights p_k rho_k around the
/// pseudo-inverse square root of the average state.
Povm pgm(const Ensemble& e);

/// Quadratically weighted square-root measurement, the first iterate of
/// the fixed-point sequence below. Its failure rate is within a factor
/// of two of optimal by construction.
Povm hjrf_quadratic(const Ensemble& e);

/// Power-weighted square-root measurement with weights p_k^s rho_k^s.
/// s = 1 reproduces pgm, s = 2 reproduces hjrf_quadratic.
Povm belavkin_weighted(const Ensemble& e, double s);

/// Rank-1 basis measurement for pure-state ensembles:
/// e_k = (sum_l p_l^2 |psi_l><psi_l|)^{-1/2+} p_k |psi_k>. Coincides with
/// hjrf_quadratic on pure ensembles.
Povm holevo_pure_basis(const Ensemble& e);

/// One step of the fixed-point measurement iteration:
/// M_k' = T^{-1/2+} p_k^2 rho_k M_k rho_k T^{-1/2+} with
/// T = sum_l p_l^2 rho_l M_l rho_l. Invariant under rescaling of the
/// previous effects, which therefore need not resolve the identity.
Povm jrf_iterate(const Ensemble& e, std::span<const HermitianMatrix> prev);
Povm jrf_iterate(const Ensemble& e, const Povm& prev);

struct JrfTrace {
    std::vector<Povm> iterates;
    std::vector<double> success_history;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Runs the iteration from the uniform start M_k = I/m until the success
/// rate moves by less than tol or max_iter steps elapse. Convergence to
/// the optimum is observed numerically, not guaranteed; the trace lets
/// callers judge.
JrfTrace jrf_converge(const Ensemble& e, double tol = 1e-10,
                      std::size_t max_iter = 500);

/// Sums the effects of a syndrome-level measurement over each original
/// state index, yielding a measurement for the parent ensemble.
Povm coarse_grain_measurement(const Povm& expanded_povm,
                              std::span<const std::size_t> parent_of);

} // namespace discrim
