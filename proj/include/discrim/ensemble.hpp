#pragma once

#include "discrim/linalg.hpp"
#include "discrim/types.hpp"

#include <cstdint>
#include <vector>

namespace discrim {

/// Unit-trace PSD Hermitian matrix. Construction certifies
/// min eigenvalue >= -tol::psd_state and |Tr - 1| <= tol::trace_one.
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianMatrix m);

    Eigen::Index dim() const { return mat_.dim(); }
    const Matrix& mat() const { return mat_.mat(); }
    const HermitianMatrix& hermitian() const { return mat_; }

    static DensityMatrix pure(const Vector& unit_vector);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

  private:
    HermitianMatrix mat_;
};

struct WeightedState {
    double prior;
    DensityMatrix state;
};

/// Finite list of states with prior weights. Zero-weight entries are
/// dropped at construction; prior sums within tol::prior_sum of 1 are
/// renormalized, anything further off is an error rather than silently
/// rescaled.
class Ensemble {
  public:
    explicit Ensemble(std::vector<WeightedState> states);

    std::size_t size() const { return states_.size(); }
    Eigen::Index dim() const { return dim_; }
    double prior(std::size_t k) const { return states_[k].prior; }
    const DensityMatrix& state(std::size_t k) const { return states_[k].state; }

  private:
    std::vector<WeightedState> states_;
    Eigen::Index dim_ = 0;
};

struct EnsembleStats {
    std::size_t m = 0;
    Eigen::Index dim = 0;
    Eigen::Index span_rank = 0;
    bool is_pure = false;
    bool is_equiprobable = false;
};

/// Re-verifies every ensemble invariant and reports shape statistics.
EnsembleStats validate(const Ensemble& e);

/// sum_k p_k^s rho_k^s. s = 1 is the average state; fractional powers go
/// through the functional calculus.
HermitianMatrix weighted_power_sum(const Ensemble& e, double s);

struct SyndromeExpansion {
    Ensemble expanded;
    // expanded outcome index -> index of the originating state
    std::vector<std::size_t> parent_of;
};

/// Pure-state ensemble of weighted eigenvectors: each rho_k contributes
/// its eigenprojectors with weights p_k * mu_kl, eigenvalues below the
/// relative cutoff omitted.
SyndromeExpansion syndrome_expand(const Ensemble& e);

enum class PriorMode : std::uint8_t { Uniform, Random };

Ensemble random_pure_ensemble(Eigen::Index dim, std::size_t m,
                              PriorMode priors, std::uint64_t seed);

Ensemble random_mixed_ensemble(Eigen::Index dim, std::size_t m,
                               Eigen::Index rank, std::uint64_t seed);

/// m pure states in dimension m with pairwise overlaps at most epsilon:
/// canonical basis vectors plus a seeded Gaussian perturbation, rescaled
/// until the Gram condition holds. Priors are seeded random and do not
/// depend on epsilon, so a family sweep varies only the states.
Ensemble near_orthonormal_family(std::size_t m, double epsilon,
                                 std::uint64_t seed);

} // namespace discrim
