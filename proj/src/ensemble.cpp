#include "discrim/ensemble.hpp"

#include "discrim/rng.hpp"

#include <cmath>
#include <sstream>

namespace discrim {

namespace {
// Ensembles beyond this size are outside the desk-scale envelope the
// numerics are tuned for.
constexpr std::size_t kMaxStates = 64;
} // namespace

DensityMatrix::DensityMatrix(HermitianMatrix m) : mat_(std::move(m)) {
    const double trace = mat_.trace();
    if (std::abs(trace - 1.0) > tol::trace_one) {
        std::ostringstream os;
        os << "density matrix: trace " << trace << " differs from 1 by more than "
           << tol::trace_one;
        throw ValidationError(os.str());
    }
    SpectralDecomposition dec = spectral_decompose(mat_);
    const double min_eig = dec.eigenvalues.minCoeff();
    if (min_eig < -tol::psd_state) {
        std::ostringstream os;
        os << "density matrix: min eigenvalue " << min_eig << " below -"
           << tol::psd_state;
        throw ValidationError(os.str());
    }
}

DensityMatrix DensityMatrix::pure(const Vector& unit_vector) {
    const double norm = unit_vector.norm();
    if (std::abs(norm - 1.0) > 1e-9)
        throw DomainError("DensityMatrix::pure: vector is not normalized");
    Matrix proj = unit_vector * unit_vector.adjoint();
    return DensityMatrix(HermitianMatrix(std::move(proj)));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityMatrix(HermitianMatrix(std::move(m)));
}

Ensemble::Ensemble(std::vector<WeightedState> states) {
    if (states.empty())
        throw ValidationError("ensemble: no states");

    dim_ = states.front().state.dim();
    double sum = 0.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& ws = states[k];
        if (!std::isfinite(ws.prior) || ws.prior < 0.0) {
            std::ostringstream os;
            os << "ensemble: prior of state " << k << " is " << ws.prior
               << ", must be nonnegative and finite";
            throw ValidationError(os.str());
        }
        if (ws.state.dim() != dim_) {
            std::ostringstream os;
            os << "ensemble: state " << k << " has dimension " << ws.state.dim()
               << ", expected " << dim_;
            throw ValidationError(os.str());
        }
        sum += ws.prior;
    }
    if (std::abs(sum - 1.0) > tol::prior_sum) {
        std::ostringstream os;
        os << "ensemble: priors sum to " << sum << ", further than "
           << tol::prior_sum << " from 1";
        throw ValidationError(os.str());
    }

    // Renormalization is skipped when the sum is already 1 to round-off,
    // so loading an ensemble back from disk reproduces its priors
    // bit-exactly.
    const bool renormalize = std::abs(sum - 1.0) > 1e-12;
    for (auto& ws : states) {
        if (ws.prior == 0.0)
            continue;
        if (renormalize)
            ws.prior /= sum;
        states_.push_back(std::move(ws));
    }
    if (states_.empty())
        throw ValidationError("ensemble: all priors are zero");
    if (states_.size() > kMaxStates) {
        std::ostringstream os;
        os << "ensemble: " << states_.size() << " states exceeds the supported "
           << kMaxStates;
        throw ValidationError(os.str());
    }
}

EnsembleStats validate(const Ensemble& e) {
    EnsembleStats stats;
    stats.m = e.size();
    stats.dim = e.dim();

    double sum = 0.0;
    bool pure = true;
    for (std::size_t k = 0; k < e.size(); ++k) {
        sum += e.prior(k);
        if (e.prior(k) <= 0.0) {
            std::ostringstream os;
            os << "ensemble: prior of state " << k << " is not positive";
            throw ValidationError(os.str());
        }
        // DensityMatrix invariants were certified at construction; re-check
        // the rank here for the purity flag.
        if (support_rank(e.state(k).hermitian()) != 1)
            pure = false;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "ensemble: priors sum to " << sum;
        throw ValidationError(os.str());
    }

    stats.is_pure = pure;
    stats.is_equiprobable = true;
    const double uniform = 1.0 / static_cast<double>(e.size());
    for (std::size_t k = 0; k < e.size(); ++k)
        if (std::abs(e.prior(k) - uniform) > 1e-12)
            stats.is_equiprobable = false;

    stats.span_rank = support_rank(weighted_power_sum(e, 1.0));
    return stats;
}

HermitianMatrix weighted_power_sum(const Ensemble& e, double s) {
    if (s < 1.0)
        throw DomainError("weighted_power_sum: power must be >= 1");
    const Eigen::Index dim = e.dim();
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double weight = std::pow(e.prior(k), s);
        const Matrix& rho = e.state(k).mat();
        if (s == 1.0)
            total += weight * rho;
        else if (s == 2.0)
            total += weight * (rho * rho);
        else
            total += weight *
                     apply_function(e.state(k).hermitian(), [s](double x) {
                         return std::pow(x, s);
                     }).mat();
    }
    return HermitianMatrix(0.5 * (total + total.adjoint().eval()));
}

SyndromeExpansion syndrome_expand(const Ensemble& e) {
    const double cutoff = config::relative_cutoff();
    std::vector<WeightedState> expanded;
    std::vector<std::size_t> parent_of;
    for (std::size_t k = 0; k < e.size(); ++k) {
        SpectralDecomposition dec = spectral_decompose(e.state(k).hermitian());
        const double cut = cutoff * dec.eigenvalues.cwiseAbs().maxCoeff();
        for (Eigen::Index l = 0; l < dec.eigenvalues.size(); ++l) {
            const double mu = dec.eigenvalues(l);
            if (mu <= cut)
                continue;
            expanded.push_back(
                {e.prior(k) * mu, DensityMatrix::pure(dec.eigenvectors.col(l))});
            parent_of.push_back(k);
        }
    }
    return {Ensemble(std::move(expanded)), std::move(parent_of)};
}

namespace {

std::vector<double> draw_priors(Rng& rng, std::size_t m, PriorMode mode) {
    std::vector<double> priors(m, 1.0 / static_cast<double>(m));
    if (mode == PriorMode::Random) {
        double sum = 0.0;
        for (auto& p : priors) {
            p = rng.uniform();
            sum += p;
        }
        for (auto& p : priors)
            p /= sum;
    }
    return priors;
}

} // namespace

Ensemble random_pure_ensemble(Eigen::Index dim, std::size_t m,
                              PriorMode priors, std::uint64_t seed) {
    if (dim < 1 || m < 1)
        throw DomainError("random_pure_ensemble: dim and m must be >= 1");
    Rng rng(seed);
    std::vector<Vector> kets;
    for (std::size_t k = 0; k < m; ++k)
        kets.push_back(rng.gaussian_vector(dim).normalized());
    std::vector<double> weights = draw_priors(rng, m, priors);
    std::vector<WeightedState> states;
    for (std::size_t k = 0; k < m; ++k)
        states.push_back({weights[k], DensityMatrix::pure(kets[k])});
    return Ensemble(std::move(states));
}

Ensemble random_mixed_ensemble(Eigen::Index dim, std::size_t m,
                               Eigen::Index rank, std::uint64_t seed) {
    if (dim < 1 || m < 1)
        throw DomainError("random_mixed_ensemble: dim and m must be >= 1");
    if (rank < 1 || rank > dim)
        throw DomainError("random_mixed_ensemble: need 1 <= rank <= dim");
    Rng rng(seed);
    std::vector<DensityMatrix> rhos;
    for (std::size_t k = 0; k < m; ++k) {
        Matrix g = rng.gaussian_matrix(dim, rank);
        Matrix gram = g * g.adjoint();
        gram /= gram.trace().real();
        rhos.push_back(DensityMatrix(HermitianMatrix(std::move(gram))));
    }
    std::vector<double> weights = draw_priors(rng, m, PriorMode::Random);
    std::vector<WeightedState> states;
    for (std::size_t k = 0; k < m; ++k)
        states.push_back({weights[k], std::move(rhos[k])});
    return Ensemble(std::move(states));
}

Ensemble near_orthonormal_family(std::size_t m, double epsilon,
                                 std::uint64_t seed) {
    if (m < 1)
        throw DomainError("near_orthonormal_family: m must be >= 1");
    if (epsilon < 0.0 || epsilon >= 1.0)
        throw DomainError("near_orthonormal_family: need 0 <= epsilon < 1");

    const auto dim = static_cast<Eigen::Index>(m);
    Rng rng(seed);
    // Priors first: they are a function of the seed alone, so sweeping
    // epsilon moves the states while the weights stay fixed.
    std::vector<double> weights = draw_priors(rng, m, PriorMode::Random);
    std::vector<Vector> bumps;
    for (std::size_t k = 0; k < m; ++k)
        bumps.push_back(rng.gaussian_vector(dim));

    std::vector<Vector> kets(m);
    double scale = epsilon;
    for (int attempt = 0;; ++attempt) {
        for (std::size_t k = 0; k < m; ++k) {
            Vector v = Vector::Unit(dim, static_cast<Eigen::Index>(k)) +
                       scale * bumps[k];
            kets[k] = v.normalized();
        }
        double max_overlap = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                max_overlap = std::max(max_overlap, std::abs(kets[i].dot(kets[j])));
        if (max_overlap <= epsilon || epsilon == 0.0)
            break;
        if (attempt > 200)
            throw NumericError("near_orthonormal_family: overlap trimming stalled");
        scale *= 0.5;
    }

    std::vector<WeightedState> states;
    for (std::size_t k = 0; k < m; ++k)
        states.push_back({weights[k], DensityMatrix::pure(kets[k])});
    return Ensemble(std::move(states));
}

} // namespace discrim
