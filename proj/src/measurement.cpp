#include "discrim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace discrim {

Povm::Povm(std::vector<HermitianMatrix> effects,
           std::optional<HermitianMatrix> residual)
    : effects_(std::move(effects)), residual_(std::move(residual)) {
    if (effects_.empty())
        throw ValidationError("povm: no effects");
    dim_ = effects_.front().dim();

    Matrix sum = Matrix::Zero(dim_, dim_);
    for (std::size_t k = 0; k < effects_.size(); ++k) {
        const HermitianMatrix& eff = effects_[k];
        if (eff.dim() != dim_) {
            std::ostringstream os;
            os << "povm: effect " << k << " has dimension " << eff.dim()
               << ", expected " << dim_;
            throw ValidationError(os.str());
        }
        SpectralDecomposition dec = spectral_decompose(eff);
        if (dec.eigenvalues.minCoeff() < -tol::psd_effect) {
            std::ostringstream os;
            os << "povm: effect " << k << " has eigenvalue "
               << dec.eigenvalues.minCoeff() << " below -" << tol::psd_effect;
            throw ValidationError(os.str());
        }
        sum += eff.mat();
    }
    if (residual_) {
        if (residual_->dim() != dim_)
            throw ValidationError("povm: residual dimension mismatch");
        SpectralDecomposition dec = spectral_decompose(*residual_);
        if (dec.eigenvalues.minCoeff() < -tol::psd_effect) {
            std::ostringstream os;
            os << "povm: residual has eigenvalue " << dec.eigenvalues.minCoeff()
               << " below -" << tol::psd_effect;
            throw ValidationError(os.str());
        }
        sum += residual_->mat();
    }
    const double defect =
        (sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    if (defect > tol::completeness) {
        std::ostringstream os;
        os << "povm: effects sum differs from identity by " << defect;
        throw ValidationError(os.str());
    }
}

Povm Povm::uniform(Eigen::Index dim, std::size_t outcomes) {
    if (outcomes == 0)
        throw DomainError("Povm::uniform: need at least one outcome");
    std::vector<HermitianMatrix> effects(
        outcomes, HermitianMatrix(Matrix::Identity(dim, dim) /
                                  static_cast<double>(outcomes)));
    return Povm(std::move(effects));
}

MeasurementReport evaluate(const Ensemble& e, const Povm& m) {
    if (m.dim() != e.dim())
        throw DomainError("evaluate: povm and ensemble dimensions differ");
    if (m.size() != e.size()) {
        std::ostringstream os;
        os << "evaluate: povm has " << m.size() << " effects for " << e.size()
           << " states";
        throw DomainError(os.str());
    }

    MeasurementReport rep;
    const std::size_t n = e.size();
    rep.per_outcome.resize(static_cast<Eigen::Index>(n),
                           static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double p = (m.effect(i).mat() * e.state(j).mat()).trace().real();
            if (p < -1e-10 || p > 1.0 + 1e-10) {
                std::ostringstream os;
                os << "evaluate: outcome probability p(" << i << "|" << j
                   << ") = " << p << " out of range";
                throw NumericError(os.str());
            }
            rep.per_outcome(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j)) = p;
        }
    }
    double success = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        success +=
            e.prior(k) * rep.per_outcome(static_cast<Eigen::Index>(k),
                                         static_cast<Eigen::Index>(k));
    rep.success = success;
    rep.failure = 1.0 - success;
    if (m.residual()) {
        double mass = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            mass += e.prior(k) *
                    (m.residual()->mat() * e.state(k).mat()).trace().real();
        rep.inconclusive_mass = mass;
    }
    return rep;
}

namespace {

// Common core of the square-root measurements: sandwich each PSD weight
// W_k between pseudo-inverse square roots of T = sum W_k. The effects
// resolve the support projector of T; anything left over becomes the
// inconclusive residual.
Povm sandwich_measurement(std::span<const Matrix> weights, Eigen::Index dim,
                          const char* what) {
    if (weights.size() == 1) {
        // Single outcome: the sandwich collapses to the support projector.
        HermitianMatrix w{weights[0]};
        if (support_rank(w) == 0) {
            std::ostringstream os;
            os << what << ": weight sum is numerically zero, iteration degenerate";
            throw NumericError(os.str());
        }
        HermitianMatrix proj = support_projector(w);
        Matrix rest = Matrix::Identity(dim, dim) - proj.mat();
        std::optional<HermitianMatrix> residual;
        if (support_rank(w) < dim)
            residual = HermitianMatrix(std::move(rest));
        std::vector<HermitianMatrix> effects{std::move(proj)};
        return Povm(std::move(effects), std::move(residual));
    }

    Matrix total = Matrix::Zero(dim, dim);
    for (const Matrix& w : weights)
        total += w;
    HermitianMatrix t(0.5 * (total + total.adjoint().eval()));
    if (support_rank(t) == 0) {
        std::ostringstream os;
        os << what << ": weight sum is numerically zero, iteration degenerate";
        throw NumericError(os.str());
    }
    const Matrix inv = pinv_sqrt(t).mat();

    std::vector<HermitianMatrix> effects;
    effects.reserve(weights.size());
    for (const Matrix& w : weights) {
        Matrix eff = inv * w * inv;
        effects.emplace_back(0.5 * (eff + eff.adjoint().eval()));
    }

    std::optional<HermitianMatrix> residual;
    if (support_rank(t) < dim) {
        Matrix rest = Matrix::Identity(dim, dim) - support_projector(t).mat();
        residual = HermitianMatrix(std::move(rest));
    }
    return Povm(std::move(effects), std::move(residual));
}

} // namespace

Povm belavkin_weighted(const Ensemble& e, double s) {
    if (s < 1.0)
        throw DomainError("belavkin_weighted: power must be >= 1");
    std::vector<Matrix> weights;
    weights.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double p = std::pow(e.prior(k), s);
        const Matrix& rho = e.state(k).mat();
        if (s == 1.0)
            weights.push_back(p * rho);
        else if (s == 2.0)
            weights.push_back(p * (rho * rho));
        else
            weights.push_back(p * apply_function(e.state(k).hermitian(),
                                                 [s](double x) {
                                                     return std::pow(x, s);
                                                 })
                                      .mat());
    }
    return sandwich_measurement(weights, e.dim(), "belavkin_weighted");
}

Povm pgm(const Ensemble& e) { return belavkin_weighted(e, 1.0); }

Povm hjrf_quadratic(const Ensemble& e) { return belavkin_weighted(e, 2.0); }

Povm holevo_pure_basis(const Ensemble& e) {
    std::vector<Vector> kets;
    kets.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        SpectralDecomposition dec = spectral_decompose(e.state(k).hermitian());
        if (support_rank(e.state(k).hermitian()) != 1) {
            std::ostringstream os;
            os << "holevo_pure_basis: state " << k << " is not pure";
            throw DomainError(os.str());
        }
        kets.push_back(dec.eigenvectors.col(0));
    }

    const Eigen::Index dim = e.dim();
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double p2 = e.prior(k) * e.prior(k);
        total += p2 * (kets[k] * kets[k].adjoint());
    }
    HermitianMatrix t(0.5 * (total + total.adjoint().eval()));
    const Matrix inv = pinv_sqrt(t).mat();

    std::vector<HermitianMatrix> effects;
    effects.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        Vector basis_vector = inv * (e.prior(k) * kets[k]);
        // Phase convention <e_k, psi_k> >= 0 holds by construction: the
        // inner product is p_k <psi_k| T^{-1/2+} |psi_k>.
        Matrix eff = basis_vector * basis_vector.adjoint();
        effects.emplace_back(0.5 * (eff + eff.adjoint().eval()));
    }

    std::optional<HermitianMatrix> residual;
    if (support_rank(t) < dim) {
        Matrix rest = Matrix::Identity(dim, dim) - support_projector(t).mat();
        residual = HermitianMatrix(std::move(rest));
    }
    return Povm(std::move(effects), std::move(residual));
}

Povm jrf_iterate(const Ensemble& e, std::span<const HermitianMatrix> prev) {
    if (prev.size() != e.size()) {
        std::ostringstream os;
        os << "jrf_iterate: " << prev.size() << " previous effects for "
           << e.size() << " states";
        throw DomainError(os.str());
    }
    std::vector<Matrix> weights;
    weights.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (prev[k].dim() != e.dim())
            throw DomainError("jrf_iterate: effect dimension mismatch");
        const double p2 = e.prior(k) * e.prior(k);
        Matrix w = p2 * (e.state(k).mat() * prev[k].mat() * e.state(k).mat());
        weights.push_back(0.5 * (w + w.adjoint().eval()));
    }
    return sandwich_measurement(weights, e.dim(), "jrf_iterate");
}

Povm jrf_iterate(const Ensemble& e, const Povm& prev) {
    return jrf_iterate(e, std::span<const HermitianMatrix>(prev.effects()));
}

JrfTrace jrf_converge(const Ensemble& e, double tol, std::size_t max_iter) {
    if (!(tol > 0.0))
        throw DomainError("jrf_converge: tolerance must be positive");

    JrfTrace trace;
    trace.iterates.push_back(Povm::uniform(e.dim(), e.size()));
    trace.success_history.push_back(evaluate(e, trace.iterates.back()).success);

    for (std::size_t n = 0; n < max_iter; ++n) {
        Povm next = jrf_iterate(e, trace.iterates.back());
        const double success = evaluate(e, next).success;
        trace.iterates.push_back(std::move(next));
        trace.success_history.push_back(success);
        const std::size_t len = trace.success_history.size();
        if (std::abs(trace.success_history[len - 1] -
                     trace.success_history[len - 2]) < tol) {
            trace.converged = true;
            break;
        }
    }
    trace.iterations = trace.success_history.size() - 1;
    return trace;
}

Povm coarse_grain_measurement(const Povm& expanded_povm,
                              std::span<const std::size_t> parent_of) {
    if (parent_of.size() != expanded_povm.size()) {
        std::ostringstream os;
        os << "coarse_grain_measurement: parent map has " << parent_of.size()
           << " entries for " << expanded_povm.size() << " effects";
        throw DomainError(os.str());
    }
    const std::size_t groups =
        1 + *std::max_element(parent_of.begin(), parent_of.end());
    if (groups > expanded_povm.size())
        throw DomainError("coarse_grain_measurement: dangling parent index");

    const Eigen::Index dim = expanded_povm.dim();
    std::vector<Matrix> sums(groups, Matrix::Zero(dim, dim));
    for (std::size_t i = 0; i < parent_of.size(); ++i)
        sums[parent_of[i]] += expanded_povm.effect(i).mat();

    std::vector<HermitianMatrix> effects;
    effects.reserve(groups);
    for (auto& s : sums)
        effects.emplace_back(std::move(s));
    return Povm(std::move(effects), expanded_povm.residual());
}

} // namespace discrim
