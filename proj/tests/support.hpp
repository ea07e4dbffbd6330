#pragma once

#include "discrim/ensemble.hpp"
#include "discrim/linalg.hpp"
#include "discrim/measurement.hpp"
#include "discrim/rng.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

namespace testsupport {

using namespace discrim;

/// Two pure qubits with real overlap c and priors (p1, 1 - p1).
inline Ensemble two_pure_qubits(double overlap, double p1 = 0.5) {
    Vector psi1(2), psi2(2);
    psi1 << 1.0, 0.0;
    psi2 << overlap, std::sqrt(1.0 - overlap * overlap);
    std::vector<WeightedState> states;
    states.push_back({p1, DensityMatrix::pure(psi1)});
    states.push_back({1.0 - p1, DensityMatrix::pure(psi2)});
    return Ensemble(std::move(states));
}

/// Helstrom failure rate for two pure states: (1 - sqrt(1 - 4 p q c^2))/2.
inline double helstrom_pure_closed_form(double overlap, double p1) {
    const double p2 = 1.0 - p1;
    return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * p1 * p2 * overlap * overlap));
}

inline Matrix random_unitary(Eigen::Index dim, Rng& rng) {
    Matrix g = rng.gaussian_matrix(dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the result is Haar distributed.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
    }
    return q;
}

inline Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    return random_unitary(rows, rng).leftCols(cols);
}

/// Random operator with norm at most 1 (exactly 1 when saturate is set).
inline Matrix random_contraction(Eigen::Index dim, Rng& rng,
                                 bool saturate = false) {
    Matrix g = rng.gaussian_matrix(dim, dim);
    Eigen::JacobiSVD<Matrix> svd(g);
    double scale = svd.singularValues()(0);
    if (!saturate)
        scale /= rng.uniform();
    return g / scale;
}

inline HermitianMatrix random_psd(Eigen::Index dim, Rng& rng,
                                  Eigen::Index rank = -1) {
    if (rank < 0)
        rank = dim;
    Matrix g = rng.gaussian_matrix(dim, rank);
    return HermitianMatrix(Matrix(g * g.adjoint()));
}

/// Full-rank random POVM: PSD blocks normalized by the inverse square
/// root of their sum. Built directly from linalg pieces so measurement
/// constructions are tested against independently made inputs.
inline Povm random_povm(Eigen::Index dim, std::size_t outcomes, Rng& rng) {
    std::vector<HermitianMatrix> blocks;
    Matrix total = Matrix::Zero(dim, dim);
    for (std::size_t k = 0; k < outcomes; ++k) {
        blocks.push_back(random_psd(dim, rng));
        total += blocks.back().mat();
    }
    const Matrix inv = pinv_sqrt(HermitianMatrix(std::move(total))).mat();
    std::vector<HermitianMatrix> effects;
    for (const auto& b : blocks) {
        Matrix eff = inv * b.mat() * inv;
        effects.emplace_back(0.5 * (eff + eff.adjoint().eval()));
    }
    return Povm(std::move(effects));
}

/// Independent trace-norm oracle: square roots of the Gram spectrum via
/// the self-adjoint eigensolver, a different algorithm from the SVD the
/// implementation uses. Square-rooting the Gram eigenvalues amplifies
/// round-off at zero modes, so comparisons run at ~1e-6.
inline double gram_trace_norm(const Matrix& a) {
    SpectralDecomposition dec =
        spectral_decompose(HermitianMatrix(Matrix(a.adjoint() * a)));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
        sum += std::sqrt(std::max(dec.eigenvalues(i), 0.0));
    return sum;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace testsupport
