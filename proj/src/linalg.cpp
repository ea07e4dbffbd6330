#include "discrim/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <atomic>
#include <cmath>
#include <sstream>
#include <vector>

namespace discrim {

namespace config {

namespace {
std::atomic<double> g_relative_cutoff{1e-10};
}

double relative_cutoff() { return g_relative_cutoff.load(); }

void set_relative_cutoff(double cutoff) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw DomainError("relative cutoff must be a positive finite number");
    g_relative_cutoff.store(cutoff);
}

} // namespace config

namespace {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        std::ostringstream os;
        os << what << ": matrix contains NaN or Inf entries";
        throw DomainError(os.str());
    }
}

} // namespace

HermitianMatrix::HermitianMatrix(Matrix m) {
    if (m.rows() != m.cols())
        throw DomainError("HermitianMatrix: matrix must be square");
    require_finite(m, "HermitianMatrix");
    const double scale = m.cwiseAbs().maxCoeff();
    const double defect = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (defect > tol::hermiticity * std::max(scale, 1.0)) {
        std::ostringstream os;
        os << "HermitianMatrix: Hermitian defect " << defect
           << " exceeds tolerance " << tol::hermiticity * std::max(scale, 1.0);
        throw DomainError(os.str());
    }
    mat_ = 0.5 * (m + m.adjoint().eval());
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
    if (solver.info() != Eigen::Success)
        throw NumericError("spectral_decompose: eigensolver did not converge");

    const Eigen::Index n = a.dim();
    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues().reverse();
    dec.eigenvectors = solver.eigenvectors().rowwise().reverse();

    // Phase canonicalization: first component of each eigenvector with
    // magnitude above a relative floor is rotated onto the positive reals.
    for (Eigen::Index j = 0; j < n; ++j) {
        auto col = dec.eigenvectors.col(j);
        const double floor = 1e-8 * col.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::abs(col(i));
            if (mag > floor) {
                col *= std::conj(col(i)) / mag;
                break;
            }
        }
    }

    const double scale = 1.0 + a.mat().norm();
    const double recon = (dec.reconstruct() - a.mat()).norm();
    if (recon > tol::spectral * scale)
        throw NumericError("spectral_decompose: reconstruction residual too large");
    const double unit =
        (dec.eigenvectors.adjoint() * dec.eigenvectors - Matrix::Identity(n, n)).norm();
    if (unit > tol::spectral)
        throw NumericError("spectral_decompose: eigenvector basis not unitary");
    return dec;
}

HermitianMatrix apply_function(const HermitianMatrix& a,
                               const std::function<double(double)>& f) {
    SpectralDecomposition dec = spectral_decompose(a);
    const double scale = dec.eigenvalues.cwiseAbs().maxCoeff();
    // Eigenvalues inside the noise band around zero are snapped to exactly
    // zero before f sees them. Round-off near the kernel otherwise gets
    // amplified catastrophically by functions with unbounded derivative at
    // zero (sqrt turns 1e-16 noise into 1e-8 output). The band reaches
    // down to the PSD slack so sqrt of a barely-PSD effect stays defined.
    const double snap_below = -tol::psd_effect * std::max(scale, 1.0);
    const double snap_above = tol::kernel_noise * scale;
    RealVector mapped(dec.eigenvalues.size());
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
        double lambda = dec.eigenvalues(i);
        if (lambda >= snap_below && lambda <= snap_above)
            lambda = 0.0;
        const double value = f(lambda);
        if (!std::isfinite(value)) {
            std::ostringstream os;
            os << "apply_function: f undefined at eigenvalue " << lambda;
            throw DomainError(os.str());
        }
        mapped(i) = value;
    }
    Matrix result =
        dec.eigenvectors * mapped.asDiagonal() * dec.eigenvectors.adjoint();
    return HermitianMatrix(0.5 * (result + result.adjoint().eval()));
}

namespace {

// Shared spine of pinv_sqrt / support_projector / support_rank: one
// decomposition, one cutoff decision per eigenvalue.
HermitianMatrix map_supported(const HermitianMatrix& a, double cutoff,
                              double on_support(double), const char* what) {
    SpectralDecomposition dec = spectral_decompose(a);
    const double scale = dec.eigenvalues.cwiseAbs().maxCoeff();
    const double cut = cutoff * scale;
    RealVector mapped = RealVector::Zero(dec.eigenvalues.size());
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
        const double lambda = dec.eigenvalues(i);
        if (lambda > cut)
            mapped(i) = on_support(lambda);
        else if (lambda < -cut) {
            std::ostringstream os;
            os << what << ": eigenvalue " << lambda
               << " below -cutoff*lambda_max = " << -cut << ", input not PSD";
            throw DomainError(os.str());
        }
    }
    Matrix result =
        dec.eigenvectors * mapped.asDiagonal() * dec.eigenvectors.adjoint();
    return HermitianMatrix(0.5 * (result + result.adjoint().eval()));
}

} // namespace

HermitianMatrix pinv_sqrt(const HermitianMatrix& a, double cutoff) {
    return map_supported(
        a, cutoff, [](double lambda) { return 1.0 / std::sqrt(lambda); },
        "pinv_sqrt");
}

HermitianMatrix support_projector(const HermitianMatrix& a, double cutoff) {
    return map_supported(
        a, cutoff, [](double) { return 1.0; }, "support_projector");
}

Eigen::Index support_rank(const HermitianMatrix& a, double cutoff) {
    SpectralDecomposition dec = spectral_decompose(a);
    const double cut = cutoff * dec.eigenvalues.cwiseAbs().maxCoeff();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
        if (dec.eigenvalues(i) > cut)
            ++rank;
    return rank;
}

double trace_norm(const Matrix& a) {
    require_finite(a, "trace_norm");
    // Jacobi SVD computes the singular values directly; a square root of
    // the Gram spectrum would amplify noise at zero modes. The test suite
    // cross-checks against that independent eigenvalue route.
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

double operator_norm(const Matrix& a) {
    require_finite(a, "operator_norm");
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

namespace {

// Orthonormal vectors spanning the complement of `taken` inside C^dim,
// built by projecting canonical basis vectors in index order. Two
// Gram-Schmidt passes keep the result orthogonal to working precision.
std::vector<Vector> complete_basis(std::vector<Vector> taken,
                                   Eigen::Index dim, Eigen::Index want) {
    std::vector<Vector> out;
    for (Eigen::Index k = 0; k < dim && std::ssize(out) < want; ++k) {
        Vector v = Vector::Unit(dim, k);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vector& u : taken)
                v -= u.dot(v) * u;
        const double norm = v.norm();
        if (norm > 1e-8) {
            v /= norm;
            out.push_back(v);
            taken.push_back(v);
        }
    }
    if (std::ssize(out) < want)
        throw NumericError("closest_isometry: basis completion fell short");
    return out;
}

} // namespace

Matrix closest_isometry(const Matrix& a) {
    require_finite(a, "closest_isometry");
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    if (rows < cols)
        throw DomainError("closest_isometry: codomain smaller than domain");

    HermitianMatrix gram{Matrix(a.adjoint() * a)};
    Matrix partial = a * pinv_sqrt(gram).mat();

    SpectralDecomposition dec = spectral_decompose(gram);
    const double cut = config::relative_cutoff() * dec.eigenvalues.cwiseAbs().maxCoeff();
    Eigen::Index rank = 0;
    while (rank < cols && dec.eigenvalues(rank) > cut)
        ++rank;
    if (rank == cols)
        return partial;

    // Domain-side kernel directions are the trailing eigenvectors of the
    // Gram matrix. The partial isometry maps the leading (support)
    // eigenvectors to an orthonormal set in the codomain; complete that
    // set to find partners for the kernel directions.
    std::vector<Vector> range_basis;
    for (Eigen::Index j = 0; j < rank; ++j) {
        Vector image = partial * dec.eigenvectors.col(j);
        range_basis.push_back(image.normalized());
    }
    std::vector<Vector> partners =
        complete_basis(std::move(range_basis), rows, cols - rank);

    Matrix result = partial;
    for (Eigen::Index i = 0; i < cols - rank; ++i) {
        const Vector kernel_dir = dec.eigenvectors.col(rank + i);
        result += partners[static_cast<std::size_t>(i)] * kernel_dir.adjoint();
    }
    return result;
}

std::pair<double, double>
trace_jensen_check(const std::function<double(double)>& f,
                   std::span<const HermitianMatrix> summands) {
    if (summands.empty())
        throw DomainError("trace_jensen_check: no summands");
    const Eigen::Index dim = summands.front().dim();
    const auto trace_f = [&](const HermitianMatrix& h) {
        SpectralDecomposition dec = spectral_decompose(h);
        const double cut =
            tol::kernel_noise * dec.eigenvalues.cwiseAbs().maxCoeff();
        double sum = 0.0;
        for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
            const double lambda = dec.eigenvalues(i);
            // Kernel noise snaps to zero, where f vanishes by assumption.
            sum += lambda > cut ? f(lambda) : 0.0;
        }
        return sum;
    };

    Matrix total = Matrix::Zero(dim, dim);
    double rhs = 0.0;
    for (std::size_t k = 0; k < summands.size(); ++k) {
        const HermitianMatrix& a = summands[k];
        if (a.dim() != dim)
            throw DomainError("trace_jensen_check: dimension mismatch");
        SpectralDecomposition dec = spectral_decompose(a);
        const double scale = dec.eigenvalues.cwiseAbs().maxCoeff();
        if (dec.eigenvalues.minCoeff() < -tol::psd_effect * std::max(scale, 1.0)) {
            std::ostringstream os;
            os << "trace_jensen_check: summand " << k << " is not PSD";
            throw DomainError(os.str());
        }
        rhs += trace_f(a);
        total += a.mat();
    }
    const double lhs = trace_f(HermitianMatrix(std::move(total)));
    return {lhs, rhs};
}

} // namespace discrim
