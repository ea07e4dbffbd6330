#pragma once

#include "discrim/types.hpp"

#include <functional>
#include <span>
#include <utility>

namespace discrim {

/// Dense complex square matrix certified Hermitian at construction.
///
/// The constructor rejects matrices whose Hermitian defect exceeds
/// tol::hermiticity relative to the largest |entry|, then stores the
/// symmetrized (M + M^dagger)/2 so downstream spectral code sees an
/// exactly Hermitian operand.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(Matrix m);

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }

    double trace() const { return mat_.trace().real(); }

    static HermitianMatrix identity(Eigen::Index dim) {
        return HermitianMatrix(Matrix::Identity(dim, dim));
    }
    static HermitianMatrix zero(Eigen::Index dim) {
        return HermitianMatrix(Matrix::Zero(dim, dim));
    }

  private:
    Matrix mat_;
};

/// Eigensystem of a Hermitian matrix: eigenvalues sorted descending,
/// eigenvectors as the columns of a unitary matrix. Column phases are
/// canonicalized (first non-negligible component real positive) so
/// equal inputs serialize identically; results built from the
/// decomposition do not depend on that choice.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
    }
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& a);

/// f(A) through the functional calculus: V diag(f(lambda)) V^dagger.
/// Eigenvalues within the hermiticity tolerance below zero are clamped
/// to zero before f is applied; f producing a non-finite value at any
/// retained eigenvalue is a domain error.
HermitianMatrix apply_function(const HermitianMatrix& a,
                               const std::function<double(double)>& f);

/// Pseudo-inverse square root: eigenvalues above cutoff * lambda_max map
/// to lambda^{-1/2}, the rest to zero. Eigenvalues below
/// -cutoff * lambda_max mean the input is not PSD and raise DomainError.
HermitianMatrix pinv_sqrt(const HermitianMatrix& a,
                          double cutoff = config::relative_cutoff());

/// Projector onto the eigenspaces with eigenvalue above cutoff * lambda_max.
HermitianMatrix support_projector(const HermitianMatrix& a,
                                  double cutoff = config::relative_cutoff());

/// Rank at the shared relative cutoff.
Eigen::Index support_rank(const HermitianMatrix& a,
                          double cutoff = config::relative_cutoff());

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// The isometry U maximizing Re Tr(A^dagger U) over isometries from the
/// domain of A into its codomain (requires rows >= cols). On the support
/// of A^dagger A this is A (A^dagger A)^{-1/2+}; off the support it is
/// completed deterministically by Gram-Schmidt over canonical basis
/// vectors in index order.
Matrix closest_isometry(const Matrix& a);

/// Evaluates both sides of the trace-Jensen inequality for concave f
/// with f(0) = 0: returns (Tr f(sum A_k), sum Tr f(A_k)). Every summand
/// must be PSD within tolerance; the caller asserts lhs <= rhs.
std::pair<double, double>
trace_jensen_check(const std::function<double(double)>& f,
                   std::span<const HermitianMatrix> summands);

} // namespace discrim
