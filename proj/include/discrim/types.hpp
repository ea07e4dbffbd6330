#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace discrim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file could not be read or parsed (CLI exit code 1).
struct ParseError : Error {
    using Error::Error;
};

/// A constructed value violates one of its invariants (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

/// An operation was called outside its domain (CLI exit code 2).
struct DomainError : Error {
    using Error::Error;
};

/// Internal numerical failure: eigensolver breakdown, degenerate
/// iteration, or an inequality chain that should hold but does not
/// (CLI exit code 3).
struct NumericError : Error {
    using Error::Error;
};

namespace tol {
// Hermiticity certificate, relative to the largest |entry|.
inline constexpr double hermiticity = 1e-12;
// Spectral reconstruction and unitarity residuals.
inline constexpr double spectral = 1e-10;
// PSD slack allowed for POVM effects.
inline constexpr double psd_effect = 1e-9;
// Completeness residual for POVMs (max |entry| of sum minus identity).
inline constexpr double completeness = 1e-8;
// PSD slack and trace-one slack for density matrices.
inline constexpr double psd_state = 1e-10;
inline constexpr double trace_one = 1e-10;
// Prior sums further from 1 than this are an error, closer are renormalized.
inline constexpr double prior_sum = 1e-6;
// Absolute tolerance for the bound inequality chains.
inline constexpr double chain = 1e-9;
// Eigenvalues below this (relative to lambda_max) are round-off from exact
// kernel modes. Functions with unbounded derivative at zero (x^{1/s})
// amplify such noise badly, so it is snapped to zero; the floor sits well
// below any genuine eigenvalue the supported ensembles produce.
inline constexpr double kernel_noise = 1e-13;
} // namespace tol

namespace config {

/// Relative eigenvalue cutoff used by pseudo-inverses, support
/// projectors and rank decisions. Eigenvalues below cutoff * lambda_max
/// in magnitude count as zero. Set once at startup (the CLI honors
/// DISCRIM_CUTOFF); all library functions read it as their default.
double relative_cutoff();
void set_relative_cutoff(double cutoff);

} // namespace config

} // namespace discrim
