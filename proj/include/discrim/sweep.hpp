#pragma once

#include "discrim/ensemble.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace discrim {

enum class SweepMode : std::uint8_t { Pure, Mixed, NearOrthonormal };

struct SweepConfig {
    SweepMode mode = SweepMode::NearOrthonormal;
    std::vector<Eigen::Index> dims{2}; // pure/mixed modes
    std::vector<std::size_t> ms{3};
    Eigen::Index rank = 1;             // mixed mode
    std::vector<double> epsilons{0.1}; // near-orthonormal mode
    std::uint64_t seeds = 1;           // instances per point, seeds 1..seeds
    double certify_tol = 1e-12;
    std::size_t certify_max_iter = 2000;
};

struct SweepRow {
    std::uint64_t seed = 0;
    Eigen::Index dim = 0;
    std::size_t m = 0;
    double epsilon = 0.0;
    double gamma = 0.0;
    double two_gamma = 0.0;
    double curlander_hi = 0.0;
    double hjrf_fail = 0.0;
    double pgm_fail = 0.0;
    double cert_lo = 0.0;
    double cert_hi = 0.0;
    // 2 gamma over the certified midpoint; 1 by convention when the
    // midpoint vanishes, untrusted (wide = true) when the certificate is
    // wider than 1e-7.
    double ratio_2gamma_over_opt = 1.0;
    bool wide = false;
};

/// Evaluates every (instance, seed) point of the configuration. Rows
/// come back ordered by (epsilon, dim, m, seed) ascending, independent
/// of evaluation order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Fixed-schema CSV with 12-significant-digit floats:
/// seed,dim,m,epsilon,gamma,two_gamma,curlander_hi,hjrf_fail,pgm_fail,
/// cert_lo,cert_hi,ratio_2gamma_over_opt,wide
std::string sweep_csv(std::span<const SweepRow> rows);

} // namespace discrim
