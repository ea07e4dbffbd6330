#include "discrim/sweep.hpp"

#include "discrim/bounds.hpp"
#include "discrim/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace discrim {

namespace {

constexpr double kWideThreshold = 1e-7;
constexpr double kZeroOptimum = 1e-12;

SweepRow evaluate_instance(const Ensemble& e, std::uint64_t seed,
                           double epsilon, const SweepConfig& config) {
    SweepRow row;
    row.seed = seed;
    row.dim = e.dim();
    row.m = e.size();
    row.epsilon = epsilon;
    row.gamma = capital_gamma(e);
    row.two_gamma = 2.0 * row.gamma;
    row.curlander_hi = curlander_interval(e).upper;
    row.hjrf_fail = evaluate(e, hjrf_quadratic(e)).failure;
    row.pgm_fail = evaluate(e, pgm(e)).failure;

    const CertifiedInterval cert =
        certify(e, config.certify_tol, config.certify_max_iter);
    row.cert_lo = cert.lower;
    row.cert_hi = cert.upper;
    row.wide = (cert.upper - cert.lower) >= kWideThreshold;

    const double midpoint = 0.5 * (cert.lower + cert.upper);
    row.ratio_2gamma_over_opt =
        midpoint < kZeroOptimum ? 1.0 : row.two_gamma / midpoint;
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    if (config.seeds < 1)
        throw DomainError("run_sweep: need at least one seed");

    std::vector<SweepRow> rows;
    if (config.mode == SweepMode::NearOrthonormal) {
        if (config.epsilons.empty())
            throw DomainError("run_sweep: epsilon list is empty");
        std::vector<double> epsilons = config.epsilons;
        std::sort(epsilons.begin(), epsilons.end());
        std::vector<std::size_t> ms = config.ms;
        std::sort(ms.begin(), ms.end());
        for (double epsilon : epsilons)
            for (std::size_t m : ms)
                for (std::uint64_t seed = 1; seed <= config.seeds; ++seed)
                    rows.push_back(evaluate_instance(
                        near_orthonormal_family(m, epsilon, seed), seed,
                        epsilon, config));
        return rows;
    }

    if (config.dims.empty() || config.ms.empty())
        throw DomainError("run_sweep: dim and m lists must be non-empty");
    std::vector<Eigen::Index> dims = config.dims;
    std::sort(dims.begin(), dims.end());
    std::vector<std::size_t> ms = config.ms;
    std::sort(ms.begin(), ms.end());
    for (Eigen::Index dim : dims) {
        for (std::size_t m : ms) {
            for (std::uint64_t seed = 1; seed <= config.seeds; ++seed) {
                Ensemble e =
                    config.mode == SweepMode::Pure
                        ? random_pure_ensemble(dim, m, PriorMode::Random, seed)
                        : random_mixed_ensemble(
                              dim, m, std::min(config.rank, dim), seed);
                rows.push_back(evaluate_instance(e, seed, 0.0, config));
            }
        }
    }
    return rows;
}

namespace {

std::string csv_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream os;
    os << "seed,dim,m,epsilon,gamma,two_gamma,curlander_hi,hjrf_fail,pgm_fail,"
          "cert_lo,cert_hi,ratio_2gamma_over_opt,wide\n";
    for (const SweepRow& row : rows) {
        os << row.seed << ',' << row.dim << ',' << row.m << ','
           << csv_double(row.epsilon) << ',' << csv_double(row.gamma) << ','
           << csv_double(row.two_gamma) << ',' << csv_double(row.curlander_hi)
           << ',' << csv_double(row.hjrf_fail) << ',' << csv_double(row.pgm_fail)
           << ',' << csv_double(row.cert_lo) << ',' << csv_double(row.cert_hi)
           << ',' << csv_double(row.ratio_2gamma_over_opt) << ','
           << (row.wide ? "true" : "false") << '\n';
    }
    return os.str();
}

} // namespace discrim
