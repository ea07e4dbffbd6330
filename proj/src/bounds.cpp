#include "discrim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace discrim {

namespace {

// Tr[(sum_k p_k^s rho_k^s)^{1/s}], evaluated on the span of the ensemble.
// The kernel of the weighted power sum is the span complement for every
// s >= 1, so compressing onto the average state's support removes the
// zero modes exactly. That matters because x^{1/s} amplifies round-off
// at the kernel, while genuinely small eigenvalues (skewed priors raised
// to the s-th power) must survive: a threshold cannot separate the two,
// the compression can.
double power_mean_trace(const Ensemble& e, double s) {
    SpectralDecomposition span =
        spectral_decompose(weighted_power_sum(e, 1.0));
    const double span_cut =
        config::relative_cutoff() * span.eigenvalues.cwiseAbs().maxCoeff();
    Eigen::Index rank = 0;
    while (rank < span.eigenvalues.size() && span.eigenvalues(rank) > span_cut)
        ++rank;

    const Matrix basis = span.eigenvectors.leftCols(rank);
    const Matrix full = weighted_power_sum(e, s).mat();
    Matrix compressed = basis.adjoint() * full * basis;
    SpectralDecomposition dec =
        spectral_decompose(HermitianMatrix(std::move(compressed)));

    double sum = 0.0;
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i)
        sum += std::pow(std::max(dec.eigenvalues(i), 0.0), 1.0 / s);
    return sum;
}

} // namespace

double s_power_lower_bound(const Ensemble& e, double s) {
    if (s < 1.0)
        throw DomainError("s_power_lower_bound: power must be >= 1");
    const double value = 1.0 - power_mean_trace(e, s);
    if (value < -1e-6)
        throw NumericError("s_power_lower_bound: bound fell below zero");
    return std::max(value, 0.0);
}

double capital_gamma(const Ensemble& e) {
    const double gamma = s_power_lower_bound(e, 2.0);
    if (gamma >= 1.0)
        throw NumericError("capital_gamma: value outside [0, 1)");
    return gamma;
}

double gamma_holevo_pure(const Ensemble& e) {
    if (!validate(e).is_pure)
        throw DomainError("gamma_holevo_pure: ensemble is not pure");
    return capital_gamma(e);
}

double approximate_cost(const Ensemble& e, const Povm& m) {
    if (m.dim() != e.dim() || m.size() != e.size())
        throw DomainError("approximate_cost: povm does not match ensemble");
    double cost = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        HermitianMatrix factor = apply_function(
            m.effect(k), [](double x) { return std::sqrt(x); });
        cost += e.prior(k) * (1.0 - trace_norm(factor.mat() * e.state(k).mat()));
    }
    return cost;
}

Interval curlander_interval(const Ensemble& e) {
    const double gamma = capital_gamma(e);
    return {gamma, gamma * (2.0 - gamma)};
}

double barnum_knill_bound(double p_fail_opt) {
    if (!(p_fail_opt >= -1e-12 && p_fail_opt <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "barnum_knill_bound: failure rate " << p_fail_opt
           << " outside [0, 1]";
        throw DomainError(os.str());
    }
    const double p = std::clamp(p_fail_opt, 0.0, 1.0);
    return (2.0 - p) * p;
}

double pgm_pure_upper_bound(const Ensemble& e) {
    if (!validate(e).is_pure)
        throw DomainError("pgm_pure_upper_bound: ensemble is not pure");
    const HermitianMatrix average = weighted_power_sum(e, 1.0);
    const HermitianMatrix three_halves = weighted_power_sum(e, 1.5);
    // Jensen on the measurement's success amplitudes: P_succ is at least
    // the square of this overlap trace.
    const double overlap =
        (pinv_sqrt(average).mat() * three_halves.mat()).trace().real();
    return 1.0 - overlap * overlap;
}

Lemma4Result lemma4_check(const Matrix& contraction, const DensityMatrix& rho) {
    if (contraction.rows() != rho.dim() || contraction.cols() != rho.dim())
        throw DomainError("lemma4_check: operator does not act on the state space");
    const double norm = operator_norm(contraction);
    if (norm > 1.0 + 1e-10) {
        std::ostringstream os;
        os << "lemma4_check: operator norm " << norm << " exceeds 1";
        throw DomainError(os.str());
    }
    Lemma4Result result;
    result.lhs =
        1.0 - (contraction.adjoint() * contraction * rho.mat()).trace().real();
    const double base = 1.0 - trace_norm(contraction * rho.mat());
    result.range = {base, 2.0 * base};
    return result;
}

namespace {

void require_chain(bool ok, const char* what) {
    if (!ok) {
        std::ostringstream os;
        os << "bound_report: inequality chain violated: " << what;
        throw NumericError(os.str());
    }
}

} // namespace

BoundReport bound_report(const Ensemble& e, const std::vector<double>& s_list) {
    BoundReport report;
    report.gamma = capital_gamma(e);
    report.two_sided = {report.gamma, 2.0 * report.gamma};
    report.curlander = curlander_interval(e);

    const Povm hjrf = hjrf_quadratic(e);
    const Povm pretty_good = pgm(e);
    report.hjrf_failure = evaluate(e, hjrf).failure;
    report.pgm_failure = evaluate(e, pretty_good).failure;
    report.cost_hjrf = approximate_cost(e, hjrf);

    for (double s : s_list)
        report.s_power.emplace_back(s, s_power_lower_bound(e, s));

    const EnsembleStats stats = validate(e);
    if (stats.is_pure) {
        report.pure_gamma_holevo = gamma_holevo_pure(e);
        report.pgm_pure_upper = pgm_pure_upper_bound(e);
    }

    const double gamma = report.gamma;
    require_chain(gamma >= 0.0 && gamma < 1.0, "Gamma in [0, 1)");
    require_chain(gamma <= report.hjrf_failure + tol::chain,
                  "Gamma <= quadratic failure");
    require_chain(report.hjrf_failure <= report.curlander.upper + tol::chain,
                  "quadratic failure <= Gamma(2 - Gamma)");
    require_chain(report.curlander.upper <= report.two_sided.upper + tol::chain,
                  "Gamma(2 - Gamma) <= 2 Gamma");
    require_chain(std::abs(report.cost_hjrf - gamma) <= tol::chain,
                  "cost of quadratic measurement equals Gamma");
    for (const auto& [s, bound] : report.s_power)
        require_chain(bound <= report.hjrf_failure + tol::chain,
                      "s-power bound <= quadratic failure");
    const double pgm_cost = approximate_cost(e, pretty_good);
    require_chain(pgm_cost <= report.pgm_failure + tol::chain &&
                      report.pgm_failure <= 2.0 * pgm_cost + tol::chain,
                  "pgm failure within [C, 2C]");
    if (report.pgm_pure_upper)
        require_chain(report.pgm_failure <= *report.pgm_pure_upper + tol::chain,
                      "pgm failure <= pure-state pgm bound");
    return report;
}

} // namespace discrim
