#pragma once

#include "discrim/bounds.hpp"
#include "discrim/ensemble.hpp"
#include "discrim/measurement.hpp"
#include "discrim/oracle.hpp"

#include <string>

namespace discrim {

/// Parses an ensemble file:
///   { "schema": 1, "dim": d,
///     "states": [ { "prior": p, "matrix": [[[re, im], ...], ...] }, ... ] }
/// Matrix rows are outer arrays, each entry a two-element [re, im] pair.
/// Structural problems raise ParseError; parsed values violating
/// ensemble invariants raise ValidationError with the state index.
Ensemble load_ensemble(const std::string& path);
Ensemble parse_ensemble(const std::string& json_text);

std::string ensemble_to_json(const Ensemble& e);

/// Report emitters. All output is produced with fixed key order and
/// doubles printed to 17 significant digits, so identical inputs yield
/// byte-identical reports.
std::string bounds_report_json(const EnsembleStats& stats,
                               const BoundReport& report,
                               const MeasurementReport& pgm_report,
                               const MeasurementReport& hjrf_report);

std::string certify_report_json(const CertifiedInterval& interval,
                                double ykl);

struct CertifiedSummary {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t iterations = 0;
    bool converged = false;

    CertifiedSummary() = default;
    CertifiedSummary(const CertifiedInterval& interval)
        : lower(interval.lower), upper(interval.upper),
          iterations(interval.iterations), converged(interval.converged) {}
};

struct SyndromeReport {
    EnsembleStats original_stats;
    EnsembleStats syndrome_stats;
    double gamma_original = 0.0;
    double gamma_syndrome = 0.0;
    CertifiedSummary original;
    CertifiedSummary syndrome;
    bool corollary_feasible = false;
};

std::string syndrome_report_json(const SyndromeReport& report);

/// Interval-arithmetic feasibility of
/// P_opt(E) <= P_opt(E*) <= (1 + P_succ_opt(E)) P_opt(E): true when some
/// pair of points drawn from the two certified intervals satisfies both
/// inequalities. A feasibility check, not an exact verification.
bool syndrome_corollary_feasible(const Interval& original,
                                 const Interval& syndrome, double tol = 1e-9);

/// %.17g rendering used by every emitter.
std::string format_double(double v);

} // namespace discrim
