#include "discrim/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace discrim {

using nlohmann::json;

std::string format_double(double v) {
    if (v == 0.0)
        v = 0.0; // never print the sign of a negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad())
        throw ParseError("error reading file: " + path);
    return os.str();
}

[[noreturn]] void bad_schema(const std::string& what) {
    throw ParseError("ensemble file: " + what);
}

} // namespace

Ensemble parse_ensemble(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ParseError(std::string("invalid JSON: ") + err.what());
    }

    if (!root.is_object())
        bad_schema("top level must be an object");
    if (!root.contains("schema") || !root["schema"].is_number_integer())
        bad_schema("missing integer field 'schema'");
    if (root["schema"].get<int>() != 1)
        bad_schema("unsupported schema version " + root["schema"].dump());
    if (!root.contains("dim") || !root["dim"].is_number_integer() ||
        root["dim"].get<int>() < 1)
        bad_schema("'dim' must be a positive integer");
    const auto dim = root["dim"].get<Eigen::Index>();
    if (!root.contains("states") || !root["states"].is_array() ||
        root["states"].empty())
        bad_schema("'states' must be a non-empty array");

    std::vector<WeightedState> states;
    std::size_t index = 0;
    for (const auto& entry : root["states"]) {
        std::ostringstream where;
        where << "state " << index;
        if (!entry.is_object() || !entry.contains("prior") ||
            !entry["prior"].is_number() || !entry.contains("matrix"))
            bad_schema(where.str() + ": need object with 'prior' and 'matrix'");
        const double prior = entry["prior"].get<double>();

        const auto& rows = entry["matrix"];
        if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
            bad_schema(where.str() + ": 'matrix' must have dim rows");
        Matrix m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
                bad_schema(where.str() + ": matrix rows must have dim entries");
            for (Eigen::Index j = 0; j < dim; ++j) {
                const auto& cell = row[static_cast<std::size_t>(j)];
                if (!cell.is_array() || cell.size() != 2 ||
                    !cell[0].is_number() || !cell[1].is_number())
                    bad_schema(where.str() +
                               ": entries must be [re, im] number pairs");
                m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
            }
        }

        try {
            states.push_back({prior, DensityMatrix(HermitianMatrix(std::move(m)))});
        } catch (const Error& err) {
            throw ValidationError(where.str() + ": " + err.what());
        }
        ++index;
    }
    return Ensemble(std::move(states));
}

Ensemble load_ensemble(const std::string& path) {
    return parse_ensemble(read_file(path));
}

std::string ensemble_to_json(const Ensemble& e) {
    std::ostringstream os;
    os << "{\n  \"schema\": 1,\n  \"dim\": " << e.dim() << ",\n  \"states\": [";
    for (std::size_t k = 0; k < e.size(); ++k) {
        os << (k ? ",\n" : "\n");
        os << "    {\"prior\": " << format_double(e.prior(k))
           << ", \"matrix\": [";
        const Matrix& m = e.state(k).mat();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            os << (i ? ", [" : "[");
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                os << (j ? ", [" : "[") << format_double(m(i, j).real()) << ", "
                   << format_double(m(i, j).imag()) << "]";
            }
            os << "]";
        }
        os << "]}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

namespace {

void emit_stats(std::ostringstream& os, const EnsembleStats& stats) {
    os << "{\"m\": " << stats.m << ", \"dim\": " << stats.dim
       << ", \"span_rank\": " << stats.span_rank
       << ", \"pure\": " << (stats.is_pure ? "true" : "false")
       << ", \"equiprobable\": " << (stats.is_equiprobable ? "true" : "false")
       << "}";
}

void emit_interval(std::ostringstream& os, const Interval& interval) {
    os << "[" << format_double(interval.lower) << ", "
       << format_double(interval.upper) << "]";
}

void emit_measurement(std::ostringstream& os, const MeasurementReport& rep,
                      const char* indent) {
    os << "{\n"
       << indent << "  \"success\": " << format_double(rep.success) << ",\n"
       << indent << "  \"failure\": " << format_double(rep.failure) << ",\n"
       << indent
       << "  \"inconclusive_mass\": " << format_double(rep.inconclusive_mass)
       << ",\n"
       << indent << "  \"per_outcome\": [";
    for (Eigen::Index i = 0; i < rep.per_outcome.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (Eigen::Index j = 0; j < rep.per_outcome.cols(); ++j)
            os << (j ? ", " : "") << format_double(rep.per_outcome(i, j));
        os << "]";
    }
    os << "]\n" << indent << "}";
}

} // namespace

std::string bounds_report_json(const EnsembleStats& stats,
                               const BoundReport& report,
                               const MeasurementReport& pgm_report,
                               const MeasurementReport& hjrf_report) {
    std::ostringstream os;
    os << "{\n  \"schema\": 1,\n  \"ensemble\": ";
    emit_stats(os, stats);
    os << ",\n  \"bounds\": {\n"
       << "    \"gamma\": " << format_double(report.gamma) << ",\n"
       << "    \"two_sided\": ";
    emit_interval(os, report.two_sided);
    os << ",\n    \"curlander\": ";
    emit_interval(os, report.curlander);
    os << ",\n    \"hjrf_failure\": " << format_double(report.hjrf_failure)
       << ",\n    \"pgm_failure\": " << format_double(report.pgm_failure)
       << ",\n    \"cost_hjrf\": " << format_double(report.cost_hjrf)
       << ",\n    \"s_power\": [";
    for (std::size_t i = 0; i < report.s_power.size(); ++i) {
        os << (i ? ", " : "") << "{\"s\": " << format_double(report.s_power[i].first)
           << ", \"lower_bound\": " << format_double(report.s_power[i].second)
           << "}";
    }
    os << "],\n    \"pure_gamma_holevo\": ";
    if (report.pure_gamma_holevo)
        os << format_double(*report.pure_gamma_holevo);
    else
        os << "null";
    os << ",\n    \"pgm_pure_upper\": ";
    if (report.pgm_pure_upper)
        os << format_double(*report.pgm_pure_upper);
    else
        os << "null";
    os << "\n  },\n  \"measurements\": {\n    \"pgm\": ";
    emit_measurement(os, pgm_report, "    ");
    os << ",\n    \"hjrf\": ";
    emit_measurement(os, hjrf_report, "    ");
    os << "\n  }\n}\n";
    return os.str();
}

std::string certify_report_json(const CertifiedInterval& interval, double ykl) {
    std::ostringstream os;
    os << "{\n  \"schema\": 1,\n"
       << "  \"lower\": " << format_double(interval.lower) << ",\n"
       << "  \"upper\": " << format_double(interval.upper) << ",\n"
       << "  \"width\": " << format_double(interval.upper - interval.lower)
       << ",\n"
       << "  \"witness_failure\": " << format_double(interval.upper) << ",\n"
       << "  \"ykl_residual\": " << format_double(ykl) << ",\n"
       << "  \"dual_shift\": " << format_double(interval.dual_shift) << ",\n"
       << "  \"iterations\": " << interval.iterations << ",\n"
       << "  \"converged\": " << (interval.converged ? "true" : "false")
       << "\n}\n";
    return os.str();
}

bool syndrome_corollary_feasible(const Interval& original,
                                 const Interval& syndrome, double tol) {
    // Feasible iff some x in the original interval and y in the syndrome
    // interval satisfy x <= y <= (2 - x) x. The map x -> (2 - x) x is
    // increasing on [0, 1], so the best candidate is the largest x that
    // still allows x <= y.
    const double x = std::min(original.upper, syndrome.upper);
    if (original.lower > syndrome.upper + tol)
        return false;
    return syndrome.lower <= (2.0 - x) * x + tol;
}

std::string syndrome_report_json(const SyndromeReport& report) {
    std::ostringstream os;
    os << "{\n  \"schema\": 1,\n  \"original\": {\n    \"ensemble\": ";
    emit_stats(os, report.original_stats);
    os << ",\n    \"gamma\": " << format_double(report.gamma_original)
       << ",\n    \"lower\": " << format_double(report.original.lower)
       << ",\n    \"upper\": " << format_double(report.original.upper)
       << ",\n    \"iterations\": " << report.original.iterations
       << ",\n    \"converged\": " << (report.original.converged ? "true" : "false")
       << "\n  },\n  \"syndrome\": {\n    \"ensemble\": ";
    emit_stats(os, report.syndrome_stats);
    os << ",\n    \"gamma\": " << format_double(report.gamma_syndrome)
       << ",\n    \"lower\": " << format_double(report.syndrome.lower)
       << ",\n    \"upper\": " << format_double(report.syndrome.upper)
       << ",\n    \"iterations\": " << report.syndrome.iterations
       << ",\n    \"converged\": " << (report.syndrome.converged ? "true" : "false")
       << "\n  },\n  \"corollary\": {\n    \"feasible\": "
       << (report.corollary_feasible ? "true" : "false")
       << ",\n    \"note\": \"interval feasibility check, not exact verification\""
       << "\n  }\n}\n";
    return os.str();
}

} // namespace discrim
