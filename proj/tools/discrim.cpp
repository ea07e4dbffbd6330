#include "discrim/bounds.hpp"
#include "discrim/io.hpp"
#include "discrim/oracle.hpp"
#include "discrim/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 1 I/O or parse, 2 validation, 3 numeric failure.
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw discrim::ParseError("cannot open output file: " + out_path);
    out << text;
    out.flush();
    if (!out)
        throw discrim::ParseError("error writing output file: " + out_path);
}

void run_bounds(const std::string& input, const std::vector<double>& s_list,
                const std::string& out_path) {
    const discrim::Ensemble e = discrim::load_ensemble(input);
    const discrim::EnsembleStats stats = discrim::validate(e);
    const discrim::BoundReport report = discrim::bound_report(
        e, s_list.empty() ? discrim::default_s_list() : s_list);
    const discrim::MeasurementReport pgm_report =
        discrim::evaluate(e, discrim::pgm(e));
    const discrim::MeasurementReport hjrf_report =
        discrim::evaluate(e, discrim::hjrf_quadratic(e));
    write_output(
        discrim::bounds_report_json(stats, report, pgm_report, hjrf_report),
        out_path);
}

void run_certify(const std::string& input, double tol, std::size_t max_iter,
                 const std::string& out_path) {
    const discrim::Ensemble e = discrim::load_ensemble(input);
    const discrim::CertifiedInterval interval =
        discrim::certify(e, tol, max_iter);
    const double ykl = discrim::ykl_residual(e, interval.witness);
    write_output(discrim::certify_report_json(interval, ykl), out_path);
}

void run_syndrome(const std::string& input, double tol, std::size_t max_iter,
                  const std::string& out_path) {
    const discrim::Ensemble e = discrim::load_ensemble(input);
    if (e.size() < 2)
        throw discrim::ValidationError(
            "syndrome: single-state ensembles are not supported");
    const discrim::SyndromeExpansion expansion = discrim::syndrome_expand(e);

    discrim::SyndromeReport report;
    report.original_stats = discrim::validate(e);
    report.syndrome_stats = discrim::validate(expansion.expanded);
    report.gamma_original = discrim::capital_gamma(e);
    report.gamma_syndrome = discrim::capital_gamma(expansion.expanded);
    report.original = discrim::certify(e, tol, max_iter);
    report.syndrome = discrim::certify(expansion.expanded, tol, max_iter);
    report.corollary_feasible = discrim::syndrome_corollary_feasible(
        {report.original.lower, report.original.upper},
        {report.syndrome.lower, report.syndrome.upper});
    write_output(discrim::syndrome_report_json(report), out_path);
}

void run_sweep_cmd(const discrim::SweepConfig& config,
                   const std::string& out_path) {
    const std::vector<discrim::SweepRow> rows = discrim::run_sweep(config);
    write_output(discrim::sweep_csv(rows), out_path);
}

int apply_cutoff_env() {
    const char* cutoff = std::getenv("DISCRIM_CUTOFF");
    if (cutoff == nullptr)
        return 0;
    char* end = nullptr;
    const double value = std::strtod(cutoff, &end);
    if (end == cutoff || *end != '\0') {
        std::cerr << "discrim: DISCRIM_CUTOFF is not a number: " << cutoff
                  << "\n";
        return kExitValidation;
    }
    try {
        discrim::config::set_relative_cutoff(value);
    } catch (const discrim::Error& err) {
        std::cerr << "discrim: " << err.what() << "\n";
        return kExitValidation;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (int code = apply_cutoff_env(); code != 0)
        return code;

    CLI::App app{
        "Certified bounds and sub-optimal measurements for distinguishing "
        "ensembles of quantum states"};
    app.require_subcommand(1);

    std::string input;
    std::string out_path;
    std::vector<double> s_list;
    double tol = 1e-10;
    std::size_t max_iter = 500;

    CLI::App* bounds_cmd = app.add_subcommand(
        "bounds", "Analytic bound report plus measurement reports");
    bounds_cmd->add_option("file", input, "ensemble JSON file")->required();
    bounds_cmd->add_option("--s", s_list, "comma-separated powers for the s-power bound")
        ->delimiter(',');
    bounds_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    CLI::App* certify_cmd = app.add_subcommand(
        "certify", "Certified interval around the optimal failure rate");
    certify_cmd->add_option("file", input, "ensemble JSON file")->required();
    certify_cmd->add_option("--tol", tol, "iteration stopping tolerance");
    certify_cmd->add_option("--max-iter", max_iter, "iteration cap");
    certify_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    CLI::App* syndrome_cmd = app.add_subcommand(
        "syndrome", "Compare an ensemble against its eigenvector expansion");
    syndrome_cmd->add_option("file", input, "ensemble JSON file")->required();
    syndrome_cmd->add_option("--tol", tol, "iteration stopping tolerance");
    syndrome_cmd->add_option("--max-iter", max_iter, "iteration cap");
    syndrome_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    discrim::SweepConfig config;
    std::string mode = "near-orthonormal";
    std::vector<long long> dims{2};
    std::vector<std::size_t> ms{3};
    long long rank = 1;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Randomized sweep written as CSV");
    sweep_cmd
        ->add_option("--mode", mode, "pure, mixed, or near-orthonormal")
        ->check(CLI::IsMember({"pure", "mixed", "near-orthonormal"}));
    sweep_cmd->add_option("--dim", dims, "dimensions (pure/mixed modes)")
        ->delimiter(',');
    sweep_cmd->add_option("--m", ms, "ensemble sizes")->delimiter(',');
    sweep_cmd->add_option("--rank", rank, "state rank (mixed mode)");
    sweep_cmd->add_option("--epsilon", config.epsilons,
                          "overlap bounds (near-orthonormal mode)")
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", config.seeds, "instances per point");
    sweep_cmd->add_option("--tol", config.certify_tol,
                          "certification stopping tolerance");
    sweep_cmd->add_option("--max-iter", config.certify_max_iter,
                          "certification iteration cap");
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (bounds_cmd->parsed()) {
            run_bounds(input, s_list, out_path);
        } else if (certify_cmd->parsed()) {
            run_certify(input, tol, max_iter, out_path);
        } else if (syndrome_cmd->parsed()) {
            run_syndrome(input, tol, max_iter, out_path);
        } else if (sweep_cmd->parsed()) {
            if (mode == "pure")
                config.mode = discrim::SweepMode::Pure;
            else if (mode == "mixed")
                config.mode = discrim::SweepMode::Mixed;
            else
                config.mode = discrim::SweepMode::NearOrthonormal;
            config.dims.assign(dims.begin(), dims.end());
            config.ms = ms;
            config.rank = static_cast<Eigen::Index>(rank);
            run_sweep_cmd(config, out_path);
        }
    } catch (const discrim::ParseError& err) {
        std::cerr << "discrim: " << err.what() << "\n";
        return kExitParse;
    } catch (const discrim::ValidationError& err) {
        std::cerr << "discrim: " << err.what() << "\n";
        return kExitValidation;
    } catch (const discrim::DomainError& err) {
        std::cerr << "discrim: " << err.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "discrim: internal error: " << err.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
