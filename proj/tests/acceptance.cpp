// Acceptance suite: one check per contract-level criterion, one PASS/FAIL
// line each. The last criterion exercises the CLI binary, whose path is
// passed as argv[1].

#include "discrim/bounds.hpp"
#include "discrim/io.hpp"
#include "discrim/measurement.hpp"
#include "discrim/oracle.hpp"
#include "discrim/rng.hpp"
#include "discrim/sweep.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace discrim;

namespace {

int g_failed = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << index << ": "
              << name;
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass)
        ++g_failed;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

Ensemble two_pure_qubits(double overlap, double p1 = 0.5) {
    Vector psi1(2), psi2(2);
    psi1 << 1.0, 0.0;
    psi2 << overlap, std::sqrt(1.0 - overlap * overlap);
    std::vector<WeightedState> states;
    states.push_back({p1, DensityMatrix::pure(psi1)});
    states.push_back({1.0 - p1, DensityMatrix::pure(psi2)});
    return Ensemble(std::move(states));
}

Ensemble suite_ensemble(std::size_t i, Eigen::Index dim, std::size_t m) {
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(i / 16) % dim;
    const std::uint64_t seed = 9000 + i;
    if (i % 2 == 0)
        return random_pure_ensemble(dim, m, PriorMode::Random, seed);
    return random_mixed_ensemble(dim, m, rank, seed);
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double max_effect_diff(const Povm& a, const Povm& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(
            worst, (a.effect(k).mat() - b.effect(k).mat()).cwiseAbs().maxCoeff());
    return worst;
}

// --- criterion 1: two-sided chain on a 1000-ensemble random suite -------

void criterion_chain() {
    const auto start = std::chrono::steady_clock::now();
    const Eigen::Index dims[] = {2, 3, 4, 8};
    const std::size_t ms[] = {2, 3, 4, 6};
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < 1000 && ok; ++i) {
        Ensemble e = suite_ensemble(i, dims[i % 4], ms[(i / 4) % 4]);
        const double gamma = capital_gamma(e);
        const double failure = evaluate(e, hjrf_quadratic(e)).failure;
        const double curl = gamma * (2.0 - gamma);
        ok = gamma <= failure + 1e-9 && failure <= curl + 1e-9 &&
             curl <= 2.0 * gamma + 1e-9;
        worst = std::max({worst, gamma - failure, failure - curl,
                          curl - 2.0 * gamma});
    }
    const double secs = elapsed_seconds(start);
    std::ostringstream detail;
    detail << "1000 ensembles, worst slack " << worst << ", " << secs << " s";
    report(1, "two-sided chain Gamma <= P_fail(HJRF) <= Gamma(2-Gamma) <= 2 Gamma",
           ok && secs < 60.0, detail.str());
}

// --- criterion 2: two-state exactness ------------------------------------

void criterion_two_state() {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 500 && ok; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        Ensemble e = (seed % 2 == 0)
                         ? random_mixed_ensemble(dim, 2, 1 + seed % dim, seed)
                         : random_pure_ensemble(dim, 2, PriorMode::Random, seed);
        const double opt = helstrom_two_state(e);
        const Interval interval = curlander_interval(e);
        ok = opt >= interval.lower - 1e-9 && opt <= interval.upper + 1e-9;
    }
    bool endpoints = true;
    for (int i = 1; i <= 9 && endpoints; ++i) {
        const double c = 0.1 * i;
        Ensemble e = two_pure_qubits(c);
        const double exact = 0.5 * (1.0 - std::sqrt(1.0 - c * c));
        const double upper = curlander_interval(e).upper;
        const double failure = evaluate(e, hjrf_quadratic(e)).failure;
        endpoints = std::abs(upper - exact) <= 1e-9 &&
                    std::abs(failure - exact) <= 1e-9;
    }
    report(2, "two-state exactness: Helstrom inside [Gamma, Gamma(2-Gamma)], "
              "endpoint identity",
           ok && endpoints);
}

// --- criterion 3: asymptotic optimality of the ratio 2 gamma / opt -------

void criterion_asymptotic() {
    const std::vector<double> ladder{0.1, 0.03, 0.01, 0.003, 0.001};
    std::vector<double> medians;
    bool narrow = true;
    for (double epsilon : ladder) {
        std::vector<double> ratios;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Ensemble e = near_orthonormal_family(3, epsilon, seed);
            const CertifiedInterval cert = certify(e, 1e-14, 5000);
            const double width = cert.upper - cert.lower;
            if (width >= 1e-7)
                narrow = false;
            const double mid = 0.5 * (cert.lower + cert.upper);
            ratios.push_back(2.0 * capital_gamma(e) / mid);
        }
        medians.push_back(median(std::move(ratios)));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < medians.size(); ++i)
        decreasing = decreasing && medians[i] < medians[i - 1];
    const double last = medians.back();
    const bool in_envelope = last >= 1.0 && last <= 1.05;
    std::ostringstream detail;
    detail.precision(10);
    detail << "medians";
    for (double m : medians)
        detail << " " << m;
    report(3, "ratio 2 gamma / certified optimum decreases toward 1",
           narrow && decreasing && in_envelope, detail.str());
}

// --- criterion 4: Gamma is the minimum of the approximate cost -----------

void criterion_minimizer() {
    Rng rng(404);
    bool achieves = true;
    bool dominates = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        Ensemble e = (seed % 2 == 0)
                         ? random_mixed_ensemble(dim, 3, dim, seed)
                         : random_pure_ensemble(dim, 3, PriorMode::Random, seed);
        const double gamma = capital_gamma(e);
        achieves = achieves &&
                   std::abs(approximate_cost(e, hjrf_quadratic(e)) - gamma) <=
                       1e-9;
        for (int trial = 0; trial < 200 && dominates; ++trial) {
            std::vector<HermitianMatrix> blocks;
            Matrix total = Matrix::Zero(dim, dim);
            for (std::size_t k = 0; k < 3; ++k) {
                Matrix g = rng.gaussian_matrix(dim, dim);
                blocks.emplace_back(Matrix(g * g.adjoint()));
                total += blocks.back().mat();
            }
            const Matrix inv = pinv_sqrt(HermitianMatrix(std::move(total))).mat();
            std::vector<HermitianMatrix> effects;
            for (const auto& b : blocks) {
                Matrix eff = inv * b.mat() * inv;
                effects.emplace_back(0.5 * (eff + eff.adjoint().eval()));
            }
            dominates = approximate_cost(e, Povm(std::move(effects))) >=
                        gamma - 1e-9;
        }
    }
    report(4, "approximate cost: quadratic measurement attains Gamma, "
              "random POVMs stay above",
           achieves && dominates);
}

// --- criterion 5: contraction estimate fuzz ------------------------------

void criterion_lemma4() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(505);
    bool ok = true;
    for (int trial = 0; trial < 5000 && ok; ++trial) {
        const Eigen::Index dim = 2 + trial % 7;
        Matrix g = rng.gaussian_matrix(dim, dim);
        Eigen::JacobiSVD<Matrix> svd(g);
        double scale = svd.singularValues()(0);
        if (trial % 3 != 0)
            scale /= rng.uniform(); // strict contraction
        const Matrix contraction = g / scale;

        Matrix h = rng.gaussian_matrix(dim, dim);
        Matrix rho = h * h.adjoint();
        rho /= rho.trace().real();

        const Lemma4Result result =
            lemma4_check(contraction, DensityMatrix(HermitianMatrix(rho)));
        ok = result.lhs >= result.range.lower - 1e-9 &&
             result.lhs <= result.range.upper + 1e-9;
    }
    const double secs = elapsed_seconds(start);
    std::ostringstream detail;
    detail << "5000 pairs, " << secs << " s";
    report(5, "failure estimate 1 - Tr(E^dag E rho) in [1,2] x (1 - ||E rho||_1)",
           ok && secs < 10.0, detail.str());
}

// --- criterion 6: trace-Jensen inequality --------------------------------

void criterion_trace_jensen() {
    Rng rng(606);
    const std::vector<std::function<double(double)>> functions{
        [](double x) { return std::sqrt(x); },
        [](double x) { return std::pow(x, 0.3); },
        [](double x) { return std::pow(x, 0.7); }};
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const Eigen::Index dim = 2 + trial % 7;
        std::vector<HermitianMatrix> parts;
        const int count = 2 + trial % 4;
        for (int k = 0; k < count; ++k) {
            Matrix g = rng.gaussian_matrix(dim, 1 + (trial + k) % dim);
            parts.emplace_back(Matrix(g * g.adjoint()));
        }
        auto [lhs, rhs] = trace_jensen_check(functions[trial % 3], parts);
        ok = lhs <= rhs + 1e-9;
    }
    // Orthogonal supports: equality to 1e-10.
    bool equality = true;
    for (int trial = 0; trial < 50 && equality; ++trial) {
        const Eigen::Index half = 2 + trial % 3;
        Matrix a = Matrix::Zero(2 * half, 2 * half);
        Matrix b = Matrix::Zero(2 * half, 2 * half);
        Matrix ga = rng.gaussian_matrix(half, half);
        Matrix gb = rng.gaussian_matrix(half, half);
        a.topLeftCorner(half, half) = ga * ga.adjoint();
        b.bottomRightCorner(half, half) = gb * gb.adjoint();
        std::vector<HermitianMatrix> parts{HermitianMatrix(a),
                                           HermitianMatrix(b)};
        auto [lhs, rhs] = trace_jensen_check(functions[trial % 3], parts);
        equality = std::abs(lhs - rhs) <= 1e-10;
    }
    report(6, "trace-Jensen: Tr f(sum A) <= sum Tr f(A), equality on "
              "orthogonal supports",
           ok && equality);
}

// --- criterion 7: s-power lower bound on the two-state suite -------------

void criterion_s_power() {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        Ensemble e = (seed % 2 == 0)
                         ? random_mixed_ensemble(dim, 2, 1 + seed % dim, seed)
                         : random_pure_ensemble(dim, 2, PriorMode::Random, seed);
        const double opt = helstrom_two_state(e);
        for (double s : {1.0, 1.5, 2.0, 3.0, 4.0})
            ok = ok && s_power_lower_bound(e, s) <= opt + 1e-9;
        ok = ok &&
             std::abs(s_power_lower_bound(e, 2.0) - capital_gamma(e)) <= 1e-10 &&
             std::abs(s_power_lower_bound(e, 1.0)) <= 1e-12;
    }
    report(7, "s-power lower bound below the exact two-state optimum, "
              "s=2 matches Gamma, s=1 vanishes",
           ok);
}

// --- criterion 8: coincidence identities ----------------------------------

void criterion_coincidences() {
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 50 && ok; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        const std::size_t m = 2 + seed % 3;
        Ensemble equi = random_pure_ensemble(dim, m, PriorMode::Uniform, seed);
        ok = max_effect_diff(pgm(equi), hjrf_quadratic(equi)) <= 1e-9;

        Ensemble skewed = random_pure_ensemble(dim, m, PriorMode::Random, seed);
        ok = ok &&
             max_effect_diff(hjrf_quadratic(skewed), holevo_pure_basis(skewed)) <=
                 1e-9;
        ok = ok &&
             max_effect_diff(jrf_iterate(skewed, Povm::uniform(dim, m)),
                             hjrf_quadratic(skewed)) <= 1e-9;
    }
    report(8, "coincidences: PGM = HJRF (equiprobable pure), HJRF = Holevo "
              "basis (pure), first iterate = HJRF",
           ok);
}

// --- criterion 9: syndrome ensembles --------------------------------------

void criterion_syndrome() {
    bool gamma_ok = true;
    bool feasible = true;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        const std::size_t m = 2 + seed % 2;
        Ensemble e = random_mixed_ensemble(dim, m, dim, seed);
        SyndromeExpansion expansion = syndrome_expand(e);
        gamma_ok = gamma_ok &&
                   std::abs(capital_gamma(expansion.expanded) -
                            capital_gamma(e)) <= 1e-9;
        const CertifiedInterval original = certify(e, 1e-12, 2000);
        const CertifiedInterval syndrome =
            certify(expansion.expanded, 1e-12, 2000);
        feasible = feasible &&
                   syndrome_corollary_feasible(
                       {original.lower, original.upper},
                       {syndrome.lower, syndrome.upper});
        if (!gamma_ok || !feasible)
            break;
    }
    report(9, "syndrome expansion preserves Gamma and the corollary "
              "intervals are feasible",
           gamma_ok && feasible);
}

// --- criterion 10: fixed-point iteration regression -----------------------

void criterion_jrf_regression() {
    bool monotone = true;
    bool certified = true;
    bool two_state = true;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Eigen::Index dim = 2 + seed % 3;
        const std::size_t m = 2 + seed % 2;
        Ensemble e = (seed % 2 == 0)
                         ? random_pure_ensemble(dim, m, PriorMode::Random,
                                                7000 + seed)
                         : random_mixed_ensemble(dim, m, 1 + seed % dim,
                                                 7000 + seed);
        JrfTrace trace = jrf_converge(e, 1e-12, 2000);
        for (std::size_t i = 1; i < trace.success_history.size(); ++i)
            monotone = monotone && trace.success_history[i] >=
                                       trace.success_history[i - 1] - 1e-8;
        certified =
            certified && ykl_residual(e, trace.iterates.back()) <= 1e-6;
        if (m == 2)
            two_state = two_state &&
                        std::abs(evaluate(e, trace.iterates.back()).failure -
                                 helstrom_two_state(e)) <= 1e-7;
        if (!(monotone && certified && two_state))
            break;
    }
    report(10, "iteration regression: monotone success, residual <= 1e-6, "
               "two-state failures match Helstrom",
           monotone && certified && two_state);
}

// --- criterion 11: CLI determinism and exit codes --------------------------

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_command(const std::string& command) {
    const int rc = std::system(command.c_str());
    if (rc == -1)
        return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void criterion_cli(const std::string& cli) {
    namespace fs = std::filesystem;
    if (cli.empty()) {
        report(11, "CLI determinism", false, "no CLI binary path given");
        return;
    }
    const fs::path dir = fs::path("acceptance_tmp");
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path good = dir / "pair.json";
    std::ofstream(good, std::ios::binary) << ensemble_to_json(two_pure_qubits(0.6));
    const fs::path mixed = dir / "mixed.json";
    std::ofstream(mixed, std::ios::binary)
        << ensemble_to_json(random_mixed_ensemble(2, 2, 2, 5));
    const fs::path single = dir / "single.json";
    std::ofstream(single, std::ios::binary)
        << ensemble_to_json(random_mixed_ensemble(2, 1, 2, 6));
    const fs::path garbage = dir / "garbage.json";
    std::ofstream(garbage, std::ios::binary) << "{ this is not json";
    const fs::path bad_priors = dir / "bad_priors.json";
    std::ofstream(bad_priors, std::ios::binary) << R"({
  "schema": 1, "dim": 1,
  "states": [{"prior": 0.6, "matrix": [[[1, 0]]]},
             {"prior": 0.5, "matrix": [[[1, 0]]]}]
})";

    bool ok = true;
    std::ostringstream why;

    const auto twice_identical = [&](const std::string& args,
                                     const fs::path& out1,
                                     const fs::path& out2) {
        if (run_command(cli + " " + args + " > " + out1.string() +
                        " 2>/dev/null") != 0 ||
            run_command(cli + " " + args + " > " + out2.string() +
                        " 2>/dev/null") != 0) {
            why << "[command failed: " << args << "] ";
            return false;
        }
        if (read_file(out1) != read_file(out2) || read_file(out1).empty()) {
            why << "[output differs: " << args << "] ";
            return false;
        }
        return true;
    };

    ok &= twice_identical("bounds " + good.string() + " --s 1,2,3",
                          dir / "b1.json", dir / "b2.json");
    ok &= twice_identical("certify " + good.string() + " --tol 1e-12",
                          dir / "c1.json", dir / "c2.json");
    ok &= twice_identical("syndrome " + mixed.string(), dir / "s1.json",
                          dir / "s2.json");

    const std::string sweep_args =
        " sweep --mode near-orthonormal --m 3 --epsilon 0.1,0.03 --seeds 2";
    const fs::path csv1 = dir / "sweep1.csv";
    const fs::path csv2 = dir / "sweep2.csv";
    if (run_command(cli + sweep_args + " --out " + csv1.string() +
                    " 2>/dev/null") != 0 ||
        run_command(cli + sweep_args + " --out " + csv2.string() +
                    " 2>/dev/null") != 0 ||
        read_file(csv1) != read_file(csv2) || read_file(csv1).empty()) {
        why << "[sweep not deterministic] ";
        ok = false;
    }

    // --out must produce the same bytes as the stdout capture.
    const fs::path direct = dir / "direct.json";
    if (run_command(cli + " bounds " + good.string() + " --s 1,2,3 --out " +
                    direct.string() + " 2>/dev/null") != 0 ||
        read_file(direct) != read_file(dir / "b1.json")) {
        why << "[--out differs from stdout] ";
        ok = false;
    }

    // Exit codes: 1 for I/O and parse problems, 2 for validation.
    if (run_command(cli + " bounds " + (dir / "missing.json").string() +
                    " 2>/dev/null >/dev/null") != 1) {
        why << "[missing file should exit 1] ";
        ok = false;
    }
    if (run_command(cli + " bounds " + garbage.string() +
                    " 2>/dev/null >/dev/null") != 1) {
        why << "[malformed JSON should exit 1] ";
        ok = false;
    }
    if (run_command(cli + " bounds " + bad_priors.string() +
                    " 2>/dev/null >/dev/null") != 2) {
        why << "[invalid priors should exit 2] ";
        ok = false;
    }
    if (run_command(cli + " syndrome " + single.string() +
                    " 2>/dev/null >/dev/null") != 2) {
        why << "[m=1 syndrome should exit 2] ";
        ok = false;
    }

    // Failed runs must not leave partial output files behind.
    const fs::path never = dir / "never.json";
    run_command(cli + " bounds " + garbage.string() + " --out " +
                never.string() + " 2>/dev/null >/dev/null");
    if (fs::exists(never)) {
        why << "[partial output after parse failure] ";
        ok = false;
    }

    // The cutoff override is honored and validated.
    if (run_command("DISCRIM_CUTOFF=bogus " + cli + " bounds " + good.string() +
                    " 2>/dev/null >/dev/null") != 2) {
        why << "[bad DISCRIM_CUTOFF should exit 2] ";
        ok = false;
    }
    if (run_command("DISCRIM_CUTOFF=1e-9 " + cli + " bounds " + good.string() +
                    " 2>/dev/null >/dev/null") != 0) {
        why << "[valid DISCRIM_CUTOFF should work] ";
        ok = false;
    }

    report(11, "CLI determinism and exit codes", ok, why.str());
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    if (argc > 1)
        cli = argv[1];
    else if (const char* env = std::getenv("DISCRIM_BIN"))
        cli = env;

    criterion_chain();
    criterion_two_state();
    criterion_asymptotic();
    criterion_minimizer();
    criterion_lemma4();
    criterion_trace_jensen();
    criterion_s_power();
    criterion_coincidences();
    criterion_syndrome();
    criterion_jrf_regression();
    criterion_cli(cli);

    if (g_failed != 0) {
        std::cout << g_failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
