// Command-line front end: generation, solving, clustering, certification,
// assumption checking, table runs, and the robustness sweep.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrclust/certificates.hpp"
#include "corrclust/clustering.hpp"
#include "corrclust/errors.hpp"
#include "corrclust/experiments.hpp"
#include "corrclust/nfm.hpp"
#include "corrclust/sdp.hpp"

namespace {

using namespace corrclust;

std::vector<double> parse_alpha(const std::string& text, int k) {
    std::vector<double> alpha;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) alpha.push_back(std::stod(piece));
    if (alpha.size() == 1) alpha.assign(k, alpha.front());  // scalar form: a*e
    if (alpha.size() != static_cast<size_t>(k))
        throw InvalidParameter("--alpha needs 1 or k comma-separated values");
    return alpha;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << content;
}

RowMatrix rows_for_nodes(const NfmInstance& inst, const std::vector<int>& nodes) {
    RowMatrix rows(static_cast<int>(nodes.size()), inst.k);
    for (size_t a = 0; a < nodes.size(); ++a)
        for (int j = 0; j < inst.k; ++j) rows(static_cast<int>(a), j) = inst.theta(nodes[a], j);
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"Signed-graph correlation clustering toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
    int gen_n = 0, gen_k = 3;
    std::string gen_alpha = "0.3";
    uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--k", gen_k, "cluster count");
    gen->add_option("--alpha", gen_alpha, "Dirichlet parameter: scalar a (meaning a*e) or a1,a2,...");
    gen->add_option("--seed", gen_seed, "seed")->required();
    gen->add_option("--out", gen_out, "output instance JSON")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve one of the two relaxations");
    std::string solve_in, solve_variant = "1d", solve_out;
    double solve_tol = 1e-7, solve_rho = 1.0;
    int solve_max_iters = 50000;
    solve_cmd->add_option("--in", solve_in, "instance JSON")->required();
    solve_cmd->add_option("--variant", solve_variant, "1d or nd")
        ->check(CLI::IsMember({"1d", "nd"}));
    solve_cmd->add_option("--tol", solve_tol, "stopping tolerance");
    solve_cmd->add_option("--max-iters", solve_max_iters, "iteration budget");
    solve_cmd->add_option("--rho", solve_rho, "initial penalty");
    solve_cmd->add_option("--out", solve_out, "solution JSON")->required();

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "Run a recovery algorithm");
    std::string cluster_in, cluster_alg = "l2-norm-diag", cluster_out;
    double cluster_tol = 1e-7;
    int cluster_max_iters = 50000;
    cluster_cmd->add_option("--in", cluster_in, "instance JSON")->required();
    cluster_cmd->add_option("--alg", cluster_alg, "1-diag or l2-norm-diag")
        ->check(CLI::IsMember({"1-diag", "l2-norm-diag"}));
    cluster_cmd->add_option("--tol", cluster_tol, "solver tolerance");
    cluster_cmd->add_option("--max-iters", cluster_max_iters, "solver iteration budget");
    cluster_cmd->add_option("--out", cluster_out, "clustering JSON")->required();

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "Build/verify a certificate");
    std::string certify_in, certify_kind = "int-opt", certify_out;
    bool require_valid = false;
    certify_cmd->add_option("--in", certify_in, "instance JSON")->required();
    certify_cmd->add_option("--kind", certify_kind, "int-opt, paths, or strong-set")
        ->check(CLI::IsMember({"int-opt", "paths", "strong-set"}));
    certify_cmd->add_option("--out", certify_out, "certificate JSON (stdout if omitted)");
    certify_cmd->add_flag("--require-valid", require_valid, "exit 1 when the certificate is invalid");

    // check-assumption
    auto* assume_cmd = app.add_subcommand("check-assumption", "Per-cluster structural conditions");
    std::string assume_in, assume_out;
    double assume_cutoff = 0.6, assume_c = 2.2;
    assume_cmd->add_option("--in", assume_in, "instance JSON")->required();
    assume_cmd->add_option("--cutoff", assume_cutoff, "fringe cutoff in (0.5, 1]");
    assume_cmd->add_option("--c", assume_c, "linearization constant");
    assume_cmd->add_option("--out", assume_out, "report JSON (stdout if omitted)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Reproduce a table");
    int exp_table = 7;
    uint64_t exp_seed = 0;
    std::string exp_out, exp_json_out;
    int exp_instances = 10;
    int exp_threads = 0;
    bool exp_full6 = false;
    double exp_tol = 1e-7;
    exp_cmd->add_option("--table", exp_table, "table number 1..7")->required()
        ->check(CLI::Range(1, 7));
    exp_cmd->add_option("--seed", exp_seed, "base seed")->required();
    exp_cmd->add_option("--out", exp_out, "CSV output path")->required();
    exp_cmd->add_option("--json-out", exp_json_out, "JSON witness output path");
    exp_cmd->add_option("--instances", exp_instances, "instances per bin");
    exp_cmd->add_option("--threads", exp_threads, "worker threads (0 = auto)");
    exp_cmd->add_option("--tol", exp_tol, "solver tolerance (table 7)");
    exp_cmd->add_flag("--full-size-table6", exp_full6,
                      "use the original cluster sizes for table 6 (slow)");

    // robustness
    auto* rob_cmd = app.add_subcommand("robustness", "Diagonal-stability sweep");
    int rob_n = 40, rob_trials = 100, rob_threads = 0;
    uint64_t rob_seed = 0;
    double rob_delta = -1.0;
    std::string rob_out, rob_json_out;
    rob_cmd->add_option("--n", rob_n, "graph size");
    rob_cmd->add_option("--trials", rob_trials, "number of (W, Delta) trials");
    rob_cmd->add_option("--delta-norm", rob_delta,
                        "Frobenius norm of the perturbation (default: cycle 0.1, 1, 10)");
    rob_cmd->add_option("--seed", rob_seed, "base seed")->required();
    rob_cmd->add_option("--threads", rob_threads, "worker threads (0 = auto)");
    rob_cmd->add_option("--out", rob_out, "CSV output path");
    rob_cmd->add_option("--json-out", rob_json_out, "JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (gen->parsed()) {
        const auto alpha = parse_alpha(gen_alpha, gen_k);
        const NfmInstance inst = generate_instance(gen_n, gen_k, alpha, gen_seed);
        write_instance(inst, gen_out);
        return 0;
    }

    if (solve_cmd->parsed()) {
        const NfmInstance inst = read_instance(solve_in);
        SdpProblem prob{inst.graph.weights(), solve_variant == "1d" ? DiagConstraint::UnitDiag
                                                                    : DiagConstraint::NormDiag};
        SolverOptions opts;
        opts.tol = solve_tol;
        opts.max_iters = solve_max_iters;
        opts.rho = solve_rho;
        const SdpSolution sol = solve(prob, opts);
        write_file(solve_out, solution_to_json(sol));
        return 0;
    }

    if (cluster_cmd->parsed()) {
        const NfmInstance inst = read_instance(cluster_in);
        SolverOptions opts;
        opts.tol = cluster_tol;
        opts.max_iters = cluster_max_iters;
        if (cluster_alg == "1-diag") {
            const OneDiagResult res = one_diag(inst.graph, opts);
            RecoveredClustering rec;
            rec.threshold = std::nan("");
            if (res.is_cluster) {
                rec.clusters = res.partition;
                for (const auto& c : res.partition)
                    rec.covered.insert(rec.covered.end(), c.begin(), c.end());
                std::sort(rec.covered.begin(), rec.covered.end());
            }
            write_file(cluster_out, clustering_to_json(rec, "1-diag"));
        } else {
            const RecoveredClustering rec = l2_norm_diag(inst.graph, opts);
            write_file(cluster_out, clustering_to_json(rec, "l2-norm-diag"));
        }
        return 0;
    }

    if (certify_cmd->parsed()) {
        const NfmInstance inst = read_instance(certify_in);
        std::string payload;
        bool valid = false;
        if (certify_kind == "int-opt") {
            const IntOptCertificate cert =
                build_int_opt_certificate(inst.graph, inst.truth.clusters(), inst.truth.strays());
            payload = int_opt_to_json(cert);
            valid = cert.valid;
        } else if (certify_kind == "paths") {
            const PathCertificate cert = find_path_certificate(inst.graph);
            payload = path_certificate_to_json(cert);
            valid = cert.valid;
        } else {
            const StrongSetCertificate cert = check_strong_set(inst.graph);
            payload = strong_set_to_json(cert);
            valid = cert.valid;
        }
        if (certify_out.empty())
            std::cout << payload;
        else
            write_file(certify_out, payload);
        if (require_valid && !valid) return 1;
        return 0;
    }

    if (assume_cmd->parsed()) {
        const NfmInstance inst = read_instance(assume_in);
        const auto subsets = filter_by_strength(inst.theta, inst.truth, assume_cutoff);
        nlohmann::json out = nlohmann::json::array();
        for (int j = 0; j < inst.k; ++j) {
            if (subsets[j].empty()) {
                out.push_back({{"cluster", j}, {"empty", true}});
                continue;
            }
            const NdAssumptionReport rep =
                check_nd_assumption(rows_for_nodes(inst, subsets[j]), assume_c);
            nlohmann::json entry = nlohmann::json::parse(nd_assumption_to_json(rep));
            entry["cluster"] = j;
            entry["nodes"] = subsets[j];
            out.push_back(std::move(entry));
        }
        const std::string payload = out.dump(2) + "\n";
        if (assume_out.empty())
            std::cout << payload;
        else
            write_file(assume_out, payload);
        return 0;
    }

    if (exp_cmd->parsed()) {
        ExperimentSpec spec = defaults_for_table(exp_table, exp_seed, exp_full6);
        spec.instances = exp_instances;
        spec.threads = exp_threads;
        spec.solver.tol = exp_tol;
        const ExperimentReport report = run_table(spec);
        write_file(exp_out, report_to_csv(report));
        if (!exp_json_out.empty()) write_file(exp_json_out, report_to_json(report));
        std::cerr << "table " << exp_table << " finished in " << report.wall_seconds << " s\n";
        return 0;
    }

    if (rob_cmd->parsed()) {
        RobustnessSpec spec;
        spec.n = rob_n;
        spec.trials = rob_trials;
        spec.base_seed = rob_seed;
        spec.threads = rob_threads;
        if (rob_delta >= 0.0) spec.delta_norms = {rob_delta};
        const RobustnessReport report = run_robustness_sweep(spec);
        if (!rob_out.empty()) write_file(rob_out, robustness_to_csv(report));
        if (!rob_json_out.empty()) write_file(rob_json_out, robustness_to_json(report));
        std::cout << report.holds << "/" << report.trials - report.skipped
                  << " trials satisfied the bound (" << report.skipped << " skipped)\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
