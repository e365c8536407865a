#include "corrclust/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "corrclust/certificates.hpp"
#include "corrclust/clustering.hpp"
#include "corrclust/errors.hpp"
#include "corrclust/nfm.hpp"
#include "corrclust/rng.hpp"

namespace corrclust {

void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

ExperimentSpec defaults_for_table(int table, uint64_t base_seed, bool full_size_table6) {
    ExperimentSpec spec;
    spec.table = table;
    spec.base_seed = base_seed;
    switch (table) {
        case 1:
        case 2:
            spec.bins = {{6, 10}, {11, 15}, {16, 20}, {21, 25}, {26, 30}, {31, 35}, {36, 40}};
            break;
        case 3:
            spec.bins = {{6, 10}, {11, 15}, {16, 20}};
            break;
        case 4:
            spec.bins = {{21, 25}, {26, 30}, {31, 35}};
            break;
        case 5:
            spec.bins = {{36, 40}};
            break;
        case 6:
            if (full_size_table6)
                spec.bins = {{1201, 1300}, {1301, 1400}, {1401, 1500}, {1501, 1600},
                             {1601, 1700}, {1701, 1800}, {1801, 1900}};
            else
                spec.bins = {{120, 129}, {130, 139}, {140, 149}, {150, 159},
                             {160, 169}, {170, 179}, {180, 189}};
            break;
        case 7:
            spec.bins = {{60, 60},   {70, 70},   {80, 80},   {90, 90},  {100, 100},
                         {110, 110}, {120, 120}, {130, 130}, {140, 140}};
            break;
        default:
            throw InvalidParameter("defaults_for_table: table must be 1..7");
    }
    return spec;
}

namespace {

void validate_spec(const ExperimentSpec& spec) {
    if (spec.instances < 1) throw InvalidParameter("experiment: instances must be >= 1");
    if (spec.k < 1) throw InvalidParameter("experiment: k must be >= 1");
    std::vector<Bin> sorted = spec.bins;
    std::sort(sorted.begin(), sorted.end(), [](const Bin& a, const Bin& b) { return a.lo < b.lo; });
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].lo > sorted[i].hi) throw InvalidParameter("experiment: bin with lo > hi");
        if (i > 0 && sorted[i].lo <= sorted[i - 1].hi)
            throw InvalidParameter("experiment: bins overlap");
    }
}

uint64_t derive_seed(uint64_t base, size_t bin_index, int slot, int attempt) {
    return base + 1000003ULL * static_cast<uint64_t>(bin_index) +
           1009ULL * static_cast<uint64_t>(attempt) + static_cast<uint64_t>(slot);
}

// Target set of cluster 0: the whole cluster (cutoff <= 0), or the nodes with
// first coordinate at least cutoff.
std::vector<int> target_set(const FeatureMatrix& theta, double cutoff) {
    std::vector<int> nodes;
    if (cutoff > 0.0) {
        for (int i = 0; i < theta.n; ++i)
            if (theta(i, 0) >= cutoff) nodes.push_back(i);
    } else {
        for (int i = 0; i < theta.n; ++i) {
            double best = theta(i, 0);
            int arg = 0;
            for (int j = 1; j < theta.k; ++j)
                if (theta(i, j) > best) {
                    best = theta(i, j);
                    arg = j;
                }
            if (arg == 0 && best > 0.5) nodes.push_back(i);
        }
    }
    return nodes;
}

// Monte-Carlo estimate of the per-node probability of landing in the
// target set, used to size the rejection sampling.
double estimate_target_probability(const ExperimentSpec& spec, double cutoff) {
    const int samples = 40000;
    FeatureMatrix theta =
        sample_dirichlet(samples, spec.k, spec.alpha, spec.base_seed ^ 0x5eedf00dULL);
    const auto nodes = target_set(theta, cutoff);
    return std::max(1e-4, static_cast<double>(nodes.size()) / samples);
}

struct ClusterDraw {
    uint64_t seed = 0;
    RowMatrix rows;           // features of the accepted target set
    SignedGraph subgraph;     // logit weights among them
};

ClusterDraw draw_cluster_in_bin(const ExperimentSpec& spec, size_t bin_index, int slot,
                                double cutoff, int n_sample) {
    const Bin bin = spec.bins[bin_index];
    for (int attempt = 0; attempt < spec.retry_budget; ++attempt) {
        const uint64_t seed = derive_seed(spec.base_seed, bin_index, slot, attempt);
        FeatureMatrix theta = sample_dirichlet(n_sample, spec.k, spec.alpha, seed);
        const auto nodes = target_set(theta, cutoff);
        const int size = static_cast<int>(nodes.size());
        if (size < bin.lo || size > bin.hi) continue;
        ClusterDraw draw;
        draw.seed = seed;
        draw.rows = RowMatrix(size, spec.k);
        for (int a = 0; a < size; ++a)
            for (int j = 0; j < spec.k; ++j) draw.rows(a, j) = theta(nodes[a], j);
        draw.subgraph = SignedGraph(logit_weights(draw.rows));
        return draw;
    }
    std::ostringstream msg;
    msg << "bin " << bin.lo << "-" << bin.hi << " not reachable in " << spec.retry_budget
        << " attempts";
    throw BinExhausted(msg.str());
}

using InstanceFn = std::function<InstanceOutcome(const ExperimentSpec&, size_t, int)>;

ExperimentReport run_binned(const ExperimentSpec& spec, const InstanceFn& fn) {
    validate_spec(spec);
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.table = spec.table;
    report.base_seed = spec.base_seed;
    report.bins.resize(spec.bins.size());
    for (size_t b = 0; b < spec.bins.size(); ++b) {
        BinReport& bin_report = report.bins[b];
        bin_report.bin = spec.bins[b];
        bin_report.instances = spec.instances;
        bin_report.outcomes.resize(spec.instances);
        parallel_for_index(spec.instances, spec.threads,
                           [&](int slot) { bin_report.outcomes[slot] = fn(spec, b, slot); });
        for (const auto& o : bin_report.outcomes)
            if (o.success) ++bin_report.successes;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

void mean_aggregate(BinReport& bin, const std::string& key) {
    double sum = 0.0;
    int count = 0;
    for (const auto& o : bin.outcomes) {
        auto it = o.stats.find(key);
        if (it != o.stats.end() && std::isfinite(it->second)) {
            sum += it->second;
            ++count;
        }
    }
    if (count > 0) bin.aggregates["mean_" + key] = sum / count;
}

}  // namespace

ExperimentReport run_table_psd(const ExperimentSpec& spec) {
    const double p = estimate_target_probability(spec, 0.0);
    ExperimentReport report = run_binned(spec, [&](const ExperimentSpec& s, size_t b, int slot) {
        const Bin bin = s.bins[b];
        const int n_sample =
            std::max(bin.hi + 2, static_cast<int>(std::lround(0.5 * (bin.lo + bin.hi) / p)));
        ClusterDraw draw = draw_cluster_in_bin(s, b, slot, 0.0, n_sample);
        InstanceOutcome out;
        out.seed = draw.seed;
        out.size = draw.subgraph.n();
        const double min_eig = min_eigenvalue(laplacian(draw.subgraph));
        out.stats["min_laplacian_eigenvalue"] = min_eig;
        out.success = min_eig >= -1e-9;
        return out;
    });
    for (auto& bin : report.bins) mean_aggregate(bin, "min_laplacian_eigenvalue");
    return report;
}

ExperimentReport run_table_strongset(const ExperimentSpec& spec) {
    const double p = estimate_target_probability(spec, spec.cutoff);
    return run_binned(spec, [&](const ExperimentSpec& s, size_t b, int slot) {
        const Bin bin = s.bins[b];
        const int n_sample =
            std::max(bin.hi + 2, static_cast<int>(std::lround(0.5 * (bin.lo + bin.hi) / p)));
        ClusterDraw draw = draw_cluster_in_bin(s, b, slot, s.cutoff, n_sample);
        InstanceOutcome out;
        out.seed = draw.seed;
        out.size = draw.subgraph.n();
        const StrongSetCertificate cert = check_strong_set(draw.subgraph);
        out.success = cert.valid;
        out.stats["s_size"] = static_cast<double>(cert.s_set.size());
        out.stats["u_size"] = static_cast<double>(cert.u_set.size());
        if (std::isfinite(cert.margin)) out.stats["margin"] = cert.margin;
        return out;
    });
}

ExperimentReport run_table_spectral(const ExperimentSpec& spec) {
    const double p = estimate_target_probability(spec, spec.cutoff);
    ExperimentReport report = run_binned(spec, [&](const ExperimentSpec& s, size_t b, int slot) {
        const Bin bin = s.bins[b];
        const int n_sample =
            std::max(bin.hi + 2, static_cast<int>(std::lround(0.5 * (bin.lo + bin.hi) / p)));
        ClusterDraw draw = draw_cluster_in_bin(s, b, slot, s.cutoff, n_sample);
        InstanceOutcome out;
        out.seed = draw.seed;
        out.size = draw.subgraph.n();
        const RankOneDecomp dec = rank_one_decompose(draw.rows, s.c);
        out.success = dec.positive;
        out.stats["lambda1"] = dec.lambda1;
        out.stats["lambda2"] = dec.lambda2;
        out.stats["lambda3"] = dec.lambda_min;
        out.stats["separation"] =
            dec.lambda1 / std::max({std::abs(dec.lambda2), std::abs(dec.lambda_min), 1e-300});
        return out;
    });
    for (auto& bin : report.bins) {
        mean_aggregate(bin, "lambda1");
        mean_aggregate(bin, "lambda2");
        mean_aggregate(bin, "lambda3");
    }
    return report;
}

ExperimentReport run_table_assumption(const ExperimentSpec& spec) {
    const double p = estimate_target_probability(spec, spec.cutoff);
    ExperimentReport report = run_binned(spec, [&](const ExperimentSpec& s, size_t b, int slot) {
        const Bin bin = s.bins[b];
        const int n_sample =
            std::max(bin.hi + 2, static_cast<int>(std::lround(0.5 * (bin.lo + bin.hi) / p)));
        ClusterDraw draw = draw_cluster_in_bin(s, b, slot, s.cutoff, n_sample);
        InstanceOutcome out;
        out.seed = draw.seed;
        out.size = draw.subgraph.n();
        const NdAssumptionReport rep = check_nd_assumption(draw.rows, s.c);
        out.success = rep.conditions.c1_ok && rep.conditions.c2_ok;
        out.stats["c1_ok"] = rep.conditions.c1_ok ? 1.0 : 0.0;
        out.stats["c2_ok"] = rep.conditions.c2_ok ? 1.0 : 0.0;
        out.stats["c3_ratio_mean"] = rep.conditions.c3_ratio_mean;
        out.stats["fixed_point_contained"] = rep.fp.contained ? 1.0 : 0.0;
        return out;
    });
    // The C3 column averages only instances passing conditions 1 and 2;
    // when none pass, the all-instance average is reported instead.
    for (auto& bin : report.bins) {
        double sum_pass = 0.0, sum_all = 0.0;
        int n_pass = 0, n_all = 0;
        for (const auto& o : bin.outcomes) {
            const double ratio = o.stats.at("c3_ratio_mean");
            sum_all += ratio;
            ++n_all;
            if (o.success) {
                sum_pass += ratio;
                ++n_pass;
            }
        }
        bin.aggregates["average_c3_upper_bound"] =
            n_pass > 0 ? sum_pass / n_pass : (n_all > 0 ? sum_all / n_all : 0.0);
        bin.aggregates["c3_average_over_passing"] = n_pass > 0 ? 1.0 : 0.0;
    }
    return report;
}

ExperimentReport run_table_recovery(const ExperimentSpec& spec) {
    return run_binned(spec, [&](const ExperimentSpec& s, size_t b, int slot) {
        const int n = s.bins[b].lo;
        const uint64_t seed = derive_seed(s.base_seed, b, slot, 0);
        const NfmInstance inst = generate_instance(n, s.k, s.alpha, seed);
        InstanceOutcome out;
        out.seed = seed;
        out.size = n;
        const RecoveredClustering rec = l2_norm_diag(inst.graph, s.solver);
        const RecoveryEval ev = evaluate_recovery(rec, inst.truth);
        out.success = ev.success;
        out.stats["clusters_recovered"] = static_cast<double>(rec.clusters.size());
        out.stats["solver_iterations"] = static_cast<double>(rec.solution.iterations);
        out.stats["solver_converged"] = rec.solution.converged ? 1.0 : 0.0;
        if (std::isfinite(rec.threshold)) out.stats["threshold"] = rec.threshold;
        return out;
    });
}

ExperimentReport run_table(const ExperimentSpec& spec) {
    switch (spec.table) {
        case 1:
            return run_table_psd(spec);
        case 2:
            return run_table_strongset(spec);
        case 3:
        case 4:
        case 5:
            return run_table_spectral(spec);
        case 6:
            return run_table_assumption(spec);
        case 7:
            return run_table_recovery(spec);
        default:
            throw InvalidParameter("run_table: table must be 1..7");
    }
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream csv;
    csv.precision(6);
    auto range = [](const Bin& b) {
        return b.lo == b.hi ? std::to_string(b.lo)
                            : std::to_string(b.lo) + "-" + std::to_string(b.hi);
    };
    switch (report.table) {
        case 1:
            csv << "cluster_size_range,psd_success,mean_min_laplacian_eigenvalue\n";
            for (const auto& b : report.bins) {
                double mean = b.aggregates.count("mean_min_laplacian_eigenvalue")
                                  ? b.aggregates.at("mean_min_laplacian_eigenvalue")
                                  : 0.0;
                csv << range(b.bin) << "," << b.successes << "," << mean << "\n";
            }
            break;
        case 2:
            csv << "cluster_size_range,combinatorial_condition_success\n";
            for (const auto& b : report.bins)
                csv << range(b.bin) << "," << b.successes << "\n";
            break;
        case 3:
        case 4:
        case 5:
            csv << "cluster_size_range,eigenvector_success,mean_lambda1,mean_lambda2,mean_lambda3\n";
            for (const auto& b : report.bins)
                csv << range(b.bin) << "," << b.successes << "," << b.aggregates.at("mean_lambda1")
                    << "," << b.aggregates.at("mean_lambda2") << ","
                    << b.aggregates.at("mean_lambda3") << "\n";
            break;
        case 6:
            csv << "cluster_size_range,c1_c2_success,average_c3_upper_bound\n";
            for (const auto& b : report.bins)
                csv << range(b.bin) << "," << b.successes << ","
                    << b.aggregates.at("average_c3_upper_bound") << "\n";
            break;
        case 7:
            csv << "graph_size,l2_norm_diag_success\n";
            for (const auto& b : report.bins)
                csv << range(b.bin) << "," << b.successes << "\n";
            break;
        default:
            throw InvalidParameter("report_to_csv: unknown table");
    }
    return csv.str();
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["table"] = report.table;
    j["base_seed"] = report.base_seed;
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : report.bins) {
        nlohmann::json jb;
        jb["range"] = {b.bin.lo, b.bin.hi};
        jb["instances"] = b.instances;
        jb["successes"] = b.successes;
        jb["aggregates"] = b.aggregates;
        nlohmann::json outs = nlohmann::json::array();
        for (const auto& o : b.outcomes) {
            nlohmann::json jo;
            jo["seed"] = o.seed;
            jo["size"] = o.size;
            jo["success"] = o.success;
            jo["stats"] = o.stats;
            outs.push_back(std::move(jo));
        }
        jb["outcomes"] = std::move(outs);
        bins.push_back(std::move(jb));
    }
    j["bins"] = std::move(bins);
    return j.dump(2) + "\n";
}

RobustnessReport run_robustness_sweep(const RobustnessSpec& spec) {
    if (spec.trials < 1) throw InvalidParameter("robustness: trials must be >= 1");
    if (spec.delta_norms.empty()) throw InvalidParameter("robustness: need delta norms");
    const auto start = std::chrono::steady_clock::now();
    RobustnessReport report;
    report.trials = spec.trials;
    report.records.resize(spec.trials);

    parallel_for_index(spec.trials, spec.threads, [&](int t) {
        RobustnessTrial& trial = report.records[t];
        trial.seed = spec.base_seed + static_cast<uint64_t>(t);
        trial.delta_norm = spec.delta_norms[t % spec.delta_norms.size()];

        const NfmInstance inst = generate_instance(spec.n, spec.k, spec.alpha, trial.seed);
        SymMatrix delta(spec.n);
        if (trial.delta_norm > 0.0) {
            Rng rng(trial.seed ^ 0xde17a5eedULL);
            double norm_sq = 0.0;
            for (int i = 0; i < spec.n; ++i)
                for (int j = i + 1; j < spec.n; ++j) {
                    const double gauss = rng.normal();
                    delta.set(i, j, gauss);
                    norm_sq += 2.0 * gauss * gauss;
                }
            const double scale = trial.delta_norm / std::sqrt(norm_sq);
            for (double& v : delta.raw()) v *= scale;
        }
        try {
            const DiagRobustnessReport rep =
                check_diag_robustness(inst.graph.weights(), delta, spec.solver);
            trial.lhs = rep.lhs;
            trial.rhs_stated = rep.rhs_stated;
            trial.rhs_proof = rep.rhs_proof;
            trial.objective = rep.objective;
            trial.holds = rep.holds;
        } catch (const InvalidInput&) {
            trial.skipped = true;
        }
    });

    for (const auto& trial : report.records) {
        if (trial.skipped)
            ++report.skipped;
        else if (trial.holds)
            ++report.holds;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string robustness_to_json(const RobustnessReport& report) {
    nlohmann::json j;
    j["trials"] = report.trials;
    j["holds"] = report.holds;
    j["skipped"] = report.skipped;
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : report.records) {
        recs.push_back({{"seed", r.seed},
                        {"delta_norm", r.delta_norm},
                        {"lhs", r.lhs},
                        {"rhs_stated", r.rhs_stated},
                        {"rhs_proof", r.rhs_proof},
                        {"objective", r.objective},
                        {"holds", r.holds},
                        {"skipped", r.skipped}});
    }
    j["records"] = std::move(recs);
    return j.dump(2) + "\n";
}

std::string robustness_to_csv(const RobustnessReport& report) {
    std::ostringstream csv;
    csv.precision(9);
    csv << "seed,delta_norm,lhs,rhs_proof,rhs_stated,objective,holds,skipped\n";
    for (const auto& r : report.records)
        csv << r.seed << "," << r.delta_norm << "," << r.lhs << "," << r.rhs_proof << ","
            << r.rhs_stated << "," << r.objective << "," << (r.holds ? 1 : 0) << ","
            << (r.skipped ? 1 : 0) << "\n";
    return csv.str();
}

}  // namespace corrclust
