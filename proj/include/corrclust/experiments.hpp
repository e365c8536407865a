#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "corrclust/sdp.hpp"

namespace corrclust {

struct Bin {
    int lo = 0;
    int hi = 0;
};

// One table run: which statistic to collect, generation parameters, and the
// non-overlapping size bins (cluster sizes for tables 1-6, graph sizes for
// table 7 with lo == hi).
struct ExperimentSpec {
    int table = 1;
    int k = 3;
    std::vector<double> alpha{0.3, 0.3, 0.3};
    std::vector<Bin> bins;
    int instances = 10;
    double cutoff = 0.6;   // fringe cutoff for the induced subsets
    double c = 2.2;        // linearization constant
    uint64_t base_seed = 0;
    SolverOptions solver;
    int retry_budget = 500;
    int threads = 0;       // 0 = hardware concurrency
};

// Paper-layout defaults for tables 1..7. Table 6 runs at sizes scaled down
// tenfold unless full_size_table6 is set.
ExperimentSpec defaults_for_table(int table, uint64_t base_seed, bool full_size_table6 = false);

struct InstanceOutcome {
    uint64_t seed = 0;
    int size = 0;
    bool success = false;
    std::map<std::string, double> stats;
};

struct BinReport {
    Bin bin;
    int instances = 0;
    int successes = 0;
    std::map<std::string, double> aggregates;
    std::vector<InstanceOutcome> outcomes;
};

struct ExperimentReport {
    int table = 0;
    uint64_t base_seed = 0;
    std::vector<BinReport> bins;
    double wall_seconds = 0.0;  // measured but kept out of the serialized report
};

ExperimentReport run_table_psd(const ExperimentSpec& spec);
ExperimentReport run_table_strongset(const ExperimentSpec& spec);
ExperimentReport run_table_spectral(const ExperimentSpec& spec);
ExperimentReport run_table_assumption(const ExperimentSpec& spec);
ExperimentReport run_table_recovery(const ExperimentSpec& spec);

// Dispatch on spec.table.
ExperimentReport run_table(const ExperimentSpec& spec);

std::string report_to_csv(const ExperimentReport& report);
std::string report_to_json(const ExperimentReport& report);

struct RobustnessSpec {
    int n = 40;
    int trials = 100;
    std::vector<double> delta_norms{0.1, 1.0, 10.0};  // cycled over trials
    int k = 3;
    std::vector<double> alpha{0.3, 0.3, 0.3};
    uint64_t base_seed = 0;
    SolverOptions solver;
    int threads = 0;
};

struct RobustnessTrial {
    uint64_t seed = 0;
    double delta_norm = 0.0;
    double lhs = 0.0;
    double rhs_stated = 0.0;
    double rhs_proof = 0.0;
    double objective = 0.0;
    bool holds = false;
    bool skipped = false;  // positivity precondition failed
};

struct RobustnessReport {
    int trials = 0;
    int holds = 0;
    int skipped = 0;
    std::vector<RobustnessTrial> records;
    double wall_seconds = 0.0;
};

RobustnessReport run_robustness_sweep(const RobustnessSpec& spec);

std::string robustness_to_json(const RobustnessReport& report);
std::string robustness_to_csv(const RobustnessReport& report);

// Runs fn(0..count-1) on a small thread pool; results are indexed, so the
// outcome is independent of scheduling.
void parallel_for_index(int count, int threads, const std::function<void(int)>& fn);

}  // namespace corrclust
