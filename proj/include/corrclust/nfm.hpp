#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrclust/graph.hpp"
#include "corrclust/matrix.hpp"

namespace corrclust {

// Node feature vectors: n rows on the unit simplex in R^k.
struct FeatureMatrix {
    int n = 0;
    int k = 0;
    std::vector<double> theta;  // n*k row-major

    double operator()(int i, int j) const { return theta[static_cast<size_t>(i) * k + j]; }
    std::vector<double> row(int i) const;

    // Checks the simplex invariant (non-negative rows summing to 1 within
    // 1e-12); throws InvalidInput on violation.
    void validate() const;
};

constexpr int kStray = -1;

enum class Strength : int8_t { strong = 0, fringe = 1 };

// Per-node labeling induced by the features: cluster index (argmax entry
// when it exceeds 0.5) or stray, plus strong/fringe for clustered nodes
// (strong iff the cluster coordinate is at least 1/sqrt(2)).
struct GroundTruth {
    int k = 0;
    std::vector<int> labels;            // cluster in [0,k) or kStray
    std::vector<Strength> strength;     // meaningful where labels[i] != kStray
    std::vector<uint8_t> argmax_tie;    // 1 where the argmax was tied in float

    std::vector<std::vector<int>> clusters() const;  // k lists
    std::vector<int> strays() const;
    std::vector<int> strong_nodes(int j) const;
    int cluster_count_nonempty() const;
};

// n i.i.d. Dirichlet(alpha) rows; deterministic for a fixed seed.
FeatureMatrix sample_dirichlet(int n, int k, const std::vector<double>& alpha, uint64_t seed);

// W_{ii'} = logit(clamp(<theta_i, theta_i'>, 1e-12, 1-1e-12)) off the
// diagonal, zero on it.
SignedGraph build_weights(const FeatureMatrix& theta);

// Same weight formula for an arbitrary dense row matrix (rows need not be
// validated simplex points); used on published feature blocks.
SymMatrix logit_weights(const RowMatrix& rows);

GroundTruth ground_truth(const FeatureMatrix& theta);

// V_j' = { i : theta(i, j) >= cutoff } for each cluster j. Requires
// 0.5 < cutoff <= 1.
std::vector<std::vector<int>> filter_by_strength(const FeatureMatrix& theta,
                                                 const GroundTruth& gt, double cutoff);

struct NfmInstance {
    int n = 0;
    int k = 0;
    std::vector<double> alpha;
    uint64_t seed = 0;
    FeatureMatrix theta;
    SignedGraph graph;
    GroundTruth truth;
};

NfmInstance generate_instance(int n, int k, const std::vector<double>& alpha, uint64_t seed);

// Checks the sign structure every generated instance must have (stray rows
// all-negative, cross-cluster edges negative, strong same-cluster edges
// non-negative). Returns human-readable violations; empty means clean.
std::vector<std::string> validate_instance(const NfmInstance& inst);

std::string instance_to_json(const NfmInstance& inst);
NfmInstance instance_from_json(const std::string& text);
void write_instance(const NfmInstance& inst, const std::string& path);
NfmInstance read_instance(const std::string& path);

}  // namespace corrclust
