#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrclust/graph.hpp"
#include "corrclust/nfm.hpp"
#include "corrclust/sdp.hpp"

namespace corrclust {

// Symmetric 0/1 matrix.
struct BinaryMatrix {
    int n = 0;
    std::vector<uint8_t> a;

    BinaryMatrix() = default;
    explicit BinaryMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
    uint8_t operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    void set(int i, int j, uint8_t v) {
        a[static_cast<size_t>(i) * n + j] = v;
        a[static_cast<size_t>(j) * n + i] = v;
    }
    bool is_zero() const;
};

// Strict thresholding: entry 1 iff X_{ij} > t, applied to every entry
// including the diagonal.
BinaryMatrix round_matrix(const SymMatrix& x, double t);

struct ClusterCheck {
    bool ok = false;
    std::vector<std::vector<int>> partition;  // classes over the covered set
    std::vector<int> covered;                 // V' (full V for the full check)
};

// Full-node-set check: M is the cluster matrix of a partition of V iff its
// diagonal is all ones and the 1-relation is an equivalence. Throws
// InvalidInput on asymmetric or non-binary data.
ClusterCheck is_cluster_matrix(const BinaryMatrix& m);

// Subset variant: V' = { i : M_ii = 1 }; valid iff V' is non-empty, every
// entry outside V' x V' is zero, and M(V', V') is a cluster matrix on V'.
ClusterCheck is_cluster_submatrix(const BinaryMatrix& m);

struct OneDiagResult {
    BinaryMatrix cluster_matrix;  // all-zero when recovery failed
    bool is_cluster = false;
    std::vector<std::vector<int>> partition;
    SdpSolution solution;
};

// Solves the unit-diagonal relaxation, rounds at 0.5, and keeps the result
// only if it is a cluster matrix of the full node set. A non-converged solve
// yields the zero matrix rather than a rounding of a bad iterate.
OneDiagResult one_diag(const SignedGraph& g, const SolverOptions& opts = {});

struct RecoveredClustering {
    std::vector<std::vector<int>> clusters;  // disjoint, each non-empty
    std::vector<int> covered;                // V', union of the clusters
    double threshold = 0.0;                  // NaN for 1-diag outputs
    SdpSolution solution;
};

// Solves the norm-diagonal relaxation and sweeps candidate thresholds over
// the distinct entries of X* (deduplicated at 1e-9); returns the partition
// of the first covered set V' whose rounding is a valid cluster submatrix,
// or an empty clustering when no threshold works (including X* = 0).
RecoveredClustering l2_norm_diag(const SignedGraph& g, const SolverOptions& opts = {});

struct RecoveryEval {
    bool success = false;
    std::string detail;
    std::vector<int> matched_truth_cluster;  // per recovered cluster, or -1
};

// Success iff the number of recovered clusters equals the number of
// non-empty ground-truth clusters and some bijection sends each recovered
// cluster to a truth cluster j with strong(j) subset recovered subset V_j.
RecoveryEval evaluate_recovery(const RecoveredClustering& rec, const GroundTruth& gt);

std::string clustering_to_json(const RecoveredClustering& rec, const std::string& algorithm);

}  // namespace corrclust
