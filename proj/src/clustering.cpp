#include "corrclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "corrclust/errors.hpp"

namespace corrclust {

bool BinaryMatrix::is_zero() const {
    for (uint8_t v : a)
        if (v) return false;
    return true;
}

BinaryMatrix round_matrix(const SymMatrix& x, double t) {
    const int n = x.n();
    BinaryMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, x(i, j) > t ? 1 : 0);
    return m;
}

namespace {

void validate_binary(const BinaryMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            if (m(i, j) > 1) throw InvalidInput("cluster check: entries must be 0/1");
            if (m(i, j) != m(j, i)) throw InvalidInput("cluster check: matrix not symmetric");
        }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Equivalence test over the listed nodes; assumes unit diagonal on them.
bool relation_is_equivalence(const BinaryMatrix& m, const std::vector<int>& nodes,
                             std::vector<std::vector<int>>* partition) {
    UnionFind uf(m.n);
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b)
            if (m(nodes[a], nodes[b])) uf.unite(nodes[a], nodes[b]);
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b) {
            const bool same = uf.find(nodes[a]) == uf.find(nodes[b]);
            if (same != (m(nodes[a], nodes[b]) != 0)) return false;
        }
    if (partition) {
        partition->clear();
        std::vector<int> root_to_class(m.n, -1);
        for (int v : nodes) {
            const int r = uf.find(v);
            if (root_to_class[r] < 0) {
                root_to_class[r] = static_cast<int>(partition->size());
                partition->emplace_back();
            }
            (*partition)[root_to_class[r]].push_back(v);
        }
    }
    return true;
}

}  // namespace

ClusterCheck is_cluster_matrix(const BinaryMatrix& m) {
    validate_binary(m);
    ClusterCheck chk;
    chk.covered.resize(m.n);
    std::iota(chk.covered.begin(), chk.covered.end(), 0);
    for (int i = 0; i < m.n; ++i)
        if (!m(i, i)) return chk;
    chk.ok = relation_is_equivalence(m, chk.covered, &chk.partition);
    if (!chk.ok) chk.partition.clear();
    return chk;
}

ClusterCheck is_cluster_submatrix(const BinaryMatrix& m) {
    validate_binary(m);
    ClusterCheck chk;
    std::vector<uint8_t> in(m.n, 0);
    for (int i = 0; i < m.n; ++i)
        if (m(i, i)) {
            in[i] = 1;
            chk.covered.push_back(i);
        }
    if (chk.covered.empty()) return chk;
    for (int i = 0; i < m.n; ++i)
        for (int j = i; j < m.n; ++j)
            if ((!in[i] || !in[j]) && m(i, j)) return chk;
    chk.ok = relation_is_equivalence(m, chk.covered, &chk.partition);
    if (!chk.ok) chk.partition.clear();
    return chk;
}

OneDiagResult one_diag(const SignedGraph& g, const SolverOptions& opts) {
    OneDiagResult res;
    res.solution = solve({g.weights(), DiagConstraint::UnitDiag}, opts);
    res.cluster_matrix = BinaryMatrix(g.n());
    if (!res.solution.converged) return res;  // zero matrix instead of rounding a bad iterate
    BinaryMatrix rounded = round_matrix(res.solution.x, 0.5);
    ClusterCheck chk = is_cluster_matrix(rounded);
    if (chk.ok) {
        res.cluster_matrix = std::move(rounded);
        res.is_cluster = true;
        res.partition = std::move(chk.partition);
    }
    return res;
}

RecoveredClustering l2_norm_diag(const SignedGraph& g, const SolverOptions& opts) {
    RecoveredClustering rec;
    rec.threshold = std::nan("");
    rec.solution = solve({g.weights(), DiagConstraint::NormDiag}, opts);
    if (!rec.solution.converged) return rec;
    const SymMatrix& x = rec.solution.x;
    const double max_entry = x.max_entry();
    if (max_entry <= 1e-8) return rec;  // X* = 0: nothing to round

    // Candidate thresholds sit just below each distinct entry value
    // (deduplicated at 1e-9, ascending), so a candidate always includes its
    // own level: rounding rank-one blocks at a member's diagonal value must
    // keep that member, whose incident off-diagonal entries are larger.
    // Entries below one percent of the maximum are treated as numerically
    // void, like the zero group: the relaxation parks sub-percent mass on
    // near-stray fringe pairs (cluster blocks sit at tens of percent of the
    // maximum), and such remnants are not cluster structure. The strict
    // rounding rule then forbids the all-ones outcome whenever the solution
    // has void entries.
    std::vector<double> candidates;
    {
        const double floor = std::max(1e-9, 0.01 * max_entry);
        std::vector<double> vals(x.raw());
        std::sort(vals.begin(), vals.end());
        double last = 0.0;
        for (double v : vals)
            if (v >= floor && v - last > 1e-9) {
                candidates.push_back(v - 1e-9);
                last = v;
            }
    }

    for (double t : candidates) {
        BinaryMatrix rounded = round_matrix(x, t);
        ClusterCheck chk = is_cluster_submatrix(rounded);
        if (!chk.ok) continue;
        // Reject roundings with singleton classes: the relaxation leaves
        // genuinely positive but negligible diagonal mass on near-stray
        // nodes, and a lone diagonal survivor is not a co-clustering
        // statement. The sweep continues until such nodes drop out.
        bool has_singleton = false;
        for (const auto& cls : chk.partition)
            if (cls.size() < 2) {
                has_singleton = true;
                break;
            }
        if (has_singleton) continue;
        rec.clusters = std::move(chk.partition);
        rec.covered = std::move(chk.covered);
        rec.threshold = t;
        return rec;
    }
    return rec;
}

RecoveryEval evaluate_recovery(const RecoveredClustering& rec, const GroundTruth& gt) {
    RecoveryEval ev;
    const auto truth_clusters = gt.clusters();
    const int k_true = gt.cluster_count_nonempty();
    ev.matched_truth_cluster.assign(rec.clusters.size(), -1);

    if (static_cast<int>(rec.clusters.size()) != k_true) {
        ev.detail = "recovered " + std::to_string(rec.clusters.size()) + " clusters, expected " +
                    std::to_string(k_true);
        return ev;
    }

    std::vector<uint8_t> seen(gt.labels.size(), 0);
    std::vector<uint8_t> truth_used(gt.k, 0);
    for (size_t c = 0; c < rec.clusters.size(); ++c) {
        const auto& cluster = rec.clusters[c];
        if (cluster.empty()) {
            ev.detail = "empty recovered cluster";
            return ev;
        }
        int label = gt.labels[cluster.front()];
        for (int v : cluster) {
            if (seen[v]) {
                ev.detail = "recovered clusters overlap";
                return ev;
            }
            seen[v] = 1;
            if (gt.labels[v] != label) label = kStray;  // mixed or stray membership
        }
        if (label == kStray) {
            ev.detail = "a recovered cluster contains stray or mixed nodes";
            return ev;
        }
        if (truth_used[label]) {
            ev.detail = "two recovered clusters map to one ground-truth cluster";
            return ev;
        }
        truth_used[label] = 1;
        ev.matched_truth_cluster[c] = label;
        for (int s : gt.strong_nodes(label))
            if (std::find(cluster.begin(), cluster.end(), s) == cluster.end()) {
                ev.detail = "a strong node is missing from its recovered cluster";
                return ev;
            }
    }
    ev.success = true;
    ev.detail = "ok";
    return ev;
}

std::string clustering_to_json(const RecoveredClustering& rec, const std::string& algorithm) {
    nlohmann::json j;
    j["clusters"] = rec.clusters;
    j["covered"] = rec.covered;
    if (std::isnan(rec.threshold))
        j["threshold"] = nullptr;
    else
        j["threshold"] = rec.threshold;
    j["algorithm"] = algorithm;
    return j.dump(2) + "\n";
}

}  // namespace corrclust
