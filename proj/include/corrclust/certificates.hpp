#pragma once

#include <string>
#include <vector>

#include "corrclust/graph.hpp"
#include "corrclust/matrix.hpp"
#include "corrclust/sdp.hpp"

namespace corrclust {

// Dual certificate for integral optimality of the unit-diagonal relaxation:
// Y, Z, y assembled blockwise from a partition (cross-cluster and stray
// blocks of Y carry -W, cluster blocks of Z carry the cluster Laplacians,
// y holds within-cluster row sums).
struct IntOptCertificate {
    SymMatrix y;
    SymMatrix z;
    std::vector<double> diag_dual;
    double stationarity = 0.0;       // ||W + Y + Z - Diag(y)||_F
    double complementarity = 0.0;    // max(|X.*Y| entries, |<X,Z>|)
    double min_entry_y = 0.0;
    double min_eig_z = 0.0;
    bool valid = false;
};

IntOptCertificate build_int_opt_certificate(const SignedGraph& g,
                                            const std::vector<std::vector<int>>& clusters,
                                            const std::vector<int>& strays);

// One negative edge covered by disjoint positive two-edge paths whose half
// harmonic means dominate the edge magnitude.
struct PathCover {
    int i = 0, j = 0;          // the negative edge
    std::vector<int> midpoints;
    double required = 0.0;     // -W_ij
    double provided = 0.0;     // sum of w_iv*w_jv/(w_iv+w_jv)
};

struct PathCertificate {
    bool valid = false;
    std::vector<PathCover> covers;
};

// Greedy one-sided checker: processes negative edges by decreasing
// magnitude, claiming midpoints (and their two edges) globally so the
// certificate's subgraphs stay disjoint. Failure is a value, not an error,
// and does not imply indefiniteness.
PathCertificate find_path_certificate(const SignedGraph& g);

// Witness for the negative-neighborhood condition: every node of U (the
// negative-edge-adjacent set) must see every node of S with enough positive
// weight relative to its negative degree.
struct StrongSetCertificate {
    bool valid = false;
    std::vector<int> u_set;
    std::vector<int> s_set;
    double margin = 0.0;  // min over (u,s) of LHS - RHS; +inf when vacuous
};

// Auto mode: starts from S = V \ U and greedily drops the worst-violating
// node until the condition holds or S is empty.
StrongSetCertificate check_strong_set(const SignedGraph& g);
// Fixed-S mode; throws InvalidInput when S intersects U.
StrongSetCertificate check_strong_set(const SignedGraph& g, const std::vector<int>& s_set);

// Rank-one refit of a cluster block: eigendecompose c*(2*Theta*Theta^T - E),
// take q = sqrt(lambda1)*v1 (sign fixed so the entry sum is non-negative),
// and split the true logit weights as W = q q^T - D + N with D = Diag(q o q)
// and N the zero-diagonal remainder.
struct RankOneDecomp {
    std::vector<double> q;
    std::vector<double> d;      // diagonal of D
    SymMatrix n_mat;            // remainder N
    SymMatrix w_actual;         // logit weights of the block
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda_min = 0.0;
    double eig_gap = 0.0;       // lambda1 - max |other eigenvalue|
    bool positive = false;      // all entries of v1 strictly positive
    double reconstruction_error = 0.0;
};

RankOneDecomp rank_one_decompose(const RowMatrix& theta_rows, double c);

struct FixedPointResult {
    std::vector<double> r;
    bool contained = false;   // final iterate inside [1/2 (bq)^(1/3), 3/2 (bq)^(1/3)]
    double residual = 0.0;    // ||W r - r^(o3)||
    bool converged = false;
    bool left_positive_orthant = false;
    int iterations = 0;
};

// Picard iteration x <- (W x)^(1/3) from x0 = (beta q)^(1/3) with
// beta = (q^T q^(1/3))^(3/2); signed real cube root; stops at relative step
// 1e-12 or 10^4 iterations. Divergence is reported, not thrown.
FixedPointResult fixed_point(const SymMatrix& w, const std::vector<double>& q);

// Numeric evaluation of the four block-structure conditions, given the
// decomposition pieces directly. Used both by the theta-driven check and by
// synthetic tests that pick q and N by hand.
struct NdConditionReport {
    bool c1_ok = false;          // max(q^(4/3)) <= ||q^(2/3)||^2 / 45
    bool c2_ok = false;          // weighted strong-set condition, factor 6
    bool c3_ok = false;          // row norms of N within their bounds
    bool c4_ok = false;          // D = Diag(q o q)
    bool q_positive = false;
    std::vector<double> c3_ratios;  // per node; <= 1 iff within bound
    double c3_ratio_mean = 0.0;
    StrongSetCertificate c2_witness;
};

NdConditionReport evaluate_nd_conditions(const SymMatrix& w, const std::vector<double>& q,
                                         const SymMatrix& n_mat, const std::vector<double>& d);

// Full per-cluster assumption report: rank-one refit from the feature rows,
// the four conditions against the actual logit block, and the fixed point.
struct NdAssumptionReport {
    RankOneDecomp decomp;
    NdConditionReport conditions;
    FixedPointResult fp;
    double c = 0.0;  // linearization constant used
};

NdAssumptionReport check_nd_assumption(const RowMatrix& theta_rows, double c);

// Primal-dual construction for the norm-diagonal relaxation from per-cluster
// fixed points: X = blockdiag(r_j r_j^T)/lambda, Z = Diag(r_j o r_j) - W_j,
// Y = -W on cross and stray blocks, lambda = sqrt(sum ||r_j o r_j||^2).
struct NdRecCertificate {
    SymMatrix x;
    SymMatrix y;
    SymMatrix z;
    double lambda = 0.0;
    double diag_norm_error = 0.0;    // | ||diag X|| - 1 |
    double min_entry_x = 0.0;
    double min_entry_y = 0.0;
    double min_eig_z = 0.0;
    double stationarity = 0.0;       // ||W + Y + Z - lambda Diag(X)||_F
    double complementarity = 0.0;    // max(|X.*Y|, |<X,Z>|)
    bool support_matches = false;    // X_ij > 0 iff same cluster
    bool scaled_laplacian_certified = false;  // strong-set witness on each scaled block
    bool valid = false;
};

struct ClusterFixedPoint {
    std::vector<int> nodes;
    std::vector<double> r;
};

NdRecCertificate verify_nd_rec(const SignedGraph& g,
                               const std::vector<ClusterFixedPoint>& clusters);

struct DiagRobustnessReport {
    double lhs = 0.0;          // ||diag X* - diag X'||
    double rhs_stated = 0.0;   // 2 (2n)^(1/4) ||Delta||_F^(1/2) / <W,X*>^(1/2)
    double rhs_proof = 0.0;    // 2 sqrt(2) n^(1/4) ||Delta||_F^(1/2) / <W,X*>^(1/2)
    double objective = 0.0;    // <W, X*>
    bool holds = false;        // lhs <= rhs_proof + 10*tol
};

// Requires both W and W+Delta to contain a positive entry.
DiagRobustnessReport check_diag_robustness(const SymMatrix& w, const SymMatrix& delta,
                                           const SolverOptions& opts = {});

std::string int_opt_to_json(const IntOptCertificate& cert);
std::string path_certificate_to_json(const PathCertificate& cert);
std::string strong_set_to_json(const StrongSetCertificate& cert);
std::string nd_assumption_to_json(const NdAssumptionReport& rep);

}  // namespace corrclust
