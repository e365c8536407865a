#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "corrclust/certificates.hpp"
#include "corrclust/errors.hpp"
#include "corrclust/nfm.hpp"
#include "corrclust/rng.hpp"

using namespace corrclust;

namespace {

constexpr double kStrong = 0.70710678118654752440;

RowMatrix published_block() {
    RowMatrix t(9, 3);
    const double rows[9][3] = {{0.05, 0.83, 0.11}, {0.04, 0.69, 0.27}, {0.03, 0.92, 0.05},
                               {0.02, 0.73, 0.25}, {0.11, 0.88, 0.01}, {0.25, 0.60, 0.15},
                               {0.00, 0.99, 0.01}, {0.12, 0.67, 0.21}, {0.01, 0.95, 0.04}};
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = rows[i][j];
    return t;
}

// Tight synthetic cluster features whose pairwise inner products sit where
// the logit and its linearization 2.2*(2x-1) cross, keeping the remainder
// term small; all rows are strong for the given coordinate.
RowMatrix tight_cluster_rows(int m, int k, int coord, uint64_t seed) {
    Rng rng(seed);
    RowMatrix rows(m, k);
    for (int i = 0; i < m; ++i) {
        const double a = 0.855 + 0.012 * (2.0 * rng.uniform() - 1.0);
        const double spill = 1.0 - a;
        // Split the remainder unevenly but mildly across the other coords.
        double weights = 0.0;
        std::vector<double> share(k, 0.0);
        for (int j = 0; j < k; ++j) {
            if (j == coord) continue;
            share[j] = 0.8 + 0.4 * rng.uniform();
            weights += share[j];
        }
        rows(i, coord) = a;
        for (int j = 0; j < k; ++j)
            if (j != coord) rows(i, j) = spill * share[j] / weights;
    }
    return rows;
}

SignedGraph graph_of(const RowMatrix& rows) { return SignedGraph(logit_weights(rows)); }

}  // namespace

TEST_CASE("int-opt certificate validates a noiseless two-cluster graph") {
    // Cluster {0,1,2} and {3,4}: positive inside, negative across.
    SymMatrix w(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const bool same = (i < 3) == (j < 3);
            w.set(i, j, same ? 1.0 : -0.8);
        }
    const IntOptCertificate cert =
        build_int_opt_certificate(SignedGraph(w), {{0, 1, 2}, {3, 4}}, {});
    CHECK(cert.valid);
    CHECK(cert.stationarity <= 1e-10);
    CHECK(cert.complementarity <= 1e-10);
    CHECK(cert.min_entry_y >= 0.0);
    CHECK(cert.min_eig_z >= -1e-9);
}

TEST_CASE("a valid int-opt certificate pins the solver objective") {
    SymMatrix w(5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const bool same = (i < 3) == (j < 3);
            w.set(i, j, same ? 0.7 : -0.9);
        }
    const SignedGraph g{w};
    const IntOptCertificate cert = build_int_opt_certificate(g, {{0, 1, 2}, {3, 4}}, {});
    REQUIRE(cert.valid);
    // <W, X_truth> for the cluster matrix: twice the within-cluster weights.
    const double truth_obj = 2.0 * (3 * 0.7 + 1 * 0.7);
    const SdpSolution sol = solve({w, DiagConstraint::UnitDiag}, {});
    REQUIRE(sol.converged);
    CHECK(std::abs(sol.objective - truth_obj) <= 1e-5 * (1.0 + std::abs(truth_obj)));
}

TEST_CASE("int-opt certificate flags an indefinite cluster laplacian") {
    SymMatrix w(4);
    w.set(0, 1, 0.1);
    w.set(1, 2, 0.1);
    w.set(2, 3, 0.1);
    w.set(0, 3, 0.1);
    w.set(0, 2, -2.0);  // strong negative edge inside the single cluster
    w.set(1, 3, 0.1);
    const IntOptCertificate cert =
        build_int_opt_certificate(SignedGraph(w), {{0, 1, 2, 3}}, {});
    CHECK_FALSE(cert.valid);
    CHECK(cert.min_eig_z < -1e-9);
}

TEST_CASE("int-opt certificate on a single node is trivially valid") {
    const IntOptCertificate cert =
        build_int_opt_certificate(SignedGraph(SymMatrix(1)), {{0}}, {});
    CHECK(cert.valid);
}

TEST_CASE("int-opt certificate needs a full partition") {
    SymMatrix w(3);
    w.set(0, 1, 1.0);
    CHECK_THROWS_AS(build_int_opt_certificate(SignedGraph(w), {{0, 1}}, {}), InvalidInput);
    CHECK_THROWS_AS(build_int_opt_certificate(SignedGraph(w), {{0, 1}, {1, 2}}, {}),
                    InvalidInput);
}

TEST_CASE("path certificate covers a mildly negative triangle edge") {
    SymMatrix w(3);
    w.set(0, 1, 1.0);
    w.set(1, 2, 1.0);
    w.set(0, 2, -0.25);
    const PathCertificate cert = find_path_certificate(SignedGraph(w));
    REQUIRE(cert.valid);
    REQUIRE(cert.covers.size() == 1);
    CHECK(cert.covers[0].midpoints == std::vector<int>{1});
    CHECK(cert.covers[0].provided == doctest::Approx(0.5));
    CHECK(min_eigenvalue(laplacian(SignedGraph(w))) >= -1e-9);
}

TEST_CASE("path certificate fails without positive paths") {
    SymMatrix w(2);
    w.set(0, 1, -1.0);
    CHECK_FALSE(find_path_certificate(SignedGraph(w)).valid);
}

TEST_CASE("path certificate is one-sided: failure does not decide the sign") {
    SymMatrix w(3);
    w.set(0, 1, 1.0);
    w.set(1, 2, 1.0);
    w.set(0, 2, -0.6);
    CHECK_FALSE(find_path_certificate(SignedGraph(w)).valid);
    // Here the laplacian really is indefinite.
    CHECK(min_eigenvalue(laplacian(SignedGraph(w))) < 0.0);
}

TEST_CASE("strong set certificate with margin zero") {
    SymMatrix w(4);
    w.set(0, 1, -1.0);
    for (int u : {0, 1})
        for (int s : {2, 3}) w.set(u, s, 1.0);
    w.set(2, 3, 1.0);
    const StrongSetCertificate cert = check_strong_set(SignedGraph(w), {2, 3});
    CHECK(cert.valid);
    CHECK(cert.margin == doctest::Approx(0.0));
    CHECK(min_eigenvalue(laplacian(SignedGraph(w))) >= -1e-9);

    const StrongSetCertificate auto_cert = check_strong_set(SignedGraph(w));
    CHECK(auto_cert.valid);
}

TEST_CASE("strong set certificate fails when the negative edge is too heavy") {
    SymMatrix w(4);
    w.set(0, 1, -1.5);
    for (int u : {0, 1})
        for (int s : {2, 3}) w.set(u, s, 1.0);
    w.set(2, 3, 1.0);
    const StrongSetCertificate cert = check_strong_set(SignedGraph(w), {2, 3});
    CHECK_FALSE(cert.valid);
}

TEST_CASE("strong set certificate is vacuous without negative edges") {
    SymMatrix w(3);
    w.set(0, 1, 1.0);
    w.set(1, 2, 0.5);
    const StrongSetCertificate cert = check_strong_set(SignedGraph(w));
    CHECK(cert.valid);
    CHECK(cert.u_set.empty());
    CHECK(std::isinf(cert.margin));
}

TEST_CASE("strong set rejects S overlapping U") {
    SymMatrix w(3);
    w.set(0, 1, -1.0);
    w.set(0, 2, 1.0);
    w.set(1, 2, 1.0);
    CHECK_THROWS_AS(check_strong_set(SignedGraph(w), {0, 2}), InvalidInput);
}

TEST_CASE("rank-one refit of the published block") {
    const RankOneDecomp dec = rank_one_decompose(published_block(), 2.2);
    // 8.5296 is the verified top eigenvalue of the two-decimal printed rows.
    CHECK(std::abs(dec.lambda1 - 8.5296) <= 1e-3);
    CHECK(dec.positive);
    const double expected_v[9] = {0.33, 0.17, 0.43, 0.22, 0.38, 0.06, 0.51, 0.15, 0.45};
    const double scale = std::sqrt(dec.lambda1);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(dec.q[i] / scale - expected_v[i]) <= 0.01);
    CHECK(dec.reconstruction_error <= 1e-10);
}

TEST_CASE("rank-one refit of degenerate blocks") {
    RowMatrix one_row(1, 3);
    one_row(0, 0) = 1.0;
    const RankOneDecomp single = rank_one_decompose(one_row, 2.2);
    CHECK(single.lambda1 == doctest::Approx(2.2));
    CHECK(single.q[0] == doctest::Approx(std::sqrt(2.2)));

    RowMatrix two_rows(2, 3);
    two_rows(0, 0) = two_rows(1, 0) = 1.0;
    const RankOneDecomp pair = rank_one_decompose(two_rows, 2.2);
    CHECK(pair.lambda1 == doctest::Approx(4.4));
    CHECK(pair.positive);
    CHECK(pair.q[0] == doctest::Approx(std::sqrt(4.4) / std::sqrt(2.0)));
}

TEST_CASE("rank-one refit fails when no positive eigenvalue exists") {
    // A single row within the central region: 2x - 1 < 0 for all products.
    RowMatrix rows(2, 3);
    rows(0, 0) = rows(0, 1) = rows(0, 2) = 1.0 / 3.0;
    rows(1, 0) = rows(1, 1) = rows(1, 2) = 1.0 / 3.0;
    CHECK_THROWS_AS(rank_one_decompose(rows, 2.2), DecompositionFailed);
}

TEST_CASE("structural conditions on synthetic data") {
    SUBCASE("flat q on a clean complete graph") {
        const int n = 100;
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w.set(i, j, 1.0);
        const std::vector<double> q(n, 1.0);
        std::vector<double> d(n, 1.0);
        const NdConditionReport rep = evaluate_nd_conditions(w, q, SymMatrix(n), d);
        CHECK(rep.c1_ok);   // 1 <= 100/45
        CHECK(rep.c2_ok);   // vacuous
        CHECK(rep.c3_ok);   // N = 0
        CHECK(rep.c4_ok);
        CHECK(rep.c3_ratio_mean == 0.0);
    }

    SUBCASE("spiked q violates the flatness condition") {
        const int n = 10;
        std::vector<double> q(n, 1.0);
        q[0] = 10.0;
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w.set(i, j, q[i] * q[j]);
        std::vector<double> d(n);
        for (int i = 0; i < n; ++i) d[i] = q[i] * q[i];
        const NdConditionReport rep = evaluate_nd_conditions(w, q, SymMatrix(n), d);
        CHECK_FALSE(rep.c1_ok);
    }
}

TEST_CASE("fixed point of the complete graph") {
    SUBCASE("five nodes: r = 2e") {
        const int n = 5;
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w.set(i, j, 1.0);
        const FixedPointResult fp = fixed_point(w, std::vector<double>(n, 1.0));
        REQUIRE(fp.converged);
        for (double r : fp.r) CHECK(r == doctest::Approx(2.0));
        CHECK(fp.contained);
        CHECK(fp.residual <= 1e-9 * 8.0);
    }

    SUBCASE("two nodes: r = e") {
        SymMatrix w(2);
        w.set(0, 1, 1.0);
        const FixedPointResult fp = fixed_point(w, {1.0, 1.0});
        REQUIRE(fp.converged);
        CHECK(fp.r[0] == doctest::Approx(1.0));
        CHECK(fp.r[1] == doctest::Approx(1.0));
        CHECK(fp.contained);
    }
}

TEST_CASE("exact rank-one weights converge immediately") {
    Rng rng(3);
    const int n = 6;
    std::vector<double> q(n);
    for (double& v : q) v = 0.5 + rng.uniform();
    SymMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) w.set(i, j, q[i] * q[j]);
    const FixedPointResult fp = fixed_point(w, q);
    REQUIRE(fp.converged);
    CHECK(fp.iterations <= 2);
    double beta = 0.0;
    for (int i = 0; i < n; ++i) beta += q[i] * std::cbrt(q[i]);
    beta = std::pow(beta, 1.5);
    for (int i = 0; i < n; ++i)
        CHECK(fp.r[i] == doctest::Approx(std::cbrt(beta * q[i])));
}

TEST_CASE("fixed point requires a positive q") {
    SymMatrix w(2);
    w.set(0, 1, 1.0);
    CHECK_THROWS_AS(fixed_point(w, {1.0, 0.0}), InvalidParameter);
}

TEST_CASE("nd assumption on synthetic tight clusters") {
    const RowMatrix rows = tight_cluster_rows(56, 3, 0, 21);
    const NdAssumptionReport rep = check_nd_assumption(rows, 2.2);
    CHECK(rep.conditions.q_positive);
    CHECK(rep.conditions.c1_ok);
    CHECK(rep.conditions.c2_ok);
    CHECK(rep.conditions.c3_ok);
    CHECK(rep.conditions.c4_ok);
    CHECK(rep.fp.converged);
    CHECK(rep.fp.contained);
}

TEST_CASE("nd assumption on a real dirichlet cluster reports the known ratio scale") {
    // One cluster at the fringe cutoff; condition 3 typically fails by a
    // factor well above one but bounded.
    const NfmInstance inst = generate_instance(520, 3, {0.3, 0.3, 0.3}, 303);
    const auto sets = filter_by_strength(inst.theta, inst.truth, 0.6);
    REQUIRE(sets[0].size() >= 80);
    RowMatrix rows(static_cast<int>(sets[0].size()), 3);
    for (size_t a = 0; a < sets[0].size(); ++a)
        for (int j = 0; j < 3; ++j) rows(static_cast<int>(a), j) = inst.theta(sets[0][a], j);
    const NdAssumptionReport rep = check_nd_assumption(rows, 2.2);
    CHECK(rep.decomp.positive);
    CHECK(rep.conditions.c3_ratio_mean >= 5.0);
    CHECK(rep.conditions.c3_ratio_mean <= 30.0);
}

TEST_CASE("nd-rec construction on synthetic clusters satisfying the conditions") {
    // Three tight clusters plus strays; cross weights are negative because
    // the cluster centers are far apart.
    const int sizes[3] = {52, 56, 60};
    std::vector<RowMatrix> blocks;
    int total = 0;
    for (int j = 0; j < 3; ++j) {
        blocks.push_back(tight_cluster_rows(sizes[j], 3, j, 400 + j));
        total += sizes[j];
    }
    RowMatrix all(total + 2, 3);
    std::vector<ClusterFixedPoint> fixed_points(3);
    int offset = 0;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < sizes[j]; ++i) {
            for (int c = 0; c < 3; ++c) all(offset + i, c) = blocks[j](i, c);
            fixed_points[j].nodes.push_back(offset + i);
        }
        offset += sizes[j];
    }
    // Two strays in the central region.
    for (int s = 0; s < 2; ++s)
        for (int c = 0; c < 3; ++c) all(total + s, c) = 1.0 / 3.0;

    const SignedGraph g = graph_of(all);
    for (int j = 0; j < 3; ++j) {
        const NdAssumptionReport rep = check_nd_assumption(blocks[j], 2.2);
        REQUIRE(rep.conditions.c1_ok);
        REQUIRE(rep.conditions.c2_ok);
        REQUIRE(rep.conditions.c3_ok);
        REQUIRE(rep.fp.converged);
        CHECK(rep.fp.contained);
        fixed_points[j].r = rep.fp.r;
    }
    const NdRecCertificate cert = verify_nd_rec(g, fixed_points);
    CHECK(cert.valid);
    CHECK(cert.stationarity <= 1e-7);
    CHECK(cert.complementarity <= 1e-7);
    CHECK(cert.support_matches);
    CHECK(cert.scaled_laplacian_certified);
}

TEST_CASE("nd-rec flags a cluster with a heavy internal negative edge") {
    // The fixed point still exists and stays positive here, but the heavy
    // edge makes Diag(r o r) - W indefinite.
    const int n = 12;
    SymMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w.set(i, j, 1.0);
    w.set(0, 1, -8.0);
    const SignedGraph g{w};
    const std::vector<double> q(n, 1.0);
    const FixedPointResult fp = fixed_point(w, q);
    ClusterFixedPoint cluster;
    for (int i = 0; i < n; ++i) cluster.nodes.push_back(i);
    cluster.r = fp.r;
    const NdRecCertificate cert = verify_nd_rec(g, {cluster});
    CHECK_FALSE(cert.valid);
    CHECK(cert.min_eig_z < -1e-8);
}

TEST_CASE("nd-rec matches the analytic two-node optimum") {
    const double w01 = 1.7;
    SymMatrix w(2);
    w.set(0, 1, w01);
    // r solves w*r = r^3, so r = sqrt(w) and lambda = w*sqrt(2).
    ClusterFixedPoint cluster;
    cluster.nodes = {0, 1};
    const FixedPointResult fp = fixed_point(w, {1.0, 1.0});
    REQUIRE(fp.converged);
    cluster.r = fp.r;
    const NdRecCertificate cert = verify_nd_rec(SignedGraph(w), {cluster});
    CHECK(cert.valid);
    CHECK(cert.lambda == doctest::Approx(w01 * std::sqrt(2.0)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(cert.x(i, j) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("diag robustness: zero perturbation stays within solver slack") {
    const NfmInstance inst = generate_instance(18, 3, {0.3, 0.3, 0.3}, 71);
    const DiagRobustnessReport rep =
        check_diag_robustness(inst.graph.weights(), SymMatrix(inst.n), {});
    CHECK(rep.holds);
    CHECK(rep.rhs_proof == 0.0);
    CHECK(rep.lhs <= 10.0 * 1e-7);
}

TEST_CASE("diag robustness: analytic two-node case is scale free") {
    SymMatrix w(2);
    w.set(0, 1, 1.0);
    SymMatrix delta(2);
    delta.set(0, 1, 0.1);
    const DiagRobustnessReport rep = check_diag_robustness(w, delta, {});
    CHECK(rep.holds);
    CHECK(rep.lhs <= 1e-5);
    CHECK(rep.rhs_proof > 0.0);
    CHECK(rep.rhs_stated < rep.rhs_proof);
}

TEST_CASE("diag robustness requires positive entries") {
    SymMatrix w(2);
    w.set(0, 1, -1.0);
    CHECK_THROWS_AS(check_diag_robustness(w, SymMatrix(2), {}), InvalidInput);
}

TEST_CASE("certified graphs always have PSD laplacians") {
    // Randomized soundness check over both certificate styles.
    std::mt19937_64 gen(515);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int certified = 0;
    for (int trial = 0; trial < 400 && certified < 60; ++trial) {
        const int n = 5 + static_cast<int>(gen() % 8);
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) w.set(i, j, 0.2 + unif(gen));
        // Sprinkle a few weak negative edges.
        const int negatives = 1 + static_cast<int>(gen() % 3);
        for (int e = 0; e < negatives; ++e) {
            const int i = static_cast<int>(gen() % n);
            int j = static_cast<int>(gen() % n);
            if (i == j) j = (j + 1) % n;
            w.set(i, j, -0.1 - 0.4 * unif(gen));
        }
        const SignedGraph g{w};
        const double bound = -1e-9 * laplacian(g).frob_norm();
        if (find_path_certificate(g).valid) {
            ++certified;
            CHECK(min_eigenvalue(laplacian(g)) >= bound);
        }
        if (check_strong_set(g).valid) {
            ++certified;
            CHECK(min_eigenvalue(laplacian(g)) >= bound);
        }
    }
    CHECK(certified >= 60);
}
