#include "corrclust/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "corrclust/errors.hpp"
#include "corrclust/nfm.hpp"

namespace corrclust {

namespace {

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> pow_each(const std::vector<double>& v, double p) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = std::pow(v[i], p);
    return r;
}

// Membership map: cluster index per node, -1 for nodes outside all clusters.
std::vector<int> membership(int n, const std::vector<std::vector<int>>& clusters) {
    std::vector<int> m(n, -1);
    for (size_t j = 0; j < clusters.size(); ++j)
        for (int v : clusters[j]) {
            if (v < 0 || v >= n) throw InvalidInput("certificate: node index out of range");
            if (m[v] != -1) throw InvalidInput("certificate: clusters overlap");
            m[v] = static_cast<int>(j);
        }
    return m;
}

std::vector<int> negative_adjacent_set(const SymMatrix& w) {
    std::vector<int> u;
    for (int i = 0; i < w.n(); ++i)
        for (int j = 0; j < w.n(); ++j)
            if (j != i && w(i, j) < 0.0) {
                u.push_back(i);
                break;
            }
    return u;
}

// Shared search for the two strong-set style conditions:
//   |S| * weight[s] * W(u,s) >= factor * sum_{u': W(u,u')<0} weight[u'] * |W(u,u')|
// (factor 2 with unit weights, factor 6 with weights q^(1/3)).
StrongSetCertificate strong_set_core(const SymMatrix& w, const std::vector<double>& weight,
                                     double factor, const std::vector<int>* fixed_s) {
    StrongSetCertificate cert;
    cert.u_set = negative_adjacent_set(w);
    const int n = w.n();

    std::vector<uint8_t> in_u(n, 0);
    for (int u : cert.u_set) in_u[u] = 1;

    if (fixed_s) {
        for (int s : fixed_s[0])
            if (in_u[s]) throw InvalidInput("strong set: S intersects U");
        cert.s_set = *fixed_s;
    } else {
        for (int i = 0; i < n; ++i)
            if (!in_u[i]) cert.s_set.push_back(i);
    }

    if (cert.u_set.empty()) {
        cert.valid = true;
        cert.margin = std::numeric_limits<double>::infinity();
        return cert;
    }

    std::vector<double> rhs(cert.u_set.size(), 0.0);
    for (size_t a = 0; a < cert.u_set.size(); ++a) {
        const int u = cert.u_set[a];
        for (int v = 0; v < n; ++v)
            if (v != u && w(u, v) < 0.0) rhs[a] += factor * weight[v] * (-w(u, v));
    }

    auto evaluate = [&](const std::vector<int>& s_nodes, int* worst_s) {
        double margin = std::numeric_limits<double>::infinity();
        if (worst_s) *worst_s = -1;
        const double size = static_cast<double>(s_nodes.size());
        for (int s : s_nodes)
            for (size_t a = 0; a < cert.u_set.size(); ++a) {
                const double slack = size * weight[s] * w(cert.u_set[a], s) - rhs[a];
                if (slack < margin) {
                    margin = slack;
                    if (worst_s) *worst_s = s;
                }
            }
        return margin;
    };

    if (fixed_s) {
        cert.margin = evaluate(cert.s_set, nullptr);
        cert.valid = cert.s_set.empty() ? false : cert.margin >= 0.0;
        return cert;
    }

    // Greedy shrink: drop the node carrying the most violated pair.
    while (!cert.s_set.empty()) {
        int worst = -1;
        const double margin = evaluate(cert.s_set, &worst);
        if (margin >= 0.0) {
            cert.margin = margin;
            cert.valid = true;
            return cert;
        }
        cert.s_set.erase(std::find(cert.s_set.begin(), cert.s_set.end(), worst));
    }
    cert.margin = -std::numeric_limits<double>::infinity();
    cert.valid = false;
    return cert;
}

}  // namespace

IntOptCertificate build_int_opt_certificate(const SignedGraph& g,
                                            const std::vector<std::vector<int>>& clusters,
                                            const std::vector<int>& strays) {
    const int n = g.n();
    const SymMatrix& w = g.weights();
    std::vector<int> member = membership(n, clusters);
    for (int v : strays) {
        if (v < 0 || v >= n) throw InvalidInput("certificate: stray index out of range");
        if (member[v] != -1) throw InvalidInput("certificate: stray overlaps a cluster");
        member[v] = -2;
    }
    for (int i = 0; i < n; ++i)
        if (member[i] == -1) throw InvalidInput("certificate: partition does not cover V");

    IntOptCertificate cert;
    cert.y = SymMatrix(n);
    cert.z = SymMatrix(n);
    cert.diag_dual.assign(n, 0.0);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (member[i] != member[j] || member[i] == -2)
                cert.y.set(i, j, -w(i, j));

    double min_block_eig = 0.0;
    for (const auto& cluster : clusters) {
        if (cluster.empty()) continue;
        const SymMatrix block_l = laplacian(g.induced(cluster));
        min_block_eig = std::min(min_block_eig, min_eigenvalue(block_l));
        for (size_t a = 0; a < cluster.size(); ++a) {
            cert.diag_dual[cluster[a]] = block_l(static_cast<int>(a), static_cast<int>(a)) +
                                         w(cluster[a], cluster[a]);
            for (size_t b = a; b < cluster.size(); ++b)
                cert.z.set(cluster[a], cluster[b],
                           block_l(static_cast<int>(a), static_cast<int>(b)));
        }
    }
    // diag_dual above is the within-cluster row sum: L_aa = sum_b W_ab - W_aa.

    // Residuals against the cluster matrix of the partition.
    SymMatrix x(n);
    for (int i = 0; i < n; ++i) {
        x.set(i, i, 1.0);
        for (int j = i + 1; j < n; ++j)
            if (member[i] == member[j] && member[i] != -2) x.set(i, j, 1.0);
    }
    double comp = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            comp = std::max(comp, std::abs(x(i, j) * cert.y(i, j)));
    comp = std::max(comp, std::abs(inner(x, cert.z)));
    cert.complementarity = comp;

    SymMatrix resid = w + cert.y + cert.z;
    for (int i = 0; i < n; ++i) resid.add(i, i, -cert.diag_dual[i]);
    cert.stationarity = resid.frob_norm();

    cert.min_entry_y = cert.y.min_entry();
    cert.min_eig_z = min_block_eig;
    cert.valid = cert.stationarity <= 1e-8 * (1.0 + w.frob_norm()) &&
                 cert.complementarity <= 1e-8 && cert.min_eig_z >= -1e-9 &&
                 cert.min_entry_y >= -1e-12;
    return cert;
}

PathCertificate find_path_certificate(const SignedGraph& g) {
    const int n = g.n();
    const SymMatrix& w = g.weights();
    PathCertificate cert;

    std::vector<std::pair<int, int>> neg_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (w(i, j) < 0.0) neg_edges.emplace_back(i, j);
    std::sort(neg_edges.begin(), neg_edges.end(), [&](const auto& a, const auto& b) {
        return -w(a.first, a.second) > -w(b.first, b.second);
    });

    std::vector<uint8_t> midpoint_used(n, 0);
    std::vector<uint8_t> edge_used(static_cast<size_t>(n) * n, 0);
    auto edge_tag = [n](int a, int b) { return static_cast<size_t>(a) * n + b; };

    for (const auto& [i, j] : neg_edges) {
        PathCover cover;
        cover.i = i;
        cover.j = j;
        cover.required = -w(i, j);

        std::vector<std::pair<double, int>> candidates;  // (half harmonic mean, midpoint)
        for (int v = 0; v < n; ++v) {
            if (v == i || v == j || midpoint_used[v]) continue;
            if (edge_used[edge_tag(i, v)] || edge_used[edge_tag(j, v)]) continue;
            const double a = w(i, v), b = w(j, v);
            if (a <= 0.0 || b <= 0.0) continue;
            candidates.emplace_back(a * b / (a + b), v);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });

        for (const auto& [hm, v] : candidates) {
            if (cover.provided >= cover.required) break;
            cover.provided += hm;
            cover.midpoints.push_back(v);
            midpoint_used[v] = 1;
            edge_used[edge_tag(i, v)] = edge_used[edge_tag(v, i)] = 1;
            edge_used[edge_tag(j, v)] = edge_used[edge_tag(v, j)] = 1;
        }
        if (cover.provided < cover.required) return cert;  // valid stays false
        cert.covers.push_back(std::move(cover));
    }
    cert.valid = true;
    return cert;
}

StrongSetCertificate check_strong_set(const SignedGraph& g) {
    std::vector<double> ones(g.n(), 1.0);
    return strong_set_core(g.weights(), ones, 2.0, nullptr);
}

StrongSetCertificate check_strong_set(const SignedGraph& g, const std::vector<int>& s_set) {
    std::vector<double> ones(g.n(), 1.0);
    return strong_set_core(g.weights(), ones, 2.0, &s_set);
}

RankOneDecomp rank_one_decompose(const RowMatrix& theta_rows, double c) {
    if (theta_rows.rows < 1) throw InvalidInput("rank_one_decompose: need at least one row");
    if (!(c > 0.0)) throw InvalidParameter("rank_one_decompose: c must be positive");
    const int m = theta_rows.rows;

    SymMatrix approx(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double ip = 0.0;
            for (int t = 0; t < theta_rows.cols; ++t) ip += theta_rows(i, t) * theta_rows(j, t);
            approx.set(i, j, c * (2.0 * ip - 1.0));
        }

    const EigenDecomp eig = eig_sym(approx);
    RankOneDecomp dec;
    dec.lambda1 = eig.eigenvalues.front();
    if (dec.lambda1 <= 0.0)
        throw DecompositionFailed("rank_one_decompose: top eigenvalue not positive");
    dec.lambda2 = m >= 2 ? eig.eigenvalues[1] : 0.0;
    dec.lambda_min = eig.eigenvalues.back();
    double max_other = 0.0;
    for (int t = 1; t < m; ++t) max_other = std::max(max_other, std::abs(eig.eigenvalues[t]));
    dec.eig_gap = dec.lambda1 - max_other;

    std::vector<double> v1 = eig.eigenvector(0);
    double sum = std::accumulate(v1.begin(), v1.end(), 0.0);
    if (sum < 0.0)
        for (double& x : v1) x = -x;
    dec.positive = std::all_of(v1.begin(), v1.end(), [](double x) { return x > 0.0; });

    dec.q.resize(m);
    const double scale = std::sqrt(dec.lambda1);
    for (int i = 0; i < m; ++i) dec.q[i] = scale * v1[i];

    dec.w_actual = logit_weights(theta_rows);
    dec.d.resize(m);
    for (int i = 0; i < m; ++i) dec.d[i] = dec.q[i] * dec.q[i];
    dec.n_mat = SymMatrix(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            dec.n_mat.set(i, j, dec.w_actual(i, j) - dec.q[i] * dec.q[j]);

    double err = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double reconstructed =
                dec.q[i] * dec.q[j] - (i == j ? dec.d[i] : 0.0) + dec.n_mat(i, j);
            err = std::max(err, std::abs(reconstructed - dec.w_actual(i, j)));
        }
    dec.reconstruction_error = err;
    return dec;
}

FixedPointResult fixed_point(const SymMatrix& w, const std::vector<double>& q) {
    const int n = w.n();
    if (q.size() != static_cast<size_t>(n)) throw InvalidInput("fixed_point: q has wrong length");
    for (double v : q)
        if (!(v > 0.0)) throw InvalidParameter("fixed_point: q must be entrywise positive");

    const std::vector<double> q13 = pow_each(q, 1.0 / 3.0);
    double beta = 0.0;
    for (int i = 0; i < n; ++i) beta += q[i] * q13[i];
    beta = std::pow(beta, 1.5);
    const double beta13 = std::cbrt(beta);

    std::vector<double> lo(n), hi(n), x(n);
    for (int i = 0; i < n; ++i) {
        const double base = beta13 * q13[i];
        x[i] = base;
        lo[i] = 0.5 * base;
        hi[i] = 1.5 * base;
    }

    FixedPointResult res;
    std::vector<double> next(n);
    for (int iter = 1; iter <= 10000; ++iter) {
        res.iterations = iter;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += w(i, j) * x[j];
            next[i] = std::cbrt(s);
        }
        double step = 0.0, norm = 0.0;
        bool positive = true;
        for (int i = 0; i < n; ++i) {
            step += (next[i] - x[i]) * (next[i] - x[i]);
            norm += x[i] * x[i];
            if (!(next[i] > 0.0)) positive = false;
        }
        x = next;
        if (!positive) {
            res.left_positive_orthant = true;
            break;
        }
        if (std::sqrt(step) <= 1e-12 * std::sqrt(norm)) {
            res.converged = true;
            break;
        }
    }

    res.r = x;
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += w(i, j) * x[j];
        const double diff = s - x[i] * x[i] * x[i];
        resid += diff * diff;
    }
    res.residual = std::sqrt(resid);
    res.contained = true;
    for (int i = 0; i < n; ++i)
        if (x[i] < lo[i] * (1.0 - 1e-12) || x[i] > hi[i] * (1.0 + 1e-12)) {
            res.contained = false;
            break;
        }
    return res;
}

NdConditionReport evaluate_nd_conditions(const SymMatrix& w, const std::vector<double>& q,
                                         const SymMatrix& n_mat, const std::vector<double>& d) {
    const int n = w.n();
    if (q.size() != static_cast<size_t>(n) || n_mat.n() != n ||
        d.size() != static_cast<size_t>(n))
        throw InvalidInput("evaluate_nd_conditions: dimension mismatch");

    NdConditionReport rep;
    rep.q_positive = std::all_of(q.begin(), q.end(), [](double v) { return v > 0.0; });
    if (!rep.q_positive) return rep;  // the conditions presume a positive q

    const std::vector<double> q13 = pow_each(q, 1.0 / 3.0);
    const std::vector<double> q23 = pow_each(q, 2.0 / 3.0);
    const std::vector<double> q43 = pow_each(q, 4.0 / 3.0);
    const double q23_norm_sq = std::inner_product(q23.begin(), q23.end(), q23.begin(), 0.0);
    const double q13_norm = vec_norm(q13);

    rep.c1_ok = *std::max_element(q43.begin(), q43.end()) <= q23_norm_sq / 45.0;

    rep.c2_witness = strong_set_core(w, q13, 6.0, nullptr);
    rep.c2_ok = rep.c2_witness.valid;

    rep.c3_ratios.resize(n);
    double sum_ratio = 0.0;
    bool all_within = true;
    for (int i = 0; i < n; ++i) {
        double row_norm_sq = 0.0;
        for (int j = 0; j < n; ++j) row_norm_sq += n_mat(i, j) * n_mat(i, j);
        const double ratio = 45.0 * std::sqrt(row_norm_sq) * q13_norm / (q[i] * q23_norm_sq);
        rep.c3_ratios[i] = ratio;
        sum_ratio += ratio;
        if (ratio > 1.0) all_within = false;
    }
    rep.c3_ok = all_within;
    rep.c3_ratio_mean = sum_ratio / n;

    rep.c4_ok = true;
    for (int i = 0; i < n; ++i)
        if (std::abs(d[i] - q[i] * q[i]) > 1e-12 * (1.0 + q[i] * q[i])) rep.c4_ok = false;
    return rep;
}

NdAssumptionReport check_nd_assumption(const RowMatrix& theta_rows, double c) {
    NdAssumptionReport rep;
    rep.c = c;
    rep.decomp = rank_one_decompose(theta_rows, c);
    rep.conditions =
        evaluate_nd_conditions(rep.decomp.w_actual, rep.decomp.q, rep.decomp.n_mat, rep.decomp.d);
    if (rep.conditions.q_positive) rep.fp = fixed_point(rep.decomp.w_actual, rep.decomp.q);
    return rep;
}

NdRecCertificate verify_nd_rec(const SignedGraph& g,
                               const std::vector<ClusterFixedPoint>& clusters) {
    const int n = g.n();
    const SymMatrix& w = g.weights();
    if (clusters.empty()) throw InvalidInput("verify_nd_rec: no clusters");

    std::vector<std::vector<int>> node_sets;
    node_sets.reserve(clusters.size());
    double lambda_sq = 0.0;
    for (const auto& c : clusters) {
        if (c.nodes.empty() || c.nodes.size() != c.r.size())
            throw InvalidInput("verify_nd_rec: cluster without a matching fixed point");
        node_sets.push_back(c.nodes);
        for (double ri : c.r) lambda_sq += ri * ri * ri * ri;
    }
    const std::vector<int> member = membership(n, node_sets);

    NdRecCertificate cert;
    cert.lambda = std::sqrt(lambda_sq);
    if (!(cert.lambda > 0.0)) throw InvalidInput("verify_nd_rec: zero fixed points");

    cert.x = SymMatrix(n);
    cert.y = SymMatrix(n);
    cert.z = SymMatrix(n);
    for (const auto& c : clusters)
        for (size_t a = 0; a < c.nodes.size(); ++a)
            for (size_t b = a; b < c.nodes.size(); ++b) {
                const int u = c.nodes[a], v = c.nodes[b];
                cert.x.set(u, v, c.r[a] * c.r[b] / cert.lambda);
                cert.z.set(u, v, (a == b ? c.r[a] * c.r[a] : 0.0) - w(u, v));
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (member[i] == -1 || member[j] == -1 || member[i] != member[j])
                cert.y.set(i, j, -w(i, j));

    const auto diag = cert.x.diagonal();
    cert.diag_norm_error = std::abs(vec_norm(diag) - 1.0);
    cert.min_entry_x = cert.x.min_entry();
    cert.min_entry_y = cert.y.min_entry();

    double min_eig = 0.0;
    bool scaled_ok = true;
    for (const auto& c : clusters) {
        SymMatrix block = cert.z.submatrix(c.nodes);
        min_eig = std::min(min_eig, min_eigenvalue(block));
        // The congruent Laplacian route: Diag(r) Z_j Diag(r) is the Laplacian
        // of the rescaled block weights, so the strong-set witness on them
        // certifies the same sign of the spectrum.
        const int m = static_cast<int>(c.nodes.size());
        SymMatrix scaled(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                scaled.set(a, b, c.r[a] * c.r[b] * w(c.nodes[a], c.nodes[b]));
        if (!check_strong_set(SignedGraph(scaled)).valid) scaled_ok = false;
    }
    cert.min_eig_z = min_eig;
    cert.scaled_laplacian_certified = scaled_ok;

    SymMatrix resid = w + cert.y + cert.z;
    for (int i = 0; i < n; ++i) resid.add(i, i, -cert.lambda * cert.x(i, i));
    cert.stationarity = resid.frob_norm();

    double comp = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            comp = std::max(comp, std::abs(cert.x(i, j) * cert.y(i, j)));
    comp = std::max(comp, std::abs(inner(cert.x, cert.z)));
    cert.complementarity = comp;

    bool support_ok = true;
    for (int i = 0; i < n && support_ok; ++i)
        for (int j = 0; j < n; ++j) {
            const bool same = member[i] != -1 && member[i] == member[j];
            const bool positive = cert.x(i, j) > 0.0;
            if (same != positive) {
                support_ok = false;
                break;
            }
        }
    cert.support_matches = support_ok;

    cert.valid = cert.diag_norm_error <= 1e-9 && cert.min_entry_x >= -1e-12 &&
                 cert.min_entry_y >= -1e-12 && cert.min_eig_z >= -1e-8 &&
                 cert.stationarity <= 1e-7 && cert.complementarity <= 1e-7 &&
                 cert.support_matches;
    return cert;
}

DiagRobustnessReport check_diag_robustness(const SymMatrix& w, const SymMatrix& delta,
                                           const SolverOptions& opts) {
    if (w.n() != delta.n()) throw InvalidInput("check_diag_robustness: dimension mismatch");
    SymMatrix perturbed = w + delta;
    auto has_positive = [](const SymMatrix& m) {
        for (int i = 0; i < m.n(); ++i)
            for (int j = i + 1; j < m.n(); ++j)
                if (m(i, j) > 0.0) return true;
        return false;
    };
    if (!has_positive(w) || !has_positive(perturbed))
        throw InvalidInput("check_diag_robustness: both matrices need a positive entry");

    const SdpSolution base = solve({w, DiagConstraint::NormDiag}, opts);
    const SdpSolution moved = solve({perturbed, DiagConstraint::NormDiag}, opts);

    DiagRobustnessReport rep;
    const auto d1 = base.x.diagonal();
    const auto d2 = moved.x.diagonal();
    double lhs = 0.0;
    for (size_t i = 0; i < d1.size(); ++i) lhs += (d1[i] - d2[i]) * (d1[i] - d2[i]);
    rep.lhs = std::sqrt(lhs);
    rep.objective = base.objective;

    const double n_real = static_cast<double>(w.n());
    const double delta_term = std::sqrt(delta.frob_norm());
    const double denom = std::sqrt(std::max(rep.objective, 1e-300));
    rep.rhs_stated = 2.0 * std::pow(2.0 * n_real, 0.25) * delta_term / denom;
    rep.rhs_proof = 2.0 * std::sqrt(2.0) * std::pow(n_real, 0.25) * delta_term / denom;
    rep.holds = rep.lhs <= rep.rhs_proof + 10.0 * opts.tol;
    return rep;
}

namespace {

nlohmann::json sym_to_json(const SymMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

std::string int_opt_to_json(const IntOptCertificate& cert) {
    nlohmann::json j;
    j["kind"] = "int-opt";
    j["valid"] = cert.valid;
    j["stationarity"] = cert.stationarity;
    j["complementarity"] = cert.complementarity;
    j["min_entry_Y"] = cert.min_entry_y;
    j["min_eig_Z"] = cert.min_eig_z;
    j["Y"] = sym_to_json(cert.y);
    j["Z"] = sym_to_json(cert.z);
    j["y"] = cert.diag_dual;
    return j.dump(2) + "\n";
}

std::string path_certificate_to_json(const PathCertificate& cert) {
    nlohmann::json j;
    j["kind"] = "paths";
    j["valid"] = cert.valid;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& c : cert.covers) {
        edges.push_back({{"edge", {c.i, c.j}},
                         {"midpoints", c.midpoints},
                         {"required", c.required},
                         {"provided", c.provided}});
    }
    j["covers"] = std::move(edges);
    return j.dump(2) + "\n";
}

std::string strong_set_to_json(const StrongSetCertificate& cert) {
    nlohmann::json j;
    j["kind"] = "strong-set";
    j["valid"] = cert.valid;
    j["U"] = cert.u_set;
    j["S"] = cert.s_set;
    j["margin"] = finite_or_null(cert.margin);
    return j.dump(2) + "\n";
}

std::string nd_assumption_to_json(const NdAssumptionReport& rep) {
    nlohmann::json j;
    j["kind"] = "nd-assumption";
    j["c"] = rep.c;
    j["lambda1"] = rep.decomp.lambda1;
    j["lambda2"] = rep.decomp.lambda2;
    j["lambda_min"] = rep.decomp.lambda_min;
    j["eig_gap"] = rep.decomp.eig_gap;
    j["eigenvector_positive"] = rep.decomp.positive;
    j["q"] = rep.decomp.q;
    j["reconstruction_error"] = rep.decomp.reconstruction_error;
    j["c1_ok"] = rep.conditions.c1_ok;
    j["c2_ok"] = rep.conditions.c2_ok;
    j["c3_ok"] = rep.conditions.c3_ok;
    j["c4_ok"] = rep.conditions.c4_ok;
    j["c3_ratios"] = rep.conditions.c3_ratios;
    j["c3_ratio_mean"] = rep.conditions.c3_ratio_mean;
    j["c2_margin"] = finite_or_null(rep.conditions.c2_witness.margin);
    j["c2_S"] = rep.conditions.c2_witness.s_set;
    j["fixed_point"] = {{"r", rep.fp.r},
                        {"contained", rep.fp.contained},
                        {"residual", rep.fp.residual},
                        {"converged", rep.fp.converged},
                        {"left_positive_orthant", rep.fp.left_positive_orthant},
                        {"iterations", rep.fp.iterations}};
    return j.dump(2) + "\n";
}

}  // namespace corrclust
