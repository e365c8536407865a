#include "corrclust/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "corrclust/errors.hpp"

namespace corrclust {

SymMatrix project_feasible_affine(const SymMatrix& m, DiagConstraint variant) {
    const int n = m.n();
    SymMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.set(i, j, std::max(0.0, m(i, j)));
    if (variant == DiagConstraint::UnitDiag) {
        for (int i = 0; i < n; ++i) r.set(i, i, 1.0);
        return r;
    }
    double norm_sq = 0.0;
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        d[i] = std::max(0.0, m(i, i));
        norm_sq += d[i] * d[i];
    }
    const double scale = 1.0 / std::max(1.0, std::sqrt(norm_sq));
    for (int i = 0; i < n; ++i) r.set(i, i, d[i] * scale);
    return r;
}

SdpSolution solve(const SdpProblem& prob, const SolverOptions& opts) {
    const int n = prob.w.n();
    if (n < 1) throw InvalidInput("solve: empty problem");
    if (!prob.w.all_finite()) throw InvalidInput("solve: non-finite objective matrix");
    if (!(opts.tol > 0.0)) throw InvalidParameter("solve: tolerance must be positive");
    for (int i = 0; i < n; ++i)
        if (std::abs(prob.w(i, i)) > 1e-12) {
            std::fprintf(stderr, "warning: objective matrix has a nonzero diagonal\n");
            break;
        }

    double rho = opts.rho;
    SymMatrix x(n), z(n), u(n);
    SymMatrix z_prev(n), v(n);
    JacobiWorkspace ws;

    double pri = 0.0, dua = 0.0;
    bool converged = false;
    int iter = 0;
    for (iter = 1; iter <= opts.max_iters; ++iter) {
        // X-block: PSD projection of Z - U.
        v = z;
        v -= u;
        ws.decompose(v);
        x = ws.assemble_positive_part();

        // Z-block: affine projection absorbs the linear objective.
        z_prev = z;
        v = x;
        v += u;
        {
            const double inv_rho = 1.0 / rho;
            auto& vr = v.raw();
            const auto& wr = prob.w.raw();
            for (size_t idx = 0; idx < vr.size(); ++idx) vr[idx] += wr[idx] * inv_rho;
        }
        z = project_feasible_affine(v, prob.variant);

        u += x;
        u -= z;

        const double nx = x.frob_norm();
        const double nz = z.frob_norm();
        pri = (x - z).frob_norm() / std::max({1.0, nx, nz});
        dua = rho * (z - z_prev).frob_norm() / std::max(1.0, rho * u.frob_norm());
        if (std::max(pri, dua) <= opts.tol) {
            converged = true;
            break;
        }
        if (opts.adapt_interval > 0 && iter % opts.adapt_interval == 0) {
            if (pri > 10.0 * dua && rho < 1e6) {
                rho *= 2.0;
                for (double& e : u.raw()) e *= 0.5;
            } else if (dua > 10.0 * pri && rho > 1e-6) {
                rho *= 0.5;
                for (double& e : u.raw()) e *= 2.0;
            }
        }
    }

    SdpSolution sol;
    // The affine iterate is returned: its sign pattern and diagonal are
    // exact, and it sits within the consensus gap of the PSD iterate.
    sol.x = z;
    sol.objective = inner(prob.w, sol.x);
    sol.primal_residual = pri;
    sol.dual_residual = dua;
    sol.iterations = std::min(iter, opts.max_iters);
    sol.converged = converged;

    ws.decompose(sol.x);
    sol.cone_violation = std::max(0.0, -ws.min_eigenvalue());

    // Dual recovery from the scaled multiplier Lambda = rho*U: the PSD-block
    // multiplier plays Z, the affine block splits into Y (off-diagonal signs)
    // and the diagonal dual.
    SymMatrix lambda_mat = u.scaled(rho);
    SdpDuals duals;
    duals.z = lambda_mat;
    duals.y = SymMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            duals.y.set(i, j, -(prob.w(i, j) + lambda_mat(i, j)));
    if (prob.variant == DiagConstraint::UnitDiag) {
        duals.diag_dual.resize(n);
        for (int i = 0; i < n; ++i) duals.diag_dual[i] = prob.w(i, i) + lambda_mat(i, i);
    } else {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            const double di = sol.x(i, i);
            num += (prob.w(i, i) + lambda_mat(i, i)) * di;
            den += di * di;
        }
        duals.lambda = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    }
    sol.duals = std::move(duals);
    return sol;
}

KktReport kkt_report(const SdpProblem& prob, const SymMatrix& x, const SdpDuals& duals) {
    const int n = prob.w.n();
    if (x.n() != n || duals.y.n() != n || duals.z.n() != n)
        throw InvalidInput("kkt_report: dimension mismatch");
    KktReport rep;

    double comp = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) comp = std::max(comp, std::abs(x(i, j) * duals.y(i, j)));
    comp = std::max(comp, std::abs(inner(x, duals.z)));

    rep.min_entry_y = duals.y.min_entry();
    rep.min_eig_z = min_eigenvalue(duals.z);

    SymMatrix resid = prob.w + duals.y + duals.z;
    if (prob.variant == DiagConstraint::UnitDiag) {
        if (duals.diag_dual.size() != static_cast<size_t>(n))
            throw InvalidInput("kkt_report: diag dual has wrong length");
        for (int i = 0; i < n; ++i) resid.add(i, i, -duals.diag_dual[i]);
    } else {
        double diag_norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            resid.add(i, i, -duals.lambda * x(i, i));
            diag_norm_sq += x(i, i) * x(i, i);
        }
        comp = std::max(comp, std::abs(duals.lambda * (std::sqrt(diag_norm_sq) - 1.0)));
        rep.lambda = duals.lambda;
    }
    rep.max_complementarity = comp;
    rep.stationarity = resid.frob_norm();
    return rep;
}

std::string solution_to_json(const SdpSolution& sol) {
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < sol.x.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < sol.x.n(); ++c) row.push_back(sol.x(i, c));
        rows.push_back(std::move(row));
    }
    j["X"] = std::move(rows);
    j["objective"] = sol.objective;
    j["residuals"] = {{"primal", sol.primal_residual},
                      {"dual", sol.dual_residual},
                      {"cone", sol.cone_violation}};
    j["iterations"] = sol.iterations;
    j["converged"] = sol.converged;
    return j.dump(2) + "\n";
}

}  // namespace corrclust
