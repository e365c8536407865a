#pragma once

#include <string>

#include "corrclust/matrix.hpp"

namespace corrclust {

// Which diagonal constraint the relaxation uses: all entries fixed to one,
// or the l2 norm of the diagonal bounded by one.
enum class DiagConstraint { UnitDiag, NormDiag };

struct SdpProblem {
    SymMatrix w;
    DiagConstraint variant = DiagConstraint::UnitDiag;
};

struct SolverOptions {
    double tol = 1e-7;       // max of relative primal/dual residual
    int max_iters = 50000;
    double rho = 1.0;        // initial penalty
    int adapt_interval = 50; // residual-balancing cadence
};

// Dual estimates recovered from the splitting multipliers. Diagnostics, not
// certified duals: small infeasibilities of the order of the stopping
// tolerance are expected.
struct SdpDuals {
    SymMatrix y;             // multiplier for X >= 0 (zero diagonal)
    SymMatrix z;             // multiplier for X >= 0 (PSD sense)
    std::vector<double> diag_dual;  // UnitDiag: y vector with W+Y+Z = Diag(y)
    double lambda = 0.0;            // NormDiag: W+Y+Z = lambda*Diag(X)
};

struct SdpSolution {
    SymMatrix x;
    double objective = 0.0;  // <W, X>
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double cone_violation = 0.0;  // max(0, -lambda_min(X))
    int iterations = 0;
    bool converged = false;
    SdpDuals duals;
};

// Maximizes <W, X> over the doubly non-negative cone with the variant's
// diagonal constraint, by alternating the PSD projection and the affine
// projection with a scaled dual (consensus ADMM). Deterministic for fixed
// options. Hitting max_iters is not an error: the best iterate is returned
// with converged = false.
SdpSolution solve(const SdpProblem& prob, const SolverOptions& opts = {});

// Projection onto the non-PSD block of the feasible set.
//  UnitDiag: off-diagonal entries clamped to >= 0, diagonal set to 1.
//  NormDiag: off-diagonal clamped to >= 0, diagonal projected onto
//            { d >= 0, ||d|| <= 1 } (clamp, then rescale by 1/max(1,||d+||)).
SymMatrix project_feasible_affine(const SymMatrix& m, DiagConstraint variant);

struct KktReport {
    double max_complementarity = 0.0;  // max of |X.*Y| entries, |<X,Z>|, and
                                       // |lambda*(||diag X||-1)| for NormDiag
    double min_entry_y = 0.0;          // dual feasibility: want >= 0
    double min_eig_z = 0.0;            // dual feasibility: want >= 0
    double lambda = 0.0;               // NormDiag only: want >= 0
    double stationarity = 0.0;         // ||W + Y + Z - RHS||_F
};

KktReport kkt_report(const SdpProblem& prob, const SymMatrix& x, const SdpDuals& duals);

std::string solution_to_json(const SdpSolution& sol);

}  // namespace corrclust
