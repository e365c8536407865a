#pragma once

#include <vector>

#include "corrclust/matrix.hpp"

namespace corrclust {

// Signed weighted graph: symmetric weight matrix with an exactly zero
// diagonal and finite entries.
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(SymMatrix w);

    int n() const { return w_.n(); }
    const SymMatrix& weights() const { return w_; }
    double weight(int i, int j) const { return w_(i, j); }

    SignedGraph induced(const std::vector<int>& nodes) const;

private:
    SymMatrix w_;
};

// L(G) = Diag(We) - W.
SymMatrix laplacian(const SignedGraph& g);

}  // namespace corrclust
