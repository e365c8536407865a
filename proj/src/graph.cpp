#include "corrclust/graph.hpp"

#include <cmath>

#include "corrclust/errors.hpp"

namespace corrclust {

SignedGraph::SignedGraph(SymMatrix w) : w_(std::move(w)) {
    if (!w_.all_finite()) throw InvalidInput("SignedGraph: non-finite weight");
    for (int i = 0; i < w_.n(); ++i) {
        if (std::abs(w_(i, i)) > 1e-12)
            throw InvalidInput("SignedGraph: diagonal must be zero");
        w_.set(i, i, 0.0);
    }
}

SignedGraph SignedGraph::induced(const std::vector<int>& nodes) const {
    return SignedGraph(w_.submatrix(nodes));
}

SymMatrix laplacian(const SignedGraph& g) {
    const int n = g.n();
    const SymMatrix& w = g.weights();
    SymMatrix l(n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) rowsum += w(i, j);
        l.set(i, i, rowsum);
        for (int j = i + 1; j < n; ++j) l.set(i, j, -w(i, j));
    }
    return l;
}

}  // namespace corrclust
