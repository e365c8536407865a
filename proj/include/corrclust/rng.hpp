#pragma once

#include <cstdint>
#include <vector>

namespace corrclust {

// xoshiro256++ seeded through splitmix64. Pinned here (rather than an
// <random> engine plus library distributions) so that every sampled table
// is bit-reproducible from its seed across standard library versions.
class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();

    // Uniform on [0, 1), 53-bit mantissa.
    double uniform();

    // Uniform on (0, 1); never returns 0 so logs are safe.
    double uniform_pos();

    // Standard normal via Box-Muller (no cached spare; stateless apart
    // from the stream position).
    double normal();

    // Gamma(alpha, 1) by Marsaglia-Tsang squeeze, with the usual
    // U^(1/alpha) boost for alpha < 1. Requires alpha > 0.
    double gamma(double alpha);

    // One Dirichlet(alpha) draw: k independent gammas normalized to sum 1.
    // Writes k entries into out.
    void dirichlet(const std::vector<double>& alpha, double* out);

private:
    uint64_t s_[4];
};

}  // namespace corrclust
