#include "corrclust/rng.hpp"

#include <cmath>

#include "corrclust/errors.hpp"

namespace corrclust {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

uint64_t Rng::next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    return u;
}

double Rng::normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double Rng::gamma(double alpha) {
    if (!(alpha > 0.0)) throw InvalidParameter("gamma: alpha must be positive");
    if (alpha < 1.0) {
        const double g = gamma(alpha + 1.0);
        return g * std::pow(uniform_pos(), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

void Rng::dirichlet(const std::vector<double>& alpha, double* out) {
    const size_t k = alpha.size();
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) {
        out[i] = gamma(alpha[i]);
        sum += out[i];
    }
    if (sum <= 0.0) {
        // All gammas underflowed to zero (can happen for very small alpha);
        // fall back to a vertex chosen by one more draw.
        const size_t j = static_cast<size_t>(next_u64() % k);
        for (size_t i = 0; i < k; ++i) out[i] = (i == j) ? 1.0 : 0.0;
        return;
    }
    for (size_t i = 0; i < k; ++i) out[i] /= sum;
}

}  // namespace corrclust
