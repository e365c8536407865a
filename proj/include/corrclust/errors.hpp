#pragma once

#include <stdexcept>
#include <string>

namespace corrclust {

// Malformed data reaching a library entry point (non-finite entries,
// asymmetric input beyond tolerance, partitions that do not cover V, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameter outside its documented range (alpha <= 0, cutoff outside
// (0.5, 1], ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rank-one refit failed (top eigenvalue not positive).
struct DecompositionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection sampling could not land a cluster size in the requested bin
// within the retry budget.
struct BinExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace corrclust
