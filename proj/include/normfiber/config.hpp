#pragma once

#include <cstddef>
#include <cstdint>

namespace normfiber {

/// Shared run configuration. One instance per logical job; operations that
/// need randomness derive sub-streams from `seed` (see Rng::fork) so results
/// are reproducible and independent of evaluation order.
struct Config {
    double tol = 1e-7;         // generic relative tolerance (fiber trials etc.)
    double exact_tol = 1e-9;   // identities that are exact in the expression tree
    double detect_tol = 1e-6;  // detection / fit procedures (Bohnenblust, E_p fit)

    int samples = 1000;  // sampled-identity checks
    int trials = 200;    // refutation trials per subset / pair
    std::uint64_t seed = 0;

    std::size_t cap = 1'000'000;           // closure: max elements
    std::size_t product_cap = 100'000'000; // closure: max products formed

    bool complex_mode = false;

    int exhaustive_bound = 16;    // subset enumeration limit (maximal_fibers)
    int perm_bound = 8;           // exhaustive permutation limit
    int random_orthogonal = 200;  // probes in verify_classification
};

}  // namespace normfiber
