#pragma once

#include <complex>
#include <span>
#include <vector>

#include "normfiber/rng.hpp"

namespace normfiber {

/// Draws a test vector from a mixture of uniform[-1,1], sparse (many zeros)
/// and sign-pattern-extreme ({-1,0,1}) vectors. Max-type norms need ties
/// broken, which plain uniform sampling almost never does.
inline std::vector<double> sample_mixture(Rng& rng, int dim) {
    std::vector<double> x(dim);
    const int mode = rng.below(4);
    for (int i = 0; i < dim; ++i) {
        switch (mode) {
            case 0:
                x[i] = rng.uniform(-1.0, 1.0);
                break;
            case 1:  // sparse
                x[i] = (rng.below(3) == 0) ? rng.uniform(-1.0, 1.0) : 0.0;
                break;
            case 2:  // extreme sign patterns
                x[i] = static_cast<double>(rng.below(3) - 1);
                break;
            default:  // gaussian, occasionally large
                x[i] = rng.gaussian();
                break;
        }
    }
    return x;
}

/// Mixture vector supported on the given 1-based coordinate subset.
inline std::vector<double> sample_supported(Rng& rng, int dim, std::span<const int> support) {
    std::vector<double> x(dim, 0.0);
    const int mode = rng.below(4);
    for (int idx : support) {
        double v = 0.0;
        switch (mode) {
            case 0: v = rng.uniform(-1.0, 1.0); break;
            case 1: v = (rng.below(3) == 0) ? rng.uniform(-1.0, 1.0) : 0.0; break;
            case 2: v = static_cast<double>(rng.below(3) - 1); break;
            default: v = rng.gaussian(); break;
        }
        x[idx - 1] = v;
    }
    return x;
}

inline std::vector<std::complex<double>> sample_complex(Rng& rng, int dim) {
    std::vector<std::complex<double>> z(dim);
    for (int i = 0; i < dim; ++i) z[i] = {rng.gaussian(), rng.gaussian()};
    return z;
}

}  // namespace normfiber
