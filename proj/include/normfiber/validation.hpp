#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "normfiber/norm.hpp"

namespace normfiber {

struct AxiomResult {
    std::string axiom;  // normalization | absoluteness | homogeneity | triangle | monotonicity
    bool passed = true;
    double worst = 0.0;            // largest violation observed
    std::vector<double> witness;   // offending vector (pairwise axioms: x ++ y concatenated)
    std::string detail;
};

struct ValidationReport {
    bool all_passed = true;
    std::vector<AxiomResult> axioms;
    std::uint64_t seed = 0;
    int samples = 0;
    double tol = 0.0;
    std::string note;  // construction notes surfaced (e.g. the E_2(2) normalization note)
};

/// Checks the five absolute-norm axioms on seeded samples. Failures are
/// report entries with witnesses, never exceptions.
ValidationReport validate(const Norm& n, int sample_count, double tol, std::uint64_t seed);

struct SymmetryReport {
    bool symmetric = true;
    std::vector<int> witness_perm;   // 1-based image list; empty when symmetric
    std::vector<double> witness_vec;
    double worst = 0.0;
};

/// True iff the norm is invariant under all coordinate permutations and sign
/// changes on sampled vectors. Permutations are enumerated exhaustively, so
/// dim must stay within perm_bound.
SymmetryReport symmetric_check(const Norm& n, int sample_count, double tol, std::uint64_t seed,
                               int perm_bound = 8);

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const SymmetryReport& r);

}  // namespace normfiber
