#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "normfiber/config.hpp"
#include "normfiber/extended_p.hpp"
#include "normfiber/norm.hpp"

namespace normfiber {

/// Sorted 1-based coordinate subset of {1,...,k}.
using IndexSet = std::vector<int>;

IndexSet complement_of(const IndexSet& s, int dim);

enum class FiberStatus { Fiber, NotFiber, Unknown };
enum class FiberMethod { Structural, Numeric, Both };

/// Refutation of the fiber property: N(a) == N(a') but N(a+b) != N(a'+b).
struct FiberWitness {
    std::vector<double> a, a_prime, b;  // full-dimension vectors
    double gap = 0.0;
};

struct FiberVerdict {
    IndexSet set;
    FiberStatus status = FiberStatus::Unknown;
    FiberMethod method = FiberMethod::Numeric;
    std::optional<FiberWitness> witness;
    int trials_used = 0;
    /// Structural fibers are proven; numeric Fiber verdicts are
    /// evidence-only (the definition quantifies over all coefficients).
    bool proven = false;
};

/// Samples equal-norm pairs supported on S plus perturbations off S; a
/// violation refutes fiber-hood with a checkable witness.
FiberVerdict is_fiber_numeric(const Norm& n, const IndexSet& s, int trials, double tol,
                              std::uint64_t seed);

/// Tree rules, sound in the positive direction only:
///   R1 singletons; R2 subset of one factor that is a fiber there;
///   R3 exact union of full factors whose outer index set is a fiber of the
///   outer norm; R4 any proper nonempty subset of an Lp node.
/// Everything else is Unknown (resolved by the numeric test).
FiberVerdict is_fiber_structural(const NormExpr& n, const IndexSet& s);

/// Combined oracle: structural when the norm is an expression tree and the
/// rules decide; otherwise numeric.
FiberVerdict is_fiber(const Norm& n, const IndexSet& s, const Config& cfg);

/// All inclusion-maximal fibers, lexicographically ordered. Exhaustive over
/// subsets; dims above cfg.exhaustive_bound are rejected.
std::vector<IndexSet> maximal_fibers(const Norm& n, const Config& cfg);

/// Partition of {1,...,k} into ~-classes: s~t iff the norm depends on
/// coordinates s,t only through their Euclidean length. Classes are the
/// maximal l_2-fibers.
std::vector<IndexSet> l2_fiber_classes(const Norm& n, int trials, double tol, std::uint64_t seed);

/// Intersecting maximal fibers force a three-block l_p split.
struct Prop22Result {
    std::optional<ExtendedP> p;
    bool verified = false;
    double residual = 0.0;
    int s0 = 0, i0 = 0, t0 = 0;  // chosen representatives (1-based)
};

Prop22Result prop22_check(const Norm& n, const IndexSet& s, const IndexSet& t, const Config& cfg);

nlohmann::json to_json(const FiberVerdict& v);

}  // namespace normfiber
