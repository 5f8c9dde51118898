#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "normfiber/config.hpp"
#include "normfiber/extended_p.hpp"
#include "normfiber/fibers.hpp"
#include "normfiber/norm.hpp"

namespace normfiber {

/// Bohnenblust detection on the coordinate pair (i, j), 1-based: the
/// two-variable function f(a,b) = N(a e_i + b e_j) is an l_p norm iff it is
/// associative; p is then read off f(1,1) and cross-checked on the grid.
/// Returns nothing when associativity or the fit fails.
std::optional<ExtendedP> detect_p_pair(const Norm& n, int i, int j, std::span<const double> grid,
                                       double tol);
std::optional<ExtendedP> detect_p_pair(const Norm& n, int i, int j, const Config& cfg = {});

struct Ep2Detection {
    std::optional<ExtendedP> p;
    std::string note;
};

/// Tests whether a 2-dimensional norm is E_p(2) for some p; the candidate p
/// solves 2^(1-1/p) = N(1,1) and is verified on a grid. N(1,1) = 2 matches
/// the E_inf = l_1 form. A p = 2 candidate returns nothing with a note
/// (E_2(2) = l_2^2 is classified as l_p instead).
Ep2Detection is_ep2(const Norm& two_dim, double tol);

enum class DecompCase { CaseI, CaseII };
enum class FactorKind { MaximalFiber, MergedLp, Ep2Factor, Indecomposable };

struct DecompFactor {
    IndexSet indices;
    FactorKind kind = FactorKind::MaximalFiber;
    NormExprPtr expr;     // non-null when the factor norm is expressible
    NormPtr restriction;  // always evaluable (zero-padded through the base norm)
};

/// Output of the intrinsic decomposition: case (i) cross product over the
/// maximal fibers, or case (ii) maximal l_p split with E_p(2) /
/// indecomposable parts.
struct DecompositionTree {
    DecompCase decomp_case = DecompCase::CaseI;
    std::optional<ExtendedP> p;  // case (ii) only
    std::vector<DecompFactor> factors;
    NormPtr outer;           // m-dimensional outer norm, always evaluable
    NormExprPtr outer_expr;  // non-null when expressible as a tree
    std::vector<int> representatives;  // case (i): chosen s_i per factor
    bool suspect = false;
    std::string notes;
};

/// The tree retains restriction views of `n`, hence the shared pointer.
DecompositionTree decompose(NormPtr n, const Config& cfg);

/// Rewrites a tree to reduced cross product form: absorbs l_p factors into a
/// matching l_p outer, rewrites E_2(2) -> l_2^2, collapses unary crosses.
/// The result evaluates identically.
NormExprPtr regroup(const NormExprPtr& n);

/// Max over samples of |N(x) - N_outer(N_S1(x|S1),...,N_Sm(x|Sm))|, relative
/// to max(1, N(x)).
double reconstruct_check(const Norm& n, const DecompositionTree& tree, int samples,
                         std::uint64_t seed);

nlohmann::json to_json(const DecompositionTree& tree);

}  // namespace normfiber
