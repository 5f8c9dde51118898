#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "normfiber/config.hpp"
#include "normfiber/exact_matrix.hpp"
#include "normfiber/extended_p.hpp"

namespace normfiber {

/// A finitely generated matrix group over Q(sqrt 2). `elements` is the full
/// closure (canonically sorted) when `closed`, otherwise the enumeration hit
/// the cap and only `generators` are meaningful.
struct GeneratedGroup {
    std::vector<ExactMatrix> generators;
    std::vector<ExactMatrix> elements;  // sorted; deterministic across runs
    bool closed = false;
    std::size_t cap = 0;

    std::size_t order() const { return elements.size(); }
    bool contains(const ExactMatrix& m) const;
};

/// Generators of GP(m), the m x m signed permutation matrices: first
/// coordinate sign flip, adjacent transposition, m-cycle. |GP(m)| = 2^m m!.
std::vector<ExactMatrix> gp_generators(int m);

enum class BlockGroup { P, GP };

/// Generators of the wreath product G * P(n) (or G * GP(n)) acting on m*n
/// coordinates grouped in n consecutive blocks of size m: each generator of
/// G embedded in the first block, plus block-permutation (and block-sign)
/// generators.
std::vector<ExactMatrix> wreath_product(std::span<const ExactMatrix> gens, int n, BlockGroup bg);

/// Rotation + reflection generators of the dihedral group D_h (order 2h) as
/// 2 x 2 matrices. Exact backend: h in {1, 2, 4, 8} (those are the h with
/// cos(2pi/h), sin(2pi/h) in Q(sqrt 2)); other h throw and are served by the
/// float backend.
std::vector<ExactMatrix> dihedral(int h);

/// The paper's exceptional constructions:
///   A      = I_4 - (1,1,1,1)^t (1,1,1,1) / 2                (reflection)
///   B      = (1/sqrt2) { [[1,1],[1,-1]] (+) [[1,1],[1,-1]] }
///   L1, L2 = the 4 x 4 matrices from the dim-Y = 2 analysis
///   S_ex5  = the Hadamard-type isometry with images 2^-1(1,1,1,1), ...
/// All exactly orthogonal.
struct ExceptionalMatrices {
    ExactMatrix A, B, L1, L2, S_ex5;
};
ExceptionalMatrices exceptional_matrices();

/// T: E_p(2) -> l_p^2, (x,y) |-> 2^(-1/p) (x+y, x-y). Exact for p in
/// {1, 2, inf}; float otherwise.
std::optional<ExactMatrix> t_ep_exact(const ExtendedP& p);
std::vector<double> t_ep(double p_value_or_inf);  // 2x2 row-major

/// Breadth-first product closure with exact dedup. Generators must be
/// exactly orthogonal (isometries of absolute norms are; non-orthogonal
/// input indicates a caller error). closed=false when a cap is hit.
GeneratedGroup closure(std::vector<ExactMatrix> gens, std::size_t cap = 1'000'000,
                       std::size_t product_cap = 100'000'000);

/// The group of exact orthogonal maps on R^(2n) permuting the 4n signed
/// vectors {±(e1 ± e2) ⊗ e_j}: constructed as the conjugate of GP(2n) by the
/// block-diagonal matrix with 2x2 blocks (1/sqrt2)[[1,1],[1,-1]]. Every
/// generator is verified to permute the signed set. Closed by enumeration
/// (order 2^(2n) (2n)!) while under the cap.
GeneratedGroup a2n_group(int n, const Config& cfg = {});

/// Returns the signed vector set {±(e1 ± e2) ⊗ e_j} in flattened
/// coordinates, and whether a matrix permutes it.
std::vector<std::vector<QSqrt2>> a2n_signed_set(int n);
bool permutes_signed_set(const ExactMatrix& m, const std::vector<std::vector<QSqrt2>>& set);

struct GroupRelations {
    bool subgroup = false;  // G <= H
    bool normal = false;    // G normal in H
    bool equal = false;
};

/// Exact set comparisons and conjugation tests; both groups must be closed.
GroupRelations group_relations(const GeneratedGroup& g, const GeneratedGroup& h);

/// Float closure backend with tolerance-quantized hashing (1e-9 grid), for
/// groups whose entries live outside Q(sqrt 2) (dihedral h not in {1,2,4,8},
/// T_ep for general p).
struct FloatGroup {
    int dim = 0;
    std::vector<std::vector<double>> elements;  // row-major matrices
    bool closed = false;
};
FloatGroup closure_float(int dim, const std::vector<std::vector<double>>& gens,
                         std::size_t cap = 100'000);
std::vector<std::vector<double>> dihedral_float(int h);

nlohmann::json to_json(const GeneratedGroup& g, bool include_elements = false);

}  // namespace normfiber
