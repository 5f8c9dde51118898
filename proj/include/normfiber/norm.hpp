#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normfiber/extended_p.hpp"

namespace normfiber {

/// Hard cap on coordinate dimension; keeps evaluation buffers on the stack.
inline constexpr int kMaxDim = 64;

/// A normalized absolute norm on R^dim. Evaluation is pure and thread-safe;
/// all implementations are immutable after construction.
class Norm {
public:
    virtual ~Norm() = default;

    virtual int dim() const = 0;

    /// Unchecked evaluation; callers must pass exactly dim() finite reals.
    virtual double eval_raw(std::span<const double> x) const = 0;

    /// Checked evaluation: dimension mismatch or non-finite coordinates throw.
    double eval(std::span<const double> x) const;
    double eval(std::initializer_list<double> x) const;

    /// Complex coordinates are admitted at the boundary only: they are
    /// reduced to moduli (absolute norms depend on nothing else).
    double eval_complex(std::span<const std::complex<double>> z) const;
};

using NormPtr = std::shared_ptr<const Norm>;

/// Coordinatewise modulus of a complex vector.
std::vector<double> modulus_reduce(std::span<const std::complex<double>> z);

class NormExpr;
using NormExprPtr = std::shared_ptr<const NormExpr>;

/// Expression tree denoting a normalized absolute norm.
///
/// Nodes: Lp (l_p^dim), Ep2 (the 2-dim E_p space), Cross (outer norm of the
/// factor-norm profile), ETransform (x,y) -> ||(x+y, x-y)||_inner normalized
/// by ||(1,1)||_inner. Every node is normalized: N(e_i) = 1.
class NormExpr final : public Norm {
public:
    enum class Kind { Lp, Ep2, Cross, ETransform };

    static NormExprPtr lp(ExtendedP p, int dim);
    static NormExprPtr lp(double p, int dim) { return lp(ExtendedP(p), dim); }
    static NormExprPtr lp_inf(int dim) { return lp(ExtendedP::infinity(), dim); }

    /// E_2(2) is allowed; it equals l_2^2 and the node carries a note saying so.
    static NormExprPtr ep2(ExtendedP p);
    static NormExprPtr ep2(double p) { return ep2(ExtendedP(p)); }
    static NormExprPtr ep2_inf() { return ep2(ExtendedP::infinity()); }

    /// dim(outer) must equal factors.size() >= 2.
    static NormExprPtr cross(NormExprPtr outer, std::vector<NormExprPtr> factors);

    /// inner must be 2-dimensional and symmetric (checked by sampling).
    static NormExprPtr etransform(NormExprPtr inner);

    Kind kind() const { return kind_; }
    ExtendedP p() const;  // Lp / Ep2 nodes only
    const NormExprPtr& outer() const { return outer_; }
    const std::vector<NormExprPtr>& factors() const { return factors_; }
    const NormExprPtr& inner() const { return inner_; }
    const std::string& note() const { return note_; }

    int dim() const override { return dim_; }
    double eval_raw(std::span<const double> x) const override;

    /// Coordinate range [offset, offset+len) of factor i in a Cross node.
    std::pair<int, int> factor_span(std::size_t i) const;

private:
    NormExpr() = default;

    Kind kind_ = Kind::Lp;
    int dim_ = 0;
    ExtendedP p_ = ExtendedP(1.0);
    NormExprPtr outer_;
    std::vector<NormExprPtr> factors_;
    std::vector<int> offsets_;  // Cross: factor start offsets
    NormExprPtr inner_;
    double e_normalizer_ = 1.0;  // ETransform: ||(1,1)||_inner
    std::string note_;
};

/// Scaled l_p of a raw value array; the shared kernel for Lp/Ep2 evaluation
/// (scaling by the max entry avoids overflow for large p).
double lp_of(ExtendedP p, std::span<const double> x);

/// The norm induced on a coordinate subset: evaluates the base norm on the
/// zero-padded embedding. `indices` are 1-based base coordinates.
class RestrictedNorm final : public Norm {
public:
    RestrictedNorm(NormPtr base, std::vector<int> indices);
    int dim() const override { return static_cast<int>(indices_.size()); }
    double eval_raw(std::span<const double> x) const override;
    const std::vector<int>& indices() const { return indices_; }
    const NormPtr& base() const { return base_; }

private:
    NormPtr base_;
    std::vector<int> indices_;
};

/// The outer norm N_0 of a case-(i) decomposition, defined through
/// representatives: N_0(a_1,...,a_m) = N(sum_i a_i e_{s_i}).
class InducedOuterNorm final : public Norm {
public:
    InducedOuterNorm(NormPtr base, std::vector<int> representatives);
    int dim() const override { return static_cast<int>(reps_.size()); }
    double eval_raw(std::span<const double> x) const override;
    const std::vector<int>& representatives() const { return reps_; }

private:
    NormPtr base_;
    std::vector<int> reps_;  // 1-based base coordinates
};

}  // namespace normfiber
