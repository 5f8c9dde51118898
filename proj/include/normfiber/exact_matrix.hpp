#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "normfiber/qsqrt2.hpp"

namespace normfiber {

/// Square matrix over Q(sqrt 2). Group elements are kept exactly orthogonal,
/// which makes closure enumeration a plain set computation with no float
/// hashing fragility.
class ExactMatrix {
public:
    ExactMatrix() = default;
    explicit ExactMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {}

    static ExactMatrix identity(int dim);

    int dim() const { return dim_; }
    const QSqrt2& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * dim_ + c]; }
    QSqrt2& at(int r, int c) { return e_[static_cast<std::size_t>(r) * dim_ + c]; }

    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix transpose() const;
    ExactMatrix operator-() const;

    bool operator==(const ExactMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }
    bool operator<(const ExactMatrix& o) const;  // canonical ordering for stable output

    /// Exact check of M^T M = I.
    bool is_orthogonal() const;

    /// Applies the matrix to an exact vector.
    std::vector<QSqrt2> apply(const std::vector<QSqrt2>& v) const;

    std::vector<double> to_doubles() const;  // row-major
    std::uint64_t hash() const;

private:
    int dim_ = 0;
    std::vector<QSqrt2> e_;  // row-major
};

struct ExactMatrixHash {
    std::size_t operator()(const ExactMatrix& m) const { return m.hash(); }
};

/// Matrix JSON: {"dim":d,"rows":[[entry,...],...]} with entries either plain
/// numbers (must be exactly representable: integers, halves, quarters or
/// those plus sqrt2/2 multiples are NOT inferred -- use the object form) or
/// {"a":"<rational>","b":"<rational>"} for a + b*sqrt2.
nlohmann::json to_json(const ExactMatrix& m);
ExactMatrix exact_matrix_from_json(const nlohmann::json& j);

}  // namespace normfiber
