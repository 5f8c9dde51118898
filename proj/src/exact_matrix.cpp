#include "normfiber/exact_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "normfiber/norm_json.hpp"

namespace normfiber {

ExactMatrix ExactMatrix::identity(int dim) {
    ExactMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = QSqrt2(1);
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("ExactMatrix: dimension mismatch");
    ExactMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const QSqrt2& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                const QSqrt2& b = o.at(k, j);
                if (!b.is_zero()) out.at(i, j) = out.at(i, j) + a * b;
            }
        }
    return out;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = at(i, j);
    return out;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(i, j) = -at(i, j);
    return out;
}

bool ExactMatrix::operator<(const ExactMatrix& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
    }
    return false;
}

bool ExactMatrix::is_orthogonal() const {
    const ExactMatrix gram = transpose() * (*this);
    const ExactMatrix id = identity(dim_);
    return gram == id;
}

std::vector<QSqrt2> ExactMatrix::apply(const std::vector<QSqrt2>& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("ExactMatrix::apply: dimension mismatch");
    std::vector<QSqrt2> out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + at(i, j) * v[j];
    return out;
}

std::vector<double> ExactMatrix::to_doubles() const {
    std::vector<double> out(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) out[i] = e_[i].to_double();
    return out;
}

std::uint64_t ExactMatrix::hash() const {
    // FNV-1a over the canonical (num, den, num, den) stream
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(dim_));
    for (const auto& q : e_) {
        mix(static_cast<std::uint64_t>(q.a().num()));
        mix(static_cast<std::uint64_t>(q.a().den()));
        mix(static_cast<std::uint64_t>(q.b().num()));
        mix(static_cast<std::uint64_t>(q.b().den()));
    }
    return h;
}

nlohmann::json to_json(const ExactMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.dim(); ++j) {
            const QSqrt2& q = m.at(i, j);
            if (q.b().is_zero() && q.a().den() == 1) {
                row.push_back(q.a().num());
            } else {
                row.push_back({{"a", q.a().str()}, {"b", q.b().str()}});
            }
        }
        rows.push_back(std::move(row));
    }
    return {{"dim", m.dim()}, {"rows", std::move(rows)}};
}

namespace {

QSqrt2 entry_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return QSqrt2(Rat(j.get<std::int64_t>()));
    if (j.is_number_float()) {
        // accept exact dyadics up to 1/8 (covers 0.5, 0.25 matrix files)
        const double v = j.get<double>();
        const double scaled = v * 8.0;
        if (scaled == std::round(scaled)) return QSqrt2(Rat(static_cast<std::int64_t>(scaled), 8));
        throw ParseError("matrix entry: non-exact float; use the {\"a\":..,\"b\":..} form");
    }
    if (j.is_object() && j.contains("a") && j.contains("b")) {
        auto rat = [](const nlohmann::json& r) {
            if (r.is_number_integer()) return Rat(r.get<std::int64_t>());
            if (r.is_string()) return Rat::parse(r.get<std::string>());
            throw ParseError("matrix entry: rational must be an integer or \"n/d\" string");
        };
        return QSqrt2(rat(j["a"]), rat(j["b"]));
    }
    throw ParseError("matrix entry: expected a number or {\"a\":..,\"b\":..}");
}

}  // namespace

ExactMatrix exact_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
        throw ParseError("matrix: expected {\"dim\":d,\"rows\":[[..],..]}");
    const int dim = j["dim"].get<int>();
    if (dim < 1 || dim > 64) throw ParseError("matrix: dim out of range");
    const auto& rows = j["rows"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw ParseError("matrix: row count must equal dim");
    ExactMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != dim)
            throw ParseError("matrix: each row must have dim entries");
        for (int c = 0; c < dim; ++c) m.at(i, c) = entry_from_json(rows[i][c]);
    }
    return m;
}

}  // namespace normfiber
