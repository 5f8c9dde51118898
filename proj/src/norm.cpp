#include "normfiber/norm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normfiber/rng.hpp"

namespace normfiber {

double Norm::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("norm evaluation: expected dimension " +
                                    std::to_string(dim()) + ", got " +
                                    std::to_string(x.size()));
    for (double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument("norm evaluation: non-finite coordinate");
    return eval_raw(x);
}

double Norm::eval(std::initializer_list<double> x) const {
    return eval(std::span<const double>(x.begin(), x.size()));
}

double Norm::eval_complex(std::span<const std::complex<double>> z) const {
    const std::vector<double> moduli = modulus_reduce(z);
    return eval(moduli);
}

std::vector<double> modulus_reduce(std::span<const std::complex<double>> z) {
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::abs(z[i]);
    return out;
}

double lp_of(ExtendedP p, std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    if (m == 0.0) return 0.0;
    if (p.is_infinite()) return m;
    const double pv = p.value();
    if (pv == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::fabs(v);
        return s;
    }
    if (pv == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double s = 0.0;
    for (double v : x) s += std::pow(std::fabs(v) / m, pv);
    return m * std::pow(s, 1.0 / pv);
}

namespace {

// Symmetry spot check used by the ETransform constructor (2-dim case: the
// coordinate swap plus sign flips).
bool is_symmetric_2d(const Norm& n, double tol) {
    Rng rng(0x5e7a11);
    for (int t = 0; t < 256; ++t) {
        const double x = rng.uniform(-2.0, 2.0);
        const double y = rng.uniform(-2.0, 2.0);
        const double ref = n.eval_raw(std::initializer_list<double>{x, y});
        for (double a : {n.eval_raw(std::initializer_list<double>{y, x}),
                         n.eval_raw(std::initializer_list<double>{-x, y}),
                         n.eval_raw(std::initializer_list<double>{x, -y})}) {
            if (std::fabs(a - ref) > tol * std::max(1.0, ref)) return false;
        }
    }
    return true;
}

}  // namespace

NormExprPtr NormExpr::lp(ExtendedP p, int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("lp: dim out of range");
    auto n = std::shared_ptr<NormExpr>(new NormExpr());
    n->kind_ = Kind::Lp;
    n->p_ = p;
    n->dim_ = dim;
    return n;
}

NormExprPtr NormExpr::ep2(ExtendedP p) {
    auto n = std::shared_ptr<NormExpr>(new NormExpr());
    n->kind_ = Kind::Ep2;
    n->p_ = p;
    n->dim_ = 2;
    if (!p.is_infinite() && p.value() == 2.0)
        n->note_ = "E_2(2) coincides with l_2^2; downstream structure treats it as l_2";
    return n;
}

NormExprPtr NormExpr::cross(NormExprPtr outer, std::vector<NormExprPtr> factors) {
    if (!outer) throw std::invalid_argument("cross: null outer norm");
    if (factors.size() < 2) throw std::invalid_argument("cross: needs at least 2 factors");
    if (outer->dim() != static_cast<int>(factors.size()))
        throw std::invalid_argument("cross: outer dimension must equal the factor count");
    int total = 0;
    std::vector<int> offsets;
    offsets.reserve(factors.size());
    for (const auto& f : factors) {
        if (!f) throw std::invalid_argument("cross: null factor");
        offsets.push_back(total);
        total += f->dim();
    }
    if (total > kMaxDim) throw std::invalid_argument("cross: total dimension exceeds kMaxDim");
    auto n = std::shared_ptr<NormExpr>(new NormExpr());
    n->kind_ = Kind::Cross;
    n->dim_ = total;
    n->outer_ = std::move(outer);
    n->factors_ = std::move(factors);
    n->offsets_ = std::move(offsets);
    return n;
}

NormExprPtr NormExpr::etransform(NormExprPtr inner) {
    if (!inner) throw std::invalid_argument("etransform: null inner norm");
    if (inner->dim() != 2) throw std::invalid_argument("etransform: inner norm must be 2-dimensional");
    if (!is_symmetric_2d(*inner, 1e-9))
        throw std::invalid_argument("etransform: inner norm failed the symmetry check");
    auto n = std::shared_ptr<NormExpr>(new NormExpr());
    n->kind_ = Kind::ETransform;
    n->dim_ = 2;
    n->inner_ = std::move(inner);
    n->e_normalizer_ = n->inner_->eval_raw(std::initializer_list<double>{1.0, 1.0});
    return n;
}

ExtendedP NormExpr::p() const {
    if (kind_ != Kind::Lp && kind_ != Kind::Ep2)
        throw std::logic_error("p() is defined for Lp and Ep2 nodes only");
    return p_;
}

std::pair<int, int> NormExpr::factor_span(std::size_t i) const {
    if (kind_ != Kind::Cross || i >= factors_.size())
        throw std::logic_error("factor_span: not a Cross node or index out of range");
    return {offsets_[i], factors_[i]->dim()};
}

double NormExpr::eval_raw(std::span<const double> x) const {
    switch (kind_) {
        case Kind::Lp:
            return lp_of(p_, x);
        case Kind::Ep2: {
            const double u = std::fabs(x[0] + x[1]);
            const double v = std::fabs(x[0] - x[1]);
            if (p_.is_infinite()) return std::max(u, v);
            const double m = std::max(u, v);
            if (m == 0.0) return 0.0;
            const double pv = p_.value();
            const double s = (std::pow(u / m, pv) + std::pow(v / m, pv)) / 2.0;
            return m * std::pow(s, 1.0 / pv);
        }
        case Kind::Cross: {
            double profile[kMaxDim];
            for (std::size_t i = 0; i < factors_.size(); ++i)
                profile[i] = factors_[i]->eval_raw(x.subspan(offsets_[i], factors_[i]->dim()));
            return outer_->eval_raw(std::span<const double>(profile, factors_.size()));
        }
        case Kind::ETransform: {
            const double u[2] = {x[0] + x[1], x[0] - x[1]};
            return inner_->eval_raw(std::span<const double>(u, 2)) / e_normalizer_;
        }
    }
    return 0.0;  // unreachable
}

RestrictedNorm::RestrictedNorm(NormPtr base, std::vector<int> indices)
    : base_(std::move(base)), indices_(std::move(indices)) {
    if (!base_) throw std::invalid_argument("RestrictedNorm: null base");
    if (indices_.empty()) throw std::invalid_argument("RestrictedNorm: empty index set");
    for (int i : indices_)
        if (i < 1 || i > base_->dim())
            throw std::invalid_argument("RestrictedNorm: index out of range");
}

double RestrictedNorm::eval_raw(std::span<const double> x) const {
    double padded[kMaxDim] = {};
    for (std::size_t i = 0; i < indices_.size(); ++i) padded[indices_[i] - 1] = x[i];
    return base_->eval_raw(std::span<const double>(padded, base_->dim()));
}

InducedOuterNorm::InducedOuterNorm(NormPtr base, std::vector<int> representatives)
    : base_(std::move(base)), reps_(std::move(representatives)) {
    if (!base_) throw std::invalid_argument("InducedOuterNorm: null base");
    if (reps_.empty()) throw std::invalid_argument("InducedOuterNorm: no representatives");
    for (int i : reps_)
        if (i < 1 || i > base_->dim())
            throw std::invalid_argument("InducedOuterNorm: representative out of range");
}

double InducedOuterNorm::eval_raw(std::span<const double> x) const {
    double padded[kMaxDim] = {};
    for (std::size_t i = 0; i < reps_.size(); ++i) padded[reps_[i] - 1] = x[i];
    return base_->eval_raw(std::span<const double>(padded, base_->dim()));
}

}  // namespace normfiber
