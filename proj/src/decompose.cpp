#include "normfiber/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normfiber/norm_json.hpp"
#include "normfiber/rng.hpp"
#include "normfiber/sampling.hpp"

namespace normfiber {

namespace {

constexpr double kDefaultGrid[] = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};

// larger p is indistinguishable from inf in doubles
constexpr double kPCap = 1e3;

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::max(a, b)); }

}  // namespace

std::optional<ExtendedP> detect_p_pair(const Norm& n, int i, int j, std::span<const double> grid,
                                       double tol) {
    const int d = n.dim();
    if (i < 1 || i > d || j < 1 || j > d || i == j)
        throw std::invalid_argument("detect_p_pair: invalid coordinate pair");

    std::vector<double> buf(d, 0.0);
    auto f = [&](double a, double b) {
        std::fill(buf.begin(), buf.end(), 0.0);
        buf[i - 1] = a;
        buf[j - 1] = b;
        return n.eval(buf);
    };

    // associativity f(f(a,b),c) = f(a,f(b,c)) over the grid
    for (double a : grid)
        for (double b : grid)
            for (double c : grid)
                if (rel_gap(f(f(a, b), c), f(a, f(b, c))) > tol) return std::nullopt;

    const double f11 = f(1.0, 1.0);
    ExtendedP p = ExtendedP::infinity();
    if (std::fabs(f11 - 1.0) > 1e-9) {
        if (f11 < 1.0) return std::nullopt;
        const double pv = std::log(2.0) / std::log(f11);
        if (pv < kPCap) {
            if (pv < 1.0 - 1e-9) return std::nullopt;
            p = ExtendedP(std::max(1.0, pv));
        }
    }

    // cross-check the one-parameter family f(1,t)
    for (double t : grid) {
        const double vals[] = {1.0, t};
        if (rel_gap(f(1.0, t), lp_of(p, vals)) > tol) return std::nullopt;
    }
    return p;
}

std::optional<ExtendedP> detect_p_pair(const Norm& n, int i, int j, const Config& cfg) {
    return detect_p_pair(n, i, j, kDefaultGrid, cfg.detect_tol);
}

Ep2Detection is_ep2(const Norm& two_dim, double tol) {
    if (two_dim.dim() != 2) throw std::invalid_argument("is_ep2: norm must be 2-dimensional");

    auto ep_formula = [](ExtendedP p, double x, double y) {
        const double u = std::fabs(x + y), v = std::fabs(x - y);
        if (p.is_infinite()) return std::max(u, v);
        const double vals[] = {u, v};
        // ((u^p + v^p)/2)^(1/p) = 2^(-1/p) l_p(u, v)
        return std::pow(2.0, -1.0 / p.value()) * lp_of(p, vals);
    };

    Ep2Detection det;
    const double n11 = two_dim.eval({1.0, 1.0});
    ExtendedP cand = ExtendedP(1.0);
    if (std::fabs(n11 - 2.0) <= tol) {
        cand = ExtendedP::infinity();
    } else {
        const double log2n = std::log2(n11);
        if (log2n < 0.0 || log2n >= 1.0) {
            det.note = "N(1,1) outside [1,2); no E_p candidate";
            return det;
        }
        const double pv = 1.0 / (1.0 - log2n);
        if (std::fabs(pv - 2.0) <= tol) {
            det.note = "candidate p = 2: E_2(2) = l_2^2, classified as l_p instead";
            return det;
        }
        cand = ExtendedP(std::max(1.0, pv));
    }

    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    for (double x : grid)
        for (double y : grid) {
            const double lhs = two_dim.eval({x, y});
            const double neg = two_dim.eval({x, -y});
            if (rel_gap(lhs, ep_formula(cand, x, y)) > tol ||
                rel_gap(neg, ep_formula(cand, x, -y)) > tol) {
                det.note = "grid refuted the E_p fit";
                return det;
            }
        }
    det.p = cand;
    return det;
}

namespace {

bool pairwise_disjoint(const std::vector<IndexSet>& sets) {
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
            IndexSet inter;
            std::set_intersection(sets[a].begin(), sets[a].end(), sets[b].begin(), sets[b].end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) return false;
        }
    return true;
}

// If the partition coincides with the factor layout of a Cross node (in
// order), the induced outer norm is exactly the explicit outer expression.
NormExprPtr aligned_cross_outer(const Norm& n, const std::vector<IndexSet>& parts) {
    const auto* expr = dynamic_cast<const NormExpr*>(&n);
    if (!expr || expr->kind() != NormExpr::Kind::Cross) return nullptr;
    if (expr->factors().size() != parts.size()) return nullptr;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto [off, len] = expr->factor_span(i);
        if (static_cast<int>(parts[i].size()) != len) return nullptr;
        for (int k = 0; k < len; ++k)
            if (parts[i][k] != off + 1 + k) return nullptr;
    }
    return expr->outer();
}

NormExprPtr aligned_factor_expr(const Norm& n, const IndexSet& part) {
    const auto* expr = dynamic_cast<const NormExpr*>(&n);
    if (!expr || expr->kind() != NormExpr::Kind::Cross) return nullptr;
    for (std::size_t i = 0; i < expr->factors().size(); ++i) {
        const auto [off, len] = expr->factor_span(i);
        if (static_cast<int>(part.size()) != len) continue;
        bool match = true;
        for (int k = 0; k < len && match; ++k) match = (part[k] == off + 1 + k);
        if (match) return expr->factors()[i];
    }
    return nullptr;
}

}  // namespace

DecompositionTree decompose(NormPtr base, const Config& cfg) {
    if (!base) throw std::invalid_argument("decompose: null norm");
    const Norm& n = *base;
    const int d = n.dim();
    if (d < 2) throw std::invalid_argument("decompose: dimension must be >= 2");
    if (d > cfg.exhaustive_bound)
        throw std::runtime_error("decompose: dimension exceeds the exhaustive bound");

    const std::vector<IndexSet> fibers = maximal_fibers(n, cfg);
    DecompositionTree tree;

    if (pairwise_disjoint(fibers)) {
        tree.decomp_case = DecompCase::CaseI;
        std::vector<IndexSet> parts = fibers;

        std::vector<bool> covered(d + 1, false);
        for (const auto& f : parts)
            for (int i : f) covered[i] = true;
        bool completed = false;
        for (int i = 1; i <= d; ++i)
            if (!covered[i]) {
                parts.push_back({i});
                completed = true;
            }
        if (completed) {
            // cannot happen for a genuine norm (singletons are fibers);
            // indicates numeric misclassification upstream
            tree.suspect = true;
            tree.notes = "maximal fibers did not cover the index set; completed with singletons";
        }
        std::sort(parts.begin(), parts.end());

        for (const auto& part : parts) {
            DecompFactor f;
            f.indices = part;
            f.kind = FactorKind::MaximalFiber;
            f.expr = aligned_factor_expr(n, part);
            f.restriction = std::make_shared<RestrictedNorm>(base, part);
            tree.factors.push_back(std::move(f));
            tree.representatives.push_back(part.front());
        }
        tree.outer_expr = aligned_cross_outer(n, parts);
        if (tree.outer_expr)
            tree.outer = tree.outer_expr;
        else
            tree.outer = std::make_shared<InducedOuterNorm>(base, tree.representatives);
        return tree;
    }

    // Case II: some pair of maximal fibers intersects.
    tree.decomp_case = DecompCase::CaseII;
    std::optional<Prop22Result> prop22;
    for (std::size_t a = 0; a < fibers.size() && !prop22; ++a)
        for (std::size_t b = a + 1; b < fibers.size() && !prop22; ++b) {
            IndexSet inter;
            std::set_intersection(fibers[a].begin(), fibers[a].end(), fibers[b].begin(),
                                  fibers[b].end(), std::back_inserter(inter));
            if (!inter.empty()) prop22 = prop22_check(n, fibers[a], fibers[b], cfg);
        }
    if (!prop22 || !prop22->p)
        throw std::runtime_error("decompose: intersecting maximal fibers but p detection failed");
    const ExtendedP p = *prop22->p;
    tree.p = p;

    // Factors from maximal fibers (Theorem 2.4 shape): the merged l_p part
    // collects every i whose complement is a maximal fiber; every other part
    // is the complement of a maximal fiber.
    IndexSet merged;
    std::vector<IndexSet> big_parts;
    for (const auto& f : fibers) {
        IndexSet comp = complement_of(f, d);
        if (comp.size() == 1)
            merged.push_back(comp.front());
        else
            big_parts.push_back(std::move(comp));
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::sort(big_parts.begin(), big_parts.end());
    big_parts.erase(std::unique(big_parts.begin(), big_parts.end()), big_parts.end());

    {  // the parts must partition {1..d}
        std::vector<int> count(d + 1, 0);
        for (int i : merged) ++count[i];
        for (const auto& part : big_parts)
            for (int i : part) ++count[i];
        for (int i = 1; i <= d; ++i)
            if (count[i] != 1)
                throw std::runtime_error(
                    "decompose: maximal-fiber complements do not partition the index set "
                    "(inconsistent fiber verdicts)");
    }

    // every cross-part coordinate pair must detect the same p
    std::vector<IndexSet> all_parts;
    for (int i : merged) all_parts.push_back({i});
    for (const auto& part : big_parts) all_parts.push_back(part);
    for (std::size_t a = 0; a < all_parts.size(); ++a)
        for (std::size_t b = a + 1; b < all_parts.size(); ++b) {
            const auto q = detect_p_pair(n, all_parts[a].front(), all_parts[b].front(), cfg);
            if (!q || q->distance(p) > 1e-6)
                throw std::runtime_error(
                    "decompose: inconsistent p across l_p-summand pairs");
        }

    if (!merged.empty()) {
        DecompFactor f;
        f.indices = merged;
        f.kind = FactorKind::MergedLp;
        f.expr = NormExpr::lp(p, static_cast<int>(merged.size()));
        f.restriction = std::make_shared<RestrictedNorm>(base, merged);
        tree.factors.push_back(std::move(f));
    }
    for (const auto& part : big_parts) {
        DecompFactor f;
        f.indices = part;
        f.kind = FactorKind::Indecomposable;
        f.restriction = std::make_shared<RestrictedNorm>(base, part);
        if (part.size() == 2 && !cfg.complex_mode && !(p.value() == 2.0 && !p.is_infinite())) {
            const Ep2Detection det = is_ep2(*f.restriction, cfg.detect_tol);
            if (det.p && det.p->distance(p) <= 1e-6) {
                f.kind = FactorKind::Ep2Factor;
                f.expr = NormExpr::ep2(p);
            }
        }
        tree.factors.push_back(std::move(f));
    }

    tree.outer_expr = NormExpr::lp(p, static_cast<int>(tree.factors.size()));
    tree.outer = tree.outer_expr;

    // the split must reproduce the norm
    const double resid = reconstruct_check(n, tree, cfg.samples, cfg.seed ^ 0xdec0de5ULL);
    if (resid > cfg.tol)
        throw std::runtime_error("decompose: l_p split failed the sampled reconstruction check");
    return tree;
}

namespace {

NormExprPtr regroup_node(const NormExprPtr& n) {
    switch (n->kind()) {
        case NormExpr::Kind::Lp:
            return n;
        case NormExpr::Kind::Ep2:
            if (!n->p().is_infinite() && n->p().value() == 2.0) return NormExpr::lp(2.0, 2);
            return n;
        case NormExpr::Kind::ETransform:
            return n;
        case NormExpr::Kind::Cross:
            break;
    }

    NormExprPtr outer = regroup_node(n->outer());
    std::vector<NormExprPtr> factors;
    factors.reserve(n->factors().size());
    for (const auto& f : n->factors()) factors.push_back(regroup_node(f));

    if (outer->kind() == NormExpr::Kind::Lp) {
        const ExtendedP p = outer->p();
        // absorb matching l_p factors (and matching nested l_p crosses)
        std::vector<NormExprPtr> absorbed;
        bool changed = false;
        for (const auto& f : factors) {
            if (f->kind() == NormExpr::Kind::Lp && f->p() == p) {
                for (int k = 0; k < f->dim(); ++k) absorbed.push_back(NormExpr::lp(p, 1));
                if (f->dim() > 1) changed = true;
            } else if (f->kind() == NormExpr::Kind::Cross &&
                       f->outer()->kind() == NormExpr::Kind::Lp && f->outer()->p() == p) {
                for (const auto& sub : f->factors()) absorbed.push_back(sub);
                changed = true;
            } else {
                absorbed.push_back(f);
            }
        }
        const bool all_scalar = std::all_of(absorbed.begin(), absorbed.end(),
                                            [](const NormExprPtr& f) { return f->dim() == 1; });
        if (all_scalar) return NormExpr::lp(p, static_cast<int>(absorbed.size()));
        if (changed || absorbed.size() != factors.size())
            return NormExpr::cross(NormExpr::lp(p, static_cast<int>(absorbed.size())),
                                   std::move(absorbed));
    }
    if (factors.size() == 1) return factors.front();  // unary cross
    return NormExpr::cross(std::move(outer), std::move(factors));
}

}  // namespace

NormExprPtr regroup(const NormExprPtr& n) {
    if (!n) throw std::invalid_argument("regroup: null norm");
    NormExprPtr out = regroup_node(n);

    // regrouping must not change the norm
    Rng rng(0x9e90);
    for (int t = 0; t < 256; ++t) {
        std::vector<double> x = sample_mixture(rng, n->dim());
        const double a = n->eval(x), b = out->eval(x);
        if (std::fabs(a - b) > 1e-9 * std::max(1.0, a))
            throw std::logic_error("regroup: rewritten tree evaluates differently");
    }
    return out;
}

double reconstruct_check(const Norm& n, const DecompositionTree& tree, int samples,
                         std::uint64_t seed) {
    const int d = n.dim();
    Rng rng(seed);
    double worst = 0.0;
    std::vector<double> profile(tree.factors.size());
    for (int t = 0; t < samples; ++t) {
        std::vector<double> x = sample_mixture(rng, d);
        for (std::size_t i = 0; i < tree.factors.size(); ++i) {
            const auto& idx = tree.factors[i].indices;
            std::vector<double> slice;
            slice.reserve(idx.size());
            for (int k : idx) slice.push_back(x[k - 1]);
            profile[i] = tree.factors[i].restriction->eval(slice);
        }
        const double lhs = n.eval(x);
        const double rhs = tree.outer->eval(profile);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, lhs));
    }
    return worst;
}

nlohmann::json to_json(const DecompositionTree& tree) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : tree.factors) {
        const char* kind = f.kind == FactorKind::MaximalFiber    ? "maximal_fiber"
                           : f.kind == FactorKind::MergedLp      ? "merged_lp"
                           : f.kind == FactorKind::Ep2Factor     ? "ep2"
                                                                 : "indecomposable";
        nlohmann::json jf{{"indices", f.indices}, {"kind", kind}};
        if (f.expr) jf["norm"] = norm_to_json(f.expr);
        factors.push_back(std::move(jf));
    }
    nlohmann::json j{{"case", tree.decomp_case == DecompCase::CaseI ? "i" : "ii"},
                     {"factors", std::move(factors)}};
    if (tree.p) j["p"] = p_to_json(*tree.p);
    if (tree.outer_expr) {
        j["outer"] = norm_to_json(tree.outer_expr);
    } else {
        j["outer"] = {{"type", "induced"}, {"representatives", tree.representatives}};
    }
    if (tree.suspect) j["suspect"] = true;
    if (!tree.notes.empty()) j["notes"] = tree.notes;
    return j;
}

}  // namespace normfiber
