#include "normfiber/fibers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "normfiber/decompose.hpp"
#include "normfiber/rng.hpp"
#include "normfiber/sampling.hpp"

namespace normfiber {

namespace {

void check_subset(const IndexSet& s, int dim, bool proper_required) {
    if (s.empty()) throw std::invalid_argument("index set must be nonempty");
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("index set must be sorted and duplicate-free");
    if (s.front() < 1 || s.back() > dim) throw std::invalid_argument("index out of range");
    if (proper_required && static_cast<int>(s.size()) == dim)
        throw std::invalid_argument("index set must be a proper subset");
}

std::uint64_t subset_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed ^ (tag * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    return z ^ (z >> 31);
}

}  // namespace

IndexSet complement_of(const IndexSet& s, int dim) {
    IndexSet out;
    out.reserve(dim - s.size());
    std::size_t j = 0;
    for (int i = 1; i <= dim; ++i) {
        if (j < s.size() && s[j] == i) {
            ++j;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

FiberVerdict is_fiber_numeric(const Norm& n, const IndexSet& s, int trials, double tol,
                              std::uint64_t seed) {
    const int d = n.dim();
    check_subset(s, d, /*proper_required=*/true);
    const IndexSet comp = complement_of(s, d);

    Rng rng(seed);
    FiberVerdict verdict;
    verdict.set = s;
    verdict.method = FiberMethod::Numeric;

    for (int t = 0; t < trials; ++t) {
        ++verdict.trials_used;
        std::vector<double> a = sample_supported(rng, d, s);
        std::vector<double> ap = sample_supported(rng, d, s);
        const double na = n.eval(a);
        const double nap = n.eval(ap);
        if (nap == 0.0) continue;  // cannot rescale the zero vector
        const double scale = na / nap;
        for (double& v : ap) v *= scale;

        std::vector<double> b = sample_supported(rng, d, comp);
        std::vector<double> axb = a, apxb = ap;
        for (int i : comp) {
            axb[i - 1] = b[i - 1];
            apxb[i - 1] = b[i - 1];
        }
        const double lhs = n.eval(axb);
        const double rhs = n.eval(apxb);
        const double gap = std::fabs(lhs - rhs);
        if (gap > tol * std::max(1.0, lhs)) {
            verdict.status = FiberStatus::NotFiber;
            verdict.witness = FiberWitness{a, ap, b, gap};
            return verdict;
        }
    }
    verdict.status = FiberStatus::Fiber;  // evidence only
    return verdict;
}

namespace {

FiberStatus structural_status(const NormExpr& n, const IndexSet& s) {
    if (s.size() == 1) return FiberStatus::Fiber;                   // singletons
    if (n.kind() == NormExpr::Kind::Lp) return FiberStatus::Fiber;  // every proper subset of l_p
    if (n.kind() != NormExpr::Kind::Cross) return FiberStatus::Unknown;

    const auto& factors = n.factors();

    // contained in a single factor?
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto [off, len] = n.factor_span(i);
        if (s.front() >= off + 1 && s.back() <= off + len) {
            if (static_cast<int>(s.size()) == len) return FiberStatus::Fiber;  // one full factor
            IndexSet rel;
            rel.reserve(s.size());
            for (int idx : s) rel.push_back(idx - off);
            return structural_status(*factors[i], rel);
        }
    }

    // exact union of full factors?
    IndexSet outer_set;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto [off, len] = n.factor_span(i);
        int count = 0;
        for (int idx : s)
            if (idx >= off + 1 && idx <= off + len) ++count;
        if (count == len) {
            outer_set.push_back(static_cast<int>(i) + 1);
            covered += len;
        } else if (count != 0) {
            return FiberStatus::Unknown;  // partially covered factor
        }
    }
    if (covered != s.size()) return FiberStatus::Unknown;
    if (outer_set.size() == 1) return FiberStatus::Fiber;
    return structural_status(*n.outer(), outer_set);
}

}  // namespace

FiberVerdict is_fiber_structural(const NormExpr& n, const IndexSet& s) {
    check_subset(s, n.dim(), /*proper_required=*/true);
    FiberVerdict v;
    v.set = s;
    v.method = FiberMethod::Structural;
    v.status = structural_status(n, s);
    v.proven = (v.status == FiberStatus::Fiber);
    return v;
}

FiberVerdict is_fiber(const Norm& n, const IndexSet& s, const Config& cfg) {
    if (const auto* expr = dynamic_cast<const NormExpr*>(&n)) {
        FiberVerdict v = is_fiber_structural(*expr, s);
        if (v.status != FiberStatus::Unknown) return v;
    }
    std::uint64_t tag = 0;
    for (int i : s) tag |= (1ULL << (i - 1));
    FiberVerdict v = is_fiber_numeric(n, s, cfg.trials, cfg.tol, subset_seed(cfg.seed, tag));
    if (dynamic_cast<const NormExpr*>(&n)) v.method = FiberMethod::Both;
    return v;
}

std::vector<IndexSet> maximal_fibers(const Norm& n, const Config& cfg) {
    const int d = n.dim();
    if (d > cfg.exhaustive_bound)
        throw std::runtime_error(
            "maximal_fibers: dimension exceeds the exhaustive bound; raise it or use "
            "is_fiber_structural on individual subsets");

    std::vector<IndexSet> fibers;
    const std::uint64_t full = (1ULL << d) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        IndexSet s;
        for (int i = 0; i < d; ++i)
            if (mask & (1ULL << i)) s.push_back(i + 1);
        if (is_fiber(n, s, cfg).status == FiberStatus::Fiber) fibers.push_back(std::move(s));
    }

    std::vector<IndexSet> maximal;
    for (const auto& f : fibers) {
        bool strictly_contained = false;
        for (const auto& g : fibers) {
            if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                strictly_contained = true;
                break;
            }
        }
        if (!strictly_contained) maximal.push_back(f);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

std::vector<IndexSet> l2_fiber_classes(const Norm& n, int trials, double tol, std::uint64_t seed) {
    const int d = n.dim();
    if (d < 2) throw std::invalid_argument("l2_fiber_classes: dimension must be >= 2");

    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int s = 0; s < d; ++s) {
        for (int t = s + 1; t < d; ++t) {
            Rng rng(subset_seed(seed, (static_cast<std::uint64_t>(s) << 32) | t));
            bool equivalent = true;
            for (int k = 0; k < trials && equivalent; ++k) {
                std::vector<double> x = sample_mixture(rng, d);
                const double nx = n.eval(x);
                // replace (x_s, x_t) by an arbitrary pair of the same
                // Euclidean length (rotation, optionally reflected)
                const double ang = rng.uniform(0.0, 6.283185307179586);
                const double c = std::cos(ang), sn = std::sin(ang);
                std::vector<double> y = x;
                y[s] = c * x[s] - sn * x[t];
                y[t] = sn * x[s] + c * x[t];
                if (rng.sign() < 0) std::swap(y[s], y[t]);
                if (std::fabs(n.eval(y) - nx) > tol * std::max(1.0, nx)) equivalent = false;
            }
            if (equivalent) parent[find(s)] = find(t);
        }
    }

    std::vector<IndexSet> classes(d);
    for (int i = 0; i < d; ++i) classes[find(i)].push_back(i + 1);
    std::vector<IndexSet> out;
    for (auto& c : classes)
        if (!c.empty()) out.push_back(std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

Prop22Result prop22_check(const Norm& n, const IndexSet& s, const IndexSet& t, const Config& cfg) {
    const int d = n.dim();
    check_subset(s, d, true);
    check_subset(t, d, true);

    IndexSet inter, s_minus, t_minus;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(inter));
    std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(s_minus));
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(t_minus));
    if (inter.empty() || s_minus.empty() || t_minus.empty())
        throw std::invalid_argument("prop22_check: need S\\T, S∩T and T\\S all nonempty");
    if (is_fiber(n, s, cfg).status != FiberStatus::Fiber)
        throw std::invalid_argument("prop22_check: S is not a fiber");
    if (is_fiber(n, t, cfg).status != FiberStatus::Fiber)
        throw std::invalid_argument("prop22_check: T is not a fiber");

    Prop22Result res;
    res.s0 = s_minus.front();
    res.i0 = inter.front();
    res.t0 = t_minus.front();

    res.p = detect_p_pair(n, res.s0, res.i0, cfg);
    if (!res.p) {
        res.residual = std::numeric_limits<double>::infinity();
        return res;
    }
    const ExtendedP p = *res.p;

    double residual = 0.0;
    const double grid[] = {0.0, 0.25, 0.5, 1.0, 1.5, 2.5};
    std::vector<double> x(d, 0.0);
    for (double x1 : grid)
        for (double x2 : grid)
            for (double x3 : grid) {
                std::fill(x.begin(), x.end(), 0.0);
                x[res.s0 - 1] = x1;
                x[res.i0 - 1] = x2;
                x[res.t0 - 1] = x3;
                const double lhs = n.eval(x);
                const double vals[] = {x1, x2, x3};
                const double rhs = lp_of(p, vals);
                residual = std::max(residual, std::fabs(lhs - rhs) / std::max(1.0, rhs));
            }

    // full three-block split N = l_p(N|_{T\S}, N|_{T∩S}, N|_{S\T}) on samples
    auto restricted = [&](const std::vector<double>& v, const IndexSet& idx) {
        std::vector<double> padded(d, 0.0);
        for (int i : idx) padded[i - 1] = v[i - 1];
        return n.eval(padded);
    };
    Rng rng(subset_seed(cfg.seed, 0x22b10c4));
    for (int k = 0; k < cfg.samples; ++k) {
        std::vector<double> v = sample_mixture(rng, d);
        const double lhs = n.eval(v);
        const double blocks[] = {restricted(v, t_minus), restricted(v, inter),
                                 restricted(v, s_minus)};
        const double rhs = lp_of(p, blocks);
        residual = std::max(residual, std::fabs(lhs - rhs) / std::max(1.0, rhs));
    }

    res.residual = residual;
    res.verified = residual <= cfg.tol;
    return res;
}

nlohmann::json to_json(const FiberVerdict& v) {
    const char* status = v.status == FiberStatus::Fiber     ? "fiber"
                         : v.status == FiberStatus::NotFiber ? "notfiber"
                                                             : "unknown";
    const char* method = v.method == FiberMethod::Structural ? "structural"
                         : v.method == FiberMethod::Numeric   ? "numeric"
                                                              : "both";
    nlohmann::json j{{"set", v.set},
                     {"verdict", status},
                     {"method", method},
                     {"witness", nullptr},
                     {"trials_used", v.trials_used},
                     {"proven", v.proven}};
    if (v.witness)
        j["witness"] = {{"a", v.witness->a},
                        {"a_prime", v.witness->a_prime},
                        {"b", v.witness->b},
                        {"gap", v.witness->gap}};
    return j;
}

}  // namespace normfiber
