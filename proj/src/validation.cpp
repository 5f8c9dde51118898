#include "normfiber/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "normfiber/rng.hpp"
#include "normfiber/sampling.hpp"

namespace normfiber {

namespace {

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void record(AxiomResult& r, double violation, const std::vector<double>& witness, double tol) {
    if (violation > r.worst) {
        r.worst = violation;
        if (violation > tol) r.witness = witness;
    }
    if (violation > tol) r.passed = false;
}

}  // namespace

ValidationReport validate(const Norm& n, int sample_count, double tol, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("validate: sample_count must be >= 1");
    const int d = n.dim();
    Rng rng(seed);

    ValidationReport rep;
    rep.seed = seed;
    rep.samples = sample_count;
    rep.tol = tol;
    if (const auto* e = dynamic_cast<const NormExpr*>(&n); e && !e->note().empty())
        rep.note = e->note();

    AxiomResult normalization{"normalization"};
    AxiomResult absoluteness{"absoluteness"};
    AxiomResult homogeneity{"homogeneity"};
    AxiomResult triangle{"triangle"};
    AxiomResult monotonicity{"monotonicity"};

    for (int i = 0; i < d; ++i) {
        std::vector<double> e(d, 0.0);
        e[i] = 1.0;
        record(normalization, std::fabs(n.eval(e) - 1.0), e, tol);
    }

    for (int t = 0; t < sample_count; ++t) {
        std::vector<double> x = sample_mixture(rng, d);
        const double nx = n.eval(x);

        // absoluteness: arbitrary sign flips leave the value unchanged
        std::vector<double> flipped = x;
        for (double& v : flipped)
            if (rng.sign() < 0) v = -v;
        record(absoluteness, std::fabs(n.eval(flipped) - nx) / std::max(1.0, nx), x, tol);

        // homogeneity
        const double c = rng.uniform(-3.0, 3.0);
        std::vector<double> cx = x;
        for (double& v : cx) v *= c;
        record(homogeneity, std::fabs(n.eval(cx) - std::fabs(c) * nx) / std::max(1.0, nx), x, tol);

        // triangle inequality against a second sample
        std::vector<double> y = sample_mixture(rng, d);
        std::vector<double> xy = x;
        for (int i = 0; i < d; ++i) xy[i] += y[i];
        const double lhs = n.eval(xy);
        const double rhs = nx + n.eval(y);
        record(triangle, (lhs - rhs) / std::max(1.0, rhs), concat(x, y), tol);

        // monotonicity: shrink |y| coordinatewise, the norm may not grow
        std::vector<double> shrunk = y;
        for (double& v : shrunk) v *= rng.uniform01();
        record(monotonicity, (n.eval(shrunk) - n.eval(y)) / std::max(1.0, n.eval(y)),
               concat(shrunk, y), tol);
    }

    rep.axioms = {normalization, absoluteness, homogeneity, triangle, monotonicity};
    rep.all_passed = std::all_of(rep.axioms.begin(), rep.axioms.end(),
                                 [](const AxiomResult& a) { return a.passed; });
    return rep;
}

SymmetryReport symmetric_check(const Norm& n, int sample_count, double tol, std::uint64_t seed,
                               int perm_bound) {
    const int d = n.dim();
    if (d > perm_bound)
        throw std::invalid_argument("symmetric_check: dimension exceeds the exhaustive permutation bound");
    Rng rng(seed);

    // modest vector battery: the permutation loop is the expensive part
    const int vectors = std::max(8, std::min(sample_count, 64));
    std::vector<std::vector<double>> xs;
    xs.reserve(vectors);
    for (int t = 0; t < vectors; ++t) xs.push_back(sample_mixture(rng, d));

    SymmetryReport rep;
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<double> permuted(d);
    do {
        for (const auto& x : xs) {
            for (int i = 0; i < d; ++i) permuted[i] = x[perm[i] - 1];
            const double ref = n.eval(x);
            const double got = n.eval(permuted);
            const double viol = std::fabs(got - ref) / std::max(1.0, ref);
            rep.worst = std::max(rep.worst, viol);
            if (viol > tol) {
                rep.symmetric = false;
                rep.witness_perm = perm;
                rep.witness_vec = x;
                return rep;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // sign changes, sampled
    for (const auto& x : xs) {
        std::vector<double> flipped = x;
        for (double& v : flipped)
            if (rng.sign() < 0) v = -v;
        const double ref = n.eval(x);
        const double viol = std::fabs(n.eval(flipped) - ref) / std::max(1.0, ref);
        rep.worst = std::max(rep.worst, viol);
        if (viol > tol) {
            rep.symmetric = false;
            rep.witness_vec = x;
            return rep;
        }
    }
    return rep;
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json axioms = nlohmann::json::array();
    for (const auto& a : r.axioms) {
        nlohmann::json ja{{"axiom", a.axiom}, {"passed", a.passed}, {"worst", a.worst}};
        if (!a.witness.empty()) ja["witness"] = a.witness;
        if (!a.detail.empty()) ja["detail"] = a.detail;
        axioms.push_back(std::move(ja));
    }
    nlohmann::json j{{"all_passed", r.all_passed},
                     {"axioms", std::move(axioms)},
                     {"seed", r.seed},
                     {"samples", r.samples},
                     {"tol", r.tol}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

nlohmann::json to_json(const SymmetryReport& r) {
    nlohmann::json j{{"symmetric", r.symmetric}, {"worst", r.worst}};
    if (!r.witness_perm.empty()) j["witness_permutation"] = r.witness_perm;
    if (!r.witness_vec.empty()) j["witness_vector"] = r.witness_vec;
    return j;
}

}  // namespace normfiber
