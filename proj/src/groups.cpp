#include "normfiber/groups.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace normfiber {

namespace {

const Rat kHalf(1, 2);
const QSqrt2 kInvSqrt2(Rat(), Rat(1, 2));  // sqrt2 / 2 = 1/sqrt2

}  // namespace

bool GeneratedGroup::contains(const ExactMatrix& m) const {
    return std::binary_search(elements.begin(), elements.end(), m);
}

std::vector<ExactMatrix> gp_generators(int m) {
    if (m < 1) throw std::invalid_argument("gp_generators: m must be >= 1");
    std::vector<ExactMatrix> gens;

    ExactMatrix flip = ExactMatrix::identity(m);
    flip.at(0, 0) = QSqrt2(-1);
    gens.push_back(std::move(flip));

    if (m >= 2) {
        ExactMatrix swap = ExactMatrix::identity(m);
        swap.at(0, 0) = QSqrt2(0);
        swap.at(1, 1) = QSqrt2(0);
        swap.at(0, 1) = QSqrt2(1);
        swap.at(1, 0) = QSqrt2(1);
        gens.push_back(std::move(swap));

        ExactMatrix cycle(m);
        for (int i = 0; i < m; ++i) cycle.at((i + 1) % m, i) = QSqrt2(1);
        gens.push_back(std::move(cycle));
    }
    return gens;
}

std::vector<ExactMatrix> wreath_product(std::span<const ExactMatrix> gens, int n, BlockGroup bg) {
    if (n < 1) throw std::invalid_argument("wreath_product: n must be >= 1");
    if (gens.empty()) throw std::invalid_argument("wreath_product: no base generators");
    const int m = gens.front().dim();
    for (const auto& g : gens)
        if (g.dim() != m) throw std::invalid_argument("wreath_product: mixed base dimensions");
    const int dim = m * n;

    std::vector<ExactMatrix> out;

    // base generators in the first diagonal block
    for (const auto& g : gens) {
        ExactMatrix e = ExactMatrix::identity(dim);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) e.at(i, j) = g.at(i, j);
        out.push_back(std::move(e));
    }

    if (n >= 2) {
        // adjacent block transposition and block n-cycle
        ExactMatrix swap(dim);
        for (int i = 0; i < m; ++i) {
            swap.at(i, m + i) = QSqrt2(1);
            swap.at(m + i, i) = QSqrt2(1);
        }
        for (int i = 2 * m; i < dim; ++i) swap.at(i, i) = QSqrt2(1);
        out.push_back(std::move(swap));

        ExactMatrix cycle(dim);
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < m; ++i) cycle.at(((b + 1) % n) * m + i, b * m + i) = QSqrt2(1);
        out.push_back(std::move(cycle));
    }

    if (bg == BlockGroup::GP) {
        ExactMatrix sign = ExactMatrix::identity(dim);
        for (int i = 0; i < m; ++i) sign.at(i, i) = QSqrt2(-1);
        out.push_back(std::move(sign));
    }
    return out;
}

std::vector<ExactMatrix> dihedral(int h) {
    if (h != 1 && h != 2 && h != 4 && h != 8)
        throw std::invalid_argument(
            "dihedral: exact backend supports h in {1,2,4,8} (cos/sin of 2pi/h must lie in "
            "Q(sqrt2)); use dihedral_float for other h");
    ExactMatrix rot(2);
    switch (h) {
        case 1:
            rot = ExactMatrix::identity(2);
            break;
        case 2:
            rot = -ExactMatrix::identity(2);
            break;
        case 4:
            rot.at(0, 1) = QSqrt2(-1);
            rot.at(1, 0) = QSqrt2(1);
            break;
        case 8:
            rot.at(0, 0) = kInvSqrt2;
            rot.at(0, 1) = -kInvSqrt2;
            rot.at(1, 0) = kInvSqrt2;
            rot.at(1, 1) = kInvSqrt2;
            break;
    }
    ExactMatrix refl = ExactMatrix::identity(2);
    refl.at(1, 1) = QSqrt2(-1);
    return {rot, refl};
}

std::vector<std::vector<double>> dihedral_float(int h) {
    if (h < 1) throw std::invalid_argument("dihedral_float: h must be >= 1");
    const double a = 2.0 * 3.14159265358979323846 / h;
    std::vector<double> rot = {std::cos(a), -std::sin(a), std::sin(a), std::cos(a)};
    std::vector<double> refl = {1.0, 0.0, 0.0, -1.0};
    return {rot, refl};
}

ExceptionalMatrices exceptional_matrices() {
    ExceptionalMatrices ex;

    ex.A = ExactMatrix(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            ex.A.at(i, j) = (i == j) ? QSqrt2(Rat(1) - kHalf) : QSqrt2(-kHalf);

    ex.B = ExactMatrix(4);
    for (int blk = 0; blk < 2; ++blk) {
        const int o = 2 * blk;
        ex.B.at(o, o) = kInvSqrt2;
        ex.B.at(o, o + 1) = kInvSqrt2;
        ex.B.at(o + 1, o) = kInvSqrt2;
        ex.B.at(o + 1, o + 1) = -kInvSqrt2;
    }

    const QSqrt2 h(kHalf);
    const QSqrt2 s = kInvSqrt2;
    const QSqrt2 z;
    auto fill = [](ExactMatrix& m, std::initializer_list<QSqrt2> vals) {
        int k = 0;
        for (const auto& v : vals) {
            m.at(k / 4, k % 4) = v;
            ++k;
        }
    };
    ex.L1 = ExactMatrix(4);
    fill(ex.L1, {h, h, s, z,  //
                 h, -h, z, s,  //
                 s, z, -h, -h,  //
                 z, s, -h, h});
    ex.L2 = ExactMatrix(4);
    fill(ex.L2, {h, h, s, z,  //
                 h, h, -s, z,  //
                 s, -s, z, z,  //
                 z, z, z, QSqrt2(1)});

    ex.S_ex5 = ExactMatrix(4);
    const int signs[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ex.S_ex5.at(i, j) = QSqrt2(signs[i][j] > 0 ? kHalf : -kHalf);

    return ex;
}

std::optional<ExactMatrix> t_ep_exact(const ExtendedP& p) {
    QSqrt2 c;
    if (p.is_infinite())
        c = QSqrt2(1);
    else if (p.value() == 1.0)
        c = QSqrt2(kHalf);
    else if (p.value() == 2.0)
        c = kInvSqrt2;
    else
        return std::nullopt;
    ExactMatrix t(2);
    t.at(0, 0) = c;
    t.at(0, 1) = c;
    t.at(1, 0) = c;
    t.at(1, 1) = -c;
    return t;
}

std::vector<double> t_ep(double p) {
    const double c = std::isinf(p) ? 1.0 : std::pow(2.0, -1.0 / p);
    return {c, c, c, -c};
}

GeneratedGroup closure(std::vector<ExactMatrix> gens, std::size_t cap, std::size_t product_cap) {
    if (gens.empty()) throw std::invalid_argument("closure: no generators");
    const int dim = gens.front().dim();
    for (const auto& g : gens) {
        if (g.dim() != dim) throw std::invalid_argument("closure: mixed dimensions");
        if (!g.is_orthogonal())
            throw std::invalid_argument("closure: generator is not exactly orthogonal");
    }

    GeneratedGroup group;
    group.generators = gens;
    group.cap = cap;

    std::unordered_set<ExactMatrix, ExactMatrixHash> seen;
    std::vector<ExactMatrix> frontier;
    seen.insert(ExactMatrix::identity(dim));
    frontier.push_back(ExactMatrix::identity(dim));

    std::size_t products = 0;
    while (!frontier.empty()) {
        std::vector<ExactMatrix> next;
        for (const auto& e : frontier) {
            for (const auto& g : gens) {
                if (++products > product_cap) return group;  // closed stays false
                ExactMatrix prod = e * g;
                if (seen.insert(prod).second) {
                    if (seen.size() > cap) return group;
                    next.push_back(std::move(prod));
                }
            }
        }
        frontier = std::move(next);
    }

    group.elements.assign(seen.begin(), seen.end());
    std::sort(group.elements.begin(), group.elements.end());
    group.closed = true;
    return group;
}

std::vector<std::vector<QSqrt2>> a2n_signed_set(int n) {
    std::vector<std::vector<QSqrt2>> set;
    for (int j = 0; j < n; ++j)
        for (int inner : {1, -1})
            for (int outer : {1, -1}) {
                std::vector<QSqrt2> v(2 * n);
                v[2 * j] = QSqrt2(outer);
                v[2 * j + 1] = QSqrt2(outer * inner);
                set.push_back(std::move(v));
            }
    return set;
}

bool permutes_signed_set(const ExactMatrix& m, const std::vector<std::vector<QSqrt2>>& set) {
    for (const auto& v : set) {
        const std::vector<QSqrt2> image = m.apply(v);
        if (std::find(set.begin(), set.end(), image) == set.end()) return false;
    }
    return true;
}

GeneratedGroup a2n_group(int n, const Config& cfg) {
    if (n < 1) throw std::invalid_argument("a2n_group: n must be >= 1");
    const int dim = 2 * n;

    ExactMatrix w(dim);
    for (int b = 0; b < n; ++b) {
        const int o = 2 * b;
        w.at(o, o) = kInvSqrt2;
        w.at(o, o + 1) = kInvSqrt2;
        w.at(o + 1, o) = kInvSqrt2;
        w.at(o + 1, o + 1) = -kInvSqrt2;
    }
    const ExactMatrix winv = w.transpose();  // w is symmetric orthogonal; winv = w

    std::vector<ExactMatrix> gens;
    const auto set = a2n_signed_set(n);
    for (const auto& g : gp_generators(dim)) {
        ExactMatrix conj = w * g * winv;
        if (!permutes_signed_set(conj, set))
            throw std::logic_error("a2n_group: generator does not permute the signed set");
        gens.push_back(std::move(conj));
    }
    return closure(std::move(gens), cfg.cap, cfg.product_cap);
}

GroupRelations group_relations(const GeneratedGroup& g, const GeneratedGroup& h) {
    if (!g.closed || !h.closed) throw std::invalid_argument("group_relations: groups must be closed");
    if (g.elements.empty() || h.elements.empty() ||
        g.elements.front().dim() != h.elements.front().dim())
        throw std::invalid_argument("group_relations: dimension mismatch");

    GroupRelations rel;
    rel.subgroup = std::includes(h.elements.begin(), h.elements.end(), g.elements.begin(),
                                 g.elements.end());
    rel.equal = rel.subgroup && g.order() == h.order();
    if (rel.subgroup) {
        rel.normal = true;
        // conjugating by H's generators suffices: conjugation by products
        // follows, and G is closed
        for (const auto& c : h.generators) {
            const ExactMatrix cinv = c.transpose();  // orthogonal
            for (const auto& a : g.elements) {
                if (!g.contains(c * a * cinv)) {
                    rel.normal = false;
                    break;
                }
            }
            if (!rel.normal) break;
        }
    }
    return rel;
}

FloatGroup closure_float(int dim, const std::vector<std::vector<double>>& gens, std::size_t cap) {
    FloatGroup group;
    group.dim = dim;
    const std::size_t nn = static_cast<std::size_t>(dim) * dim;
    for (const auto& g : gens)
        if (g.size() != nn) throw std::invalid_argument("closure_float: bad generator size");

    // dedup on a 1e-9 quantization grid
    auto key = [dim, nn](const std::vector<double>& m) {
        std::vector<std::int64_t> k(nn);
        for (std::size_t i = 0; i < nn; ++i) k[i] = std::llround(m[i] * 1e9);
        return k;
    };
    auto mul = [dim, nn](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out(nn, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int k2 = 0; k2 < dim; ++k2) {
                const double v = a[static_cast<std::size_t>(i) * dim + k2];
                if (v == 0.0) continue;
                for (int j = 0; j < dim; ++j)
                    out[static_cast<std::size_t>(i) * dim + j] +=
                        v * b[static_cast<std::size_t>(k2) * dim + j];
            }
        return out;
    };

    std::set<std::vector<std::int64_t>> seen;
    std::vector<double> id(nn, 0.0);
    for (int i = 0; i < dim; ++i) id[static_cast<std::size_t>(i) * dim + i] = 1.0;
    seen.insert(key(id));
    group.elements.push_back(id);
    std::vector<std::vector<double>> frontier{id};

    while (!frontier.empty()) {
        std::vector<std::vector<double>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<double> prod = mul(e, g);
                if (seen.insert(key(prod)).second) {
                    group.elements.push_back(prod);
                    if (group.elements.size() > cap) return group;  // not closed
                    next.push_back(std::move(prod));
                }
            }
        frontier = std::move(next);
    }
    group.closed = true;
    return group;
}

nlohmann::json to_json(const GeneratedGroup& g, bool include_elements) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& m : g.generators) gens.push_back(to_json(m));
    nlohmann::json j{{"order", g.order()}, {"closed", g.closed}, {"generators", std::move(gens)}};
    if (include_elements) {
        nlohmann::json els = nlohmann::json::array();
        for (const auto& m : g.elements) els.push_back(to_json(m));
        j["elements"] = std::move(els);
    }
    return j;
}

}  // namespace normfiber
