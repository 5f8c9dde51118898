#include "normfiber/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normfiber/sampling.hpp"

namespace normfiber {

Eigen::MatrixXd to_eigen(const ExactMatrix& m) {
    Eigen::MatrixXd out(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(i, j) = m.at(i, j).to_double();
    return out;
}

Eigen::MatrixXd random_orthogonal(int dim, Rng& rng) {
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i)
        if (r(i, i) < 0) q.col(i) *= -1.0;
    return q;
}

Eigen::MatrixXcd random_unitary(int dim, Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        const std::complex<double> d = r(i, i);
        if (std::abs(d) > 1e-12) q.col(i) *= d / std::abs(d);
    }
    return q;
}

bool preserves_disjointness(const Eigen::MatrixXd& m, double tol) {
    const int d = static_cast<int>(m.cols());
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int r = 0; r < d; ++r)
                if (std::fabs(m(r, i)) > tol && std::fabs(m(r, j)) > tol) return false;
    return true;
}

namespace {

// Shared block-support analysis; works for real and complex matrices.
template <typename Mat>
std::optional<Form9> classify_blocks(const Mat& m, const std::vector<IndexSet>& partition,
                                     double tol) {
    const int nf = static_cast<int>(partition.size());
    if (nf == 0) return std::nullopt;

    // block_hit(a, b): some entry of M[S_a, S_b] exceeds tol
    std::vector<int> target_of_source(nf, -1);
    for (int b = 0; b < nf; ++b) {
        int target = -1;
        for (int a = 0; a < nf; ++a) {
            bool hit = false;
            for (int r : partition[a]) {
                for (int c : partition[b]) {
                    if (std::abs(m(r - 1, c - 1)) > tol) {
                        hit = true;
                        break;
                    }
                }
                if (hit) break;
            }
            if (hit) {
                if (target != -1) return std::nullopt;  // source factor splits
                target = a;
            }
        }
        if (target == -1) return std::nullopt;  // zero block column
        if (partition[target].size() != partition[b].size()) return std::nullopt;
        target_of_source[b] = target;
    }

    // bijectivity
    std::vector<int> seen(nf, 0);
    for (int b = 0; b < nf; ++b) ++seen[target_of_source[b]];
    for (int a = 0; a < nf; ++a)
        if (seen[a] != 1) return std::nullopt;

    Form9 f;
    f.pi.assign(nf, 0);
    for (int b = 0; b < nf; ++b) {
        const int a = target_of_source[b];
        f.pi[a] = b + 1;  // target a receives source b
        f.blocks.emplace_back(b + 1, a + 1);
    }
    std::sort(f.blocks.begin(), f.blocks.end());
    return f;
}

bool is_signed_permutation(const Eigen::MatrixXd& m) {
    const int d = static_cast<int>(m.rows());
    for (int c = 0; c < d; ++c) {
        int nonzero = 0;
        for (int r = 0; r < d; ++r) {
            const double v = m(r, c);
            if (v == 0.0) continue;
            if (v != 1.0 && v != -1.0) return false;
            ++nonzero;
        }
        if (nonzero != 1) return false;
    }
    return true;
}

}  // namespace

std::vector<std::vector<double>> residual_battery(int d, const Config& cfg) {
    std::vector<std::vector<double>> bat;
    // standard basis
    for (int i = 0; i < d; ++i) {
        std::vector<double> e(d, 0.0);
        e[i] = 1.0;
        bat.push_back(std::move(e));
    }
    // all ±1 sign patterns up to dim 10, sampled beyond
    Rng rng(cfg.seed ^ 0xba77e21ULL);
    if (d <= 10) {
        for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
            std::vector<double> v(d);
            for (int i = 0; i < d; ++i) v[i] = (mask & (1ULL << i)) ? -1.0 : 1.0;
            bat.push_back(std::move(v));
        }
    } else {
        for (int t = 0; t < 1024; ++t) {
            std::vector<double> v(d);
            for (int i = 0; i < d; ++i) v[i] = rng.sign();
            bat.push_back(std::move(v));
        }
    }
    // seeded sphere samples
    const int sphere = std::max(8, cfg.samples / 2);
    for (int t = 0; t < sphere; ++t) {
        std::vector<double> v(d);
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            v[i] = rng.gaussian();
            norm2 += v[i] * v[i];
        }
        const double inv = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;
        for (double& x : v) x *= inv;
        bat.push_back(std::move(v));
    }
    // mixture vectors
    for (int t = 0; t < cfg.samples; ++t) bat.push_back(sample_mixture(rng, d));
    return bat;
}

std::optional<Form9> classify_form9(const Eigen::MatrixXd& m, const std::vector<IndexSet>& partition,
                                    double tol) {
    return classify_blocks(m, partition, tol);
}

std::optional<Form9> classify_form9_complex(const Eigen::MatrixXcd& m,
                                            const std::vector<IndexSet>& partition, double tol) {
    return classify_blocks(m, partition, tol);
}

IsometryReport is_isometry(const Norm& n, const Eigen::MatrixXd& m, const Config& cfg,
                           const std::vector<IndexSet>* partition) {
    const int d = n.dim();
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("is_isometry: matrix dimension mismatch");

    IsometryReport rep;
    rep.orthogonality_defect =
        (m.transpose() * m - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    rep.preserves_disjointness = preserves_disjointness(m, 1e-9);
    if (partition) rep.form9 = classify_form9(m, *partition, 1e-9);

    const std::vector<std::vector<double>> battery = residual_battery(d, cfg);
    Eigen::VectorXd x(d), mx(d);
    rep.is_isometry = true;
    for (const auto& v : battery) {
        for (int i = 0; i < d; ++i) x(i) = v[i];
        mx = m * x;
        std::vector<double> image(mx.data(), mx.data() + d);
        const double ref = n.eval(v);
        const double got = n.eval(image);
        const double resid = std::fabs(got - ref) / std::max(1.0, ref);
        rep.max_residual = std::max(rep.max_residual, resid);
        if (resid > cfg.tol) {
            rep.is_isometry = false;
            rep.witness = v;
            return rep;
        }
    }
    if (is_signed_permutation(m) && dynamic_cast<const NormExpr*>(&n) != nullptr) {
        rep.exact = true;
        rep.notes = "signed permutation on a compositional tree; identity is algebraically exact";
    } else {
        rep.notes = "sampling evidence";
    }
    return rep;
}

IsometryReport is_isometry_complex(const Norm& n, const Eigen::MatrixXcd& m, const Config& cfg,
                                   const std::vector<IndexSet>* partition) {
    const int d = n.dim();
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("is_isometry_complex: matrix dimension mismatch");

    IsometryReport rep;
    rep.orthogonality_defect =
        (m.adjoint() * m - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (partition) rep.form9 = classify_form9_complex(m, *partition, 1e-9);
    rep.preserves_disjointness = true;
    for (int i = 0; i < d && rep.preserves_disjointness; ++i)
        for (int j = i + 1; j < d && rep.preserves_disjointness; ++j)
            for (int r = 0; r < d; ++r)
                if (std::abs(m(r, i)) > 1e-9 && std::abs(m(r, j)) > 1e-9) {
                    rep.preserves_disjointness = false;
                    break;
                }

    Rng rng(cfg.seed ^ 0xc03b1e0ULL);
    std::vector<std::vector<std::complex<double>>> battery;
    for (int i = 0; i < d; ++i) {
        std::vector<std::complex<double>> e(d, {0.0, 0.0});
        e[i] = {1.0, 0.0};
        battery.push_back(std::move(e));
    }
    if (d <= 10) {
        for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
            std::vector<std::complex<double>> v(d);
            for (int i = 0; i < d; ++i) v[i] = {(mask & (1ULL << i)) ? -1.0 : 1.0, 0.0};
            battery.push_back(std::move(v));
        }
    }
    for (int t = 0; t < cfg.samples; ++t) battery.push_back(sample_complex(rng, d));

    Eigen::VectorXcd x(d), mx(d);
    rep.is_isometry = true;
    for (const auto& v : battery) {
        for (int i = 0; i < d; ++i) x(i) = v[i];
        mx = m * x;
        std::vector<std::complex<double>> image(mx.data(), mx.data() + d);
        const double ref = n.eval_complex(v);
        const double got = n.eval_complex(image);
        const double resid = std::fabs(got - ref) / std::max(1.0, ref);
        rep.max_residual = std::max(rep.max_residual, resid);
        if (resid > cfg.tol) {
            rep.is_isometry = false;
            rep.witness_complex = v;
            return rep;
        }
    }
    rep.notes = "sampling evidence";
    return rep;
}

std::vector<std::vector<int>> n0_symmetry_group(const Norm& outer, const Config& cfg) {
    const int m = outer.dim();
    if (m > cfg.perm_bound)
        throw std::invalid_argument("n0_symmetry_group: dimension exceeds the permutation bound");

    // verification grid: basis, sign patterns, mixture samples
    std::vector<std::vector<double>> grid;
    for (int i = 0; i < m; ++i) {
        std::vector<double> e(m, 0.0);
        e[i] = 1.0;
        grid.push_back(std::move(e));
    }
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        std::vector<double> v(m);
        for (int i = 0; i < m; ++i) v[i] = (mask & (1ULL << i)) ? 0.5 : 1.5;
        grid.push_back(std::move(v));
    }
    Rng rng(cfg.seed ^ 0x0a57ULL);
    for (int t = 0; t < 64; ++t) grid.push_back(sample_mixture(rng, m));

    std::vector<std::vector<int>> out;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<double> permuted(m);
    do {
        bool ok = true;
        for (const auto& z : grid) {
            for (int i = 0; i < m; ++i) permuted[i] = z[perm[i] - 1];
            const double a = outer.eval(z);
            const double b = outer.eval(permuted);
            if (std::fabs(a - b) > cfg.tol * std::max(1.0, a)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

nlohmann::json to_json(const IsometryReport& r) {
    nlohmann::json j{{"is_isometry", r.is_isometry},
                     {"max_residual", r.max_residual},
                     {"orthogonality_defect", r.orthogonality_defect},
                     {"preserves_disjointness", r.preserves_disjointness},
                     {"exact", r.exact},
                     {"form9", nullptr}};
    if (r.form9) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& [src, dst] : r.form9->blocks) blocks.push_back({{"source", src}, {"target", dst}});
        j["form9"] = {{"pi", r.form9->pi}, {"blocks", std::move(blocks)}};
    }
    if (r.witness) j["witness"] = *r.witness;
    if (r.witness_complex) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& z : *r.witness_complex) w.push_back({z.real(), z.imag()});
        j["witness"] = std::move(w);
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

}  // namespace normfiber
