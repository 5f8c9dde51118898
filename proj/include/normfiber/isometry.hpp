#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "normfiber/config.hpp"
#include "normfiber/decompose.hpp"
#include "normfiber/groups.hpp"
#include "normfiber/norm.hpp"
#include "normfiber/rng.hpp"

namespace normfiber {

/// Canonical factor-permuting structure: factor j receives factor pi[j]
/// through the block map M[S_j, S_{pi[j]}]; all cross-blocks vanish.
struct Form9 {
    std::vector<int> pi;                        // 1-based source factor per target factor
    std::vector<std::pair<int, int>> blocks;    // (source factor, target factor)
};

struct IsometryReport {
    bool is_isometry = false;
    double max_residual = 0.0;
    double orthogonality_defect = 0.0;  // ||M^t M - I||_max, diagnostic only
    std::optional<Form9> form9;
    bool preserves_disjointness = false;
    std::optional<std::vector<double>> witness;  // |N(Mw) - N(w)| > tol
    std::optional<std::vector<std::complex<double>>> witness_complex;
    /// True when the verdict is algebraically exact (exact signed-permutation
    /// style matrices on compositional trees); otherwise sampling evidence.
    bool exact = false;
    std::string notes;
};

/// Residual battery: standard basis vectors, all ±1 sign patterns (up to
/// dim 10), seeded sphere samples plus cfg.samples mixture vectors. A
/// partition, when given, adds the form-9 classification to the report.
IsometryReport is_isometry(const Norm& n, const Eigen::MatrixXd& m, const Config& cfg,
                           const std::vector<IndexSet>* partition = nullptr);

/// Complex-mode variant; the norm sees moduli only.
IsometryReport is_isometry_complex(const Norm& n, const Eigen::MatrixXcd& m, const Config& cfg,
                                   const std::vector<IndexSet>* partition = nullptr);

std::optional<Form9> classify_form9(const Eigen::MatrixXd& m, const std::vector<IndexSet>& partition,
                                    double tol);
std::optional<Form9> classify_form9_complex(const Eigen::MatrixXcd& m,
                                            const std::vector<IndexSet>& partition, double tol);

/// True iff columns have pairwise disjoint supports at tolerance tol.
bool preserves_disjointness(const Eigen::MatrixXd& m, double tol);

/// All permutations pi with N0(z o pi) = N0(z) on a seeded grid; exhaustive
/// over permutations, dim(outer) <= cfg.perm_bound.
std::vector<std::vector<int>> n0_symmetry_group(const Norm& outer, const Config& cfg);

enum class PredictionKind { WreathForm, ExceptionalEp, SignedPermOnly, FullOrthogonal, RecursiveForm };

/// Per-factor isometry group: either a finite exact generator set or a
/// symbolic tag ("O(2)", "U(2)") for the infinite rotation groups.
struct FactorGroupInfo {
    IndexSet support;
    std::string tag;
    std::vector<ExactMatrix> generators;  // factor-local (dim = |support|)
    std::vector<std::vector<double>> elements_float;  // closure, for membership tests
    bool finite = true;
    bool conjectural = false;  // SignedPermOnly caveat
};

struct GroupPrediction {
    PredictionKind kind = PredictionKind::WreathForm;
    std::vector<std::vector<int>> outer_symmetries;  // admissible factor permutations (1-based)
    std::vector<FactorGroupInfo> factor_groups;
    /// Full predicted group on dim(norm) when every part is finite.
    std::optional<GeneratedGroup> finite_group;
    DecompositionTree decomposition;
    std::string notes;
};

GroupPrediction predicted_isometry_group(NormPtr n, const Config& cfg);

/// Membership in the predicted group for a float candidate (exact set lookup
/// at 1e-6 when finite; block-structural test against symbolic parts else).
bool prediction_contains(const GroupPrediction& pred, const Eigen::MatrixXd& m, double tol);

struct Violation {
    std::vector<double> matrix;  // row-major
    std::vector<double> witness;
    double residual = 0.0;
    std::string what;
};

struct VerificationReport {
    bool consistent = false;
    bool sound = true;          // every predicted element is an isometry
    std::size_t sound_checked = 0;
    int scanned = 0;            // signed-permutation candidates examined
    int scan_isometries = 0;    // candidates that passed is_isometry
    int scan_predicted = 0;     // candidates in predictedGroup ∩ GP(dim)
    bool scan_exhaustive = false;
    int probes = 0;             // random orthogonal probes outside the prediction
    int probe_rejections = 0;   // probes correctly failing is_isometry
    std::vector<Violation> violations;
    std::string notes;
};

/// Soundness + desk-scale completeness: exhaustive GP(dim) scan for dim <= 6
/// (sampled for 7..8), random orthogonal probing; any mismatch against the
/// predicted group becomes a counterexample certificate. Completeness over
/// all of O(dim) is NOT desk-decidable; reports always state this.
VerificationReport verify_classification(NormPtr n, const Config& cfg);

struct ComplexProbeReport {
    int block_candidates = 0;
    int block_passed = 0;
    int cross_candidates = 0;
    int cross_rejected = 0;  // rejected with a witness vector
    bool consistent = false;
    std::string notes;
};

/// The complex form-(8) spot check: block-unitary + factor-swap candidates
/// must pass, random cross-block unitaries must fail with witnesses.
ComplexProbeReport complex_form8_probe(NormPtr n, const Config& cfg);

/// Seeded Haar-ish orthogonal / unitary sampling (QR of Gaussian matrices).
Eigen::MatrixXd random_orthogonal(int dim, Rng& rng);
Eigen::MatrixXcd random_unitary(int dim, Rng& rng);

/// The deterministic residual battery behind is_isometry; exposed so scans
/// can share one battery across many candidates.
std::vector<std::vector<double>> residual_battery(int dim, const Config& cfg);

Eigen::MatrixXd to_eigen(const ExactMatrix& m);

nlohmann::json to_json(const IsometryReport& r);
nlohmann::json to_json(const GroupPrediction& p);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const ComplexProbeReport& r);

}  // namespace normfiber
