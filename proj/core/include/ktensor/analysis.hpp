#pragma once

// Field classification and the batch suites. Every suite is deterministic
// in its seed: task i draws from task_rng(seed, i) and results are merged by
// task index.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktensor/geodesic.hpp"
#include "ktensor/registry.hpp"
#include "ktensor/residuals.hpp"

namespace ktensor {

// ---- reports ----

struct SuiteCase {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;    // for negative controls: the threshold the residual must reach
  bool expect_pass = true;  // false: a negative control, passes when the residual is large
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  // Worst expected-pass residual, each rescaled by tolerance / case tolerance,
  // so pass <=> max_residual <= tolerance whenever the negative controls pass.
  double max_residual = 0.0;
  bool pass = false;
  std::vector<SuiteCase> cases;

  void add(std::string name, double residual, double tol);
  // Negative control: passes iff residual >= factor * tol.
  void add_expected_fail(std::string name, double residual, double tol, double factor = 1e3);
  // Boolean check without a residual (tolerance 0 marks it).
  void add_flag(std::string name, bool ok);
  void append(const SuiteReport& other, const std::string& prefix = "");
  void finalize();
};

// {suite, seed, tolerance, trials, max_residual, cases:[{name, max_residual, tolerance, expect, pass}], pass}
std::string to_json(const SuiteReport& r);
std::string to_text(const SuiteReport& r, bool failures_only = false);

// ---- classification ----

struct ClassifyOptions {
  // Rotate the frame at every sample by a random orthogonal matrix before
  // evaluating residuals; verdicts must not change.
  bool remix_frame = false;
};

struct ClassReport {
  std::string field;
  std::string manifold;
  int degree = 0;
  int samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<PointResiduals> per_sample;
  PointResiduals max;  // componentwise max; NaN where not applicable

  bool killing = false;
  bool conformal = false;
  bool trace_free = false;
  bool divergence_free = false;
  bool special = false;
  bool stackel = false;  // trace-free Killing
  bool codazzi = false;
  std::optional<bool> p1_zero;     // P1(∇K_0) = 0; agrees with `conformal`
  std::optional<bool> two_tensor;  // p = 2: d tr K = 2 δK
  std::optional<bool> special1;    // p = 2: the P1 = P3 = 0 form of the special equation
  bool implications_hold = true;
};

ClassReport classify(const TensorField& k, int samples = 100, double tol = 1e-9, std::uint64_t seed = 42,
                     const ClassifyOptions& opt = {});
std::string to_json(const ClassReport& r);
std::string to_text(const ClassReport& r);
// Suite report with the classification under "classification".
std::string to_json(const SuiteReport& r, const ClassReport& c);

struct PartVerdict {
  int index = 0;   // K = Σ L^i K_i
  int degree = 0;
  double killing = 0.0;
  double divergence = 0.0;
  bool stackel = false;
};

// Standard decomposition of a divergence-free Killing field; each part must be
// Stäckel. Throws VerificationError when the field is not Killing with δK = 0.
std::vector<PartVerdict> divfree_killing_parts(const TensorField& k, int samples = 100, double tol = 1e-9,
                                               std::uint64_t seed = 42);

// ---- suites ----

struct IdentityOptions {
  int n_min = 2, n_max = 5;
  int p_min = 0, p_max = 4;
  int trials = 50;
  int weitzenbock_trials = 100;  // the B identity uses max(trials, this)
  std::uint64_t seed = 42;
  double tol = 1e-10;
  bool inject_sign_flip = false;  // mutation control: flips the P2 sign in B
};

SuiteReport identity_suite(const IdentityOptions& opt);

// Checks on one catalog manifold: frames, curvature symmetries, q(R),
// Lichnerowicz, modified Ricci, sphere eigenvalue, H^n sign and metric drift.
struct GeometryOptions {
  std::vector<std::string> keys = {"euclidean:3", "sphere:2", "sphere:3", "hyperbolic:3"};
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  bool constructors = true;  // add constructor_suite and conformal_invariance_suite
  int trajectories = 0;      // > 0 adds geodesic_suite
  int steps = 10000;
  double dt = 1e-3;
};

SuiteReport catalog_suite(const std::string& key, int samples, double tol, std::uint64_t seed);
SuiteReport geometry_suite(const GeometryOptions& opt);

// Classifier verdicts, registry checks and negative-control margins for one
// construction.
SuiteReport verify_construction(const Construction& c, int samples, double tol, std::uint64_t seed,
                                ClassReport* classification = nullptr);
SuiteReport constructor_suite(int samples, std::uint64_t seed);
// Conformal-Killing verdicts on g and on e^{2f} g for every positive control.
SuiteReport conformal_invariance_suite(int samples, std::uint64_t seed);

struct GeodesicOptions {
  int trajectories = 4;
  int steps = 10000;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  // Order check: drift over the same time span at dt_coarse and dt_coarse/2.
  double dt_coarse = 0.05;
  double span_coarse = 5.0;
};

struct DriftTable {
  std::string field;
  std::string manifold;
  std::vector<DriftResult> runs;
  double max_drift() const;
};

DriftTable drift_table(const TensorField& k, int trajectories, int steps, double dt, std::uint64_t seed);
// Ratio drift(dt) / drift(dt/2) over a fixed span; 0 when both are at roundoff.
double order_ratio(const TensorField& k, const GeodesicOptions& opt, std::uint64_t seed);
SuiteReport geodesic_suite(const GeodesicOptions& opt);
// Suite report with per-trajectory rows under "trajectories".
std::string to_json(const SuiteReport& r, const DriftTable& t);
std::string to_text(const DriftTable& t);

// K(x) = A + x.B + x.x.C in representation coordinates, random coefficients.
TensorField random_polynomial_field(const ManifoldPtr& m, int p, Rng& rng);

}  // namespace ktensor
