#pragma once

// String-keyed constructor registry. Every entry carries the verdicts the
// classifier must report and identity checks from the theory. Keys ending in
// ":broken" are negative controls that must fail their targeted check.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ktensor/constructors.hpp"

namespace ktensor {

// Parameter blob: named numbers or number lists ("seed", "k0", "t", ...).
using Params = std::map<std::string, std::vector<double>>;

Params params_from_text(const std::string& text);

struct Expectations {
  std::optional<bool> killing, conformal, trace_free, divergence_free, special, stackel;
};

// An identity evaluated pointwise: residual(x) <= tol is a pass.
struct PointCheck {
  std::string name;
  std::function<double(const Point<double>&)> residual;
  double tol = 0.0;
  bool expect_pass = true;
};

struct Construction {
  std::string key;
  ManifoldPtr base;
  TensorField field;
  double tol = 1e-9;
  bool negative = false;
  std::string target;  // verdict a negative control must fail
  Expectations expect;
  std::vector<PointCheck> checks;
};

std::vector<std::string> registry_keys();  // positives, then negative controls
bool registry_has(const std::string& key);
std::string default_manifold(const std::string& key);

// Empty manifold_key selects the default base. Unknown keys or incompatible
// manifolds raise ConfigError.
Construction construct(const std::string& key, const std::string& manifold_key = "", const Params& params = {});

// Tolerance for positive controls on this base: 1e-9 embedded spheres and
// curved charts, 1e-11 flat charts.
double default_tolerance(const Manifold& m);

}  // namespace ktensor
