#pragma once

// Geodesic flow (classical RK4, fixed step) and the drift of the first
// integral F(γ, γ') = K(γ')(γ') along it.

#include <vector>

#include "ktensor/field.hpp"
#include "ktensor/random.hpp"

namespace ktensor {

struct GeodesicStart {
  std::vector<double> x;  // representation coordinates
  std::vector<double> v;
};

struct DriftResult {
  double drift = 0.0;  // max_t |F(t) - F(0)| / max(1, |F(0)|)
  double f0 = 0.0;
  bool left_domain = false;
  int steps_done = 0;
};

// Random point of the domain with a unit-speed velocity.
GeodesicStart random_start(const Manifold& m, Rng& rng);

double first_integral(const TensorField& k, const std::vector<double>& x, const std::vector<double>& v);

DriftResult geodesic_drift(const TensorField& k, const GeodesicStart& start, int steps, double dt);

}  // namespace ktensor
