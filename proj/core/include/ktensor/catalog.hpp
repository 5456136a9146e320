#pragma once

// Manifolds selected by string key:
//   euclidean:N  sphere:N  sphere-stereo:N  hyperbolic:N  torus:N
//   product:A,B  conformal:bump:A

#include <string>
#include <vector>

#include "ktensor/field.hpp"
#include "ktensor/manifold.hpp"

namespace ktensor {

ManifoldPtr make_manifold(const std::string& key);

ManifoldPtr euclidean(int n);
ManifoldPtr sphere(int n, double radius = 1.0);
ManifoldPtr sphere_stereographic(int n, double radius = 1.0);
ManifoldPtr hyperbolic(int n);
ManifoldPtr flat_torus(int n);
ManifoldPtr product(const ManifoldPtr& a, const ManifoldPtr& b);
// e^{2f} g with f(x) = 0.3 (1 - |x|^2/4)^2 on the chart form of base.
ManifoldPtr conformal_bump(const ManifoldPtr& base);

// Coordinates for an embedded manifold (stereographic per sphere factor);
// charts are returned unchanged.
ManifoldPtr chart_form(const ManifoldPtr& m);

// Express a field on an embedded manifold in the coordinates of its chart form.
TensorField pull_back_to_chart(const TensorField& k, const ManifoldPtr& chart);
// Same contravariant tensor on a conformally rescaled chart: covariant
// components pick up e^{2pf}. Embedded fields are pulled back first.
TensorField conformal_transport(const TensorField& k, const ManifoldPtr& conformal);

// Parameters of a parsed key, for validation messages and CLI listings.
std::vector<std::string> catalog_key_forms();

}  // namespace ktensor
