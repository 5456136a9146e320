#pragma once

// Pointwise residuals of the Killing-type equations. All derivative residuals
// are divided by max(1, |∇K|) at the sample; the trace residual by max(1, |K|).

#include <limits>

#include "ktensor/field.hpp"

namespace ktensor {

struct PointResiduals {
  static constexpr double kNA = std::numeric_limits<double>::quiet_NaN();

  double scale = 1.0;         // max(1, |∇K|)
  double killing = kNA;       // |dK|
  double conformal = kNA;     // |(dK_0)_0|
  double trace = kNA;         // |ΛK| / max(1,|K|)
  double divergence = kNA;    // |δK|
  double special = kNA;       // max_i |∇_i K - e_i.k|, k = -δK/(n+p-1)
  double codazzi = kNA;       // |∇K - π1*(dK)/(p+1)|
  double p1 = kNA, p2 = kNA, p3 = kNA;  // Cartan parts of ∇K_0
  double two_tensor = kNA;    // p = 2: |d tr K - 2 δK|
  double special1 = kNA;      // p = 2: max_i |∇_i K_0 - (e_i.k)_0|
};

// The constant k with ∇_X K = X.k for a special conformal Killing tensor.
SymTensor special_constant(const FrameTensor& dk);

PointResiduals point_residuals(const TensorField& k, const Point<double>& x);
// Same residuals from ∇K and K at one point, in any orthonormal frame.
PointResiduals residuals_from(const FrameTensor& dk, const SymTensor& k);

// Killing residual alone (cheaper): |dK| / max(1, |∇K|).
double killing_residual(const TensorField& k, const Point<double>& x);
// Trace-free conformal Killing residual |(dK_0)_0| / max(1, |∇K|).
double conformal_residual(const TensorField& k, const Point<double>& x);

}  // namespace ktensor
