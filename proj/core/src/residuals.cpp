#include "ktensor/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ktensor {

SymTensor special_constant(const FrameTensor& dk) {
  const int n = dk.n;
  const int p = dk.p;
  if (p < 1) throw DegreeError("special_constant: degree must be at least 1");
  SymTensor k = divergence(dk);
  k *= -1.0 / (n + p - 1.0);
  return k;
}

PointResiduals point_residuals(const TensorField& field, const Point<double>& x) {
  return residuals_from(nabla(field, x), field.eval(x));
}

PointResiduals residuals_from(const FrameTensor& dk, const SymTensor& kx) {
  PointResiduals r;
  const int n = dk.n;
  const int p = dk.p;
  r.scale = std::max(1.0, norm(dk));
  const double s = r.scale;

  const SymTensor d = symmetrize(dk);
  r.killing = norm(d) / s;
  const FrameTensor dk0 = p >= 2 ? trace_free_slots(dk) : dk;
  r.conformal = norm(trace_free_part(symmetrize(dk0))) / s;

  r.trace = p >= 2 ? norm(trace_Lambda(kx)) / std::max(1.0, norm(kx)) : 0.0;
  if (p == 0) return r;

  const SymTensor div = divergence(dk);
  r.divergence = norm(div) / s;

  const SymTensor kc = special_constant(dk);
  double special = 0.0;
  for (int i = 0; i < n; ++i) special = std::max(special, norm(dk.slots[i] - mult_basis(i, kc)));
  r.special = special / s;

  FrameTensor sym = pi1_adjoint(d);
  sym *= 1.0 / (p + 1.0);
  r.codazzi = norm(dk - sym) / s;

  if (!cartan_degenerate(n, p)) {
    // dk0 is trace-free by construction; rounding can dwarf a tiny trace-free part
    const CartanParts parts = cartan_decompose(dk0, std::numeric_limits<double>::infinity());
    r.p1 = norm(parts.P1) / s;
    r.p2 = norm(parts.P2) / s;
    r.p3 = norm(parts.P3) / s;
  }

  if (p == 2) {
    std::vector<double> dtr(n);
    for (int i = 0; i < n; ++i) dtr[i] = trace_Lambda(dk.slots[i])[0];
    SymTensor res = SymTensor::vector(dtr);
    res.axpy(-2.0, div);
    r.two_tensor = norm(res) / s;

    SymTensor k1 = divergence(dk0);
    k1 *= -static_cast<double>(n) / ((n + 2.0) * (n - 1.0));
    double sp1 = 0.0;
    for (int i = 0; i < n; ++i) sp1 = std::max(sp1, norm(dk0.slots[i] - trace_free_part(mult_basis(i, k1))));
    r.special1 = sp1 / s;
  }
  return r;
}

double killing_residual(const TensorField& k, const Point<double>& x) {
  const FrameTensor dk = nabla(k, x);
  return norm(symmetrize(dk)) / std::max(1.0, norm(dk));
}

double conformal_residual(const TensorField& k, const Point<double>& x) {
  const FrameTensor dk = nabla(k, x);
  const FrameTensor dk0 = k.degree() >= 2 ? trace_free_slots(dk) : dk;
  return norm(trace_free_part(symmetrize(dk0))) / std::max(1.0, norm(dk));
}

}  // namespace ktensor
