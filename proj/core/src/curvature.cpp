#include "ktensor/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace ktensor {

SymTensor curvature_act(const RiemannAtPoint& r, int i, int j, const SymTensor& k) {
  const int n = r.n;
  Matrix<double> m(n, n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) m(b, c) = r(i, j, c, b);
  return derivation(m, k);
}

SymTensor qR_act(const RiemannAtPoint& r, const SymTensor& k) {
  if (k.dim() != r.n) throw ShapeError("qR_act: dimension mismatch");
  SymTensor out(k.dim(), k.degree());
  if (k.degree() == 0) return out;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) {
      if (i == j) continue;
      out += mult_basis(j, contract_basis(i, curvature_act(r, i, j, k)));
    }
  return out;
}

SymTensor r_ring(const RiemannAtPoint& r, const SymTensor& h) {
  if (h.degree() != 2 || h.dim() != r.n) throw ShapeError("r_ring: expects a 2-tensor of the base dimension");
  const int n = r.n;
  SymTensor out(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) s += r(a, i, b, c) * h.at({c, i});
      out.at({a, b}) = s;
    }
  return out;
}

SymTensor ricci_act(const RiemannAtPoint& r, const SymTensor& h) {
  Matrix<double> m = r.ricci;
  m *= -1.0;
  return derivation(m, h);
}

double qrh_residual(const RiemannAtPoint& r, const SymTensor& h) {
  SymTensor res = qR_act(r, h);
  res.axpy(-2.0, r_ring(r, h));
  res += ricci_act(r, h);
  return max_abs(res);
}

SymTensor lichnerowicz_defect(const TensorField& k, const Point<double>& x) {
  const int n = k.base()->dim();
  const std::vector<SymTensor> h = nabla2(k, x);
  const SymTensor kx = k.eval(x);
  const int p = k.degree();
  SymTensor dd(n, p);      // δ d K
  SymTensor rough(n, p);   // ∇*∇ K
  for (int i = 0; i < n; ++i) {
    SymTensor s(n, p + 1);
    for (int j = 0; j < n; ++j) s += mult_basis(j, h[i * n + j]);
    dd -= contract_basis(i, s);
    rough -= h[i * n + i];
  }
  SymTensor out = dd;
  if (p >= 1) {
    for (int i = 0; i < n; ++i) {
      SymTensor s(n, p - 1);
      for (int j = 0; j < n; ++j) s += contract_basis(j, h[i * n + j]);
      out += mult_basis(i, s);  // - d δ K
    }
  }
  out -= rough;
  out += qR_act(k.base()->riemann(x), kx);
  return out;
}

TensorField ricci_field(const ManifoldPtr& base) {
  const Manifold* m = base.get();
  return make_field<1>(base, 2, [m](const auto& x) { return m->ricci_rep(x); }, "Ric", 1);
}

double ricci_killing_residual(const ManifoldPtr& base, const Point<double>& x, const std::vector<double>& xf) {
  const int n = base->dim();
  const FrameTensor dric = nabla(ricci_field(base), x);
  double lhs = 0.0;
  for (int i = 0; i < n; ++i) lhs += xf[i] * poly_eval(dric.slots[i], xf);
  const std::vector<double> v = mat_vec(base->frame(x), xf);
  Point<D1> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = D1(x[i], v[i]);
  const double ds = base->scalar_curvature(y).d;
  return std::fabs(lhs - 2.0 / (n + 2.0) * ds * dot(xf, xf));
}

double metric_derivative_selftest(const Chart& chart, const Point<double>& x) {
  const int n = chart.dim();
  auto g_at = [&](const Point<double>& y) { return chart.metric(y); };
  const Matrix<double> g0 = g_at(x);
  const double scale = std::max(1.0, max_abs(g0));
  auto shifted = [&](int a, double ha, int b, double hb) {
    Point<double> y = x;
    y[a] += ha;
    y[b] += hb;
    return g_at(y);
  };
  double worst = 0.0;
  const double h1 = 1e-5;
  for (int a = 0; a < n; ++a) {
    const Matrix<D1> gd = chart.metric(seed_direction(x, a));
    auto central = [&](double h) {
      Matrix<double> d = shifted(a, h, a, 0.0) - shifted(a, -h, a, 0.0);
      d *= 1.0 / (2.0 * h);
      return d;
    };
    Matrix<double> fd = central(h1 / 2.0);
    fd *= 4.0;
    fd -= central(h1);
    fd *= 1.0 / 3.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::fabs(gd(i, j).d - fd(i, j)) / scale);
  }
  const double h2 = 1e-3;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Point<D2> y(n);
      for (int i = 0; i < n; ++i) y[i] = D2(D1(x[i], i == b ? 1.0 : 0.0), D1(i == a ? 1.0 : 0.0, 0.0));
      const Matrix<D2> gdd = chart.metric(y);
      auto mixed = [&](double h) {
        Matrix<double> d = shifted(a, h, b, h) - shifted(a, h, b, -h) - shifted(a, -h, b, h) + shifted(a, -h, b, -h);
        d *= 1.0 / (4.0 * h * h);
        return d;
      };
      Matrix<double> fd = mixed(h2 / 2.0);
      fd *= 4.0;
      fd -= mixed(h2);
      fd *= 1.0 / 3.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::fabs(gdd(i, j).d.d - fd(i, j)) / scale);
    }
  return worst;
}

}  // namespace ktensor
