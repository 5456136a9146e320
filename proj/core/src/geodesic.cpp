#include "ktensor/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace ktensor {

GeodesicStart random_start(const Manifold& m, Rng& rng) {
  GeodesicStart s;
  s.x = m.sample(rng);
  std::vector<double> vf = random_vector(m.dim(), rng);
  const double len = norm2(vf);
  for (auto& c : vf) c /= len;
  s.v = m.from_frame(s.x, vf);
  return s;
}

double first_integral(const TensorField& k, const std::vector<double>& x, const std::vector<double>& v) {
  const Manifold& m = *k.base();
  return poly_eval(k.eval(x), m.to_frame(x, v));
}

namespace {

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

std::vector<double> plus(std::vector<double> y, double a, const std::vector<double>& x) {
  axpy(y, a, x);
  return y;
}

}  // namespace

DriftResult geodesic_drift(const TensorField& k, const GeodesicStart& start, int steps, double dt) {
  const Manifold& m = *k.base();
  if (!m.contains(start.x)) throw DomainError("geodesic_drift: start point outside the domain");
  DriftResult out;
  std::vector<double> x = start.x;
  std::vector<double> v = start.v;
  out.f0 = first_integral(k, x, v);
  const double scale = std::max(1.0, std::fabs(out.f0));
  auto acc = [&](const std::vector<double>& p, const std::vector<double>& q) { return m.geodesic_acceleration(p, q); };
  for (int s = 0; s < steps; ++s) {
    const auto k1x = v;
    const auto k1v = acc(x, v);
    const auto x2 = plus(x, dt / 2, k1x), v2 = plus(v, dt / 2, k1v);
    const auto k2x = v2;
    const auto k2v = acc(x2, v2);
    const auto x3 = plus(x, dt / 2, k2x), v3 = plus(v, dt / 2, k2v);
    const auto k3x = v3;
    const auto k3v = acc(x3, v3);
    const auto x4 = plus(x, dt, k3x), v4 = plus(v, dt, k3v);
    const auto k4x = v4;
    const auto k4v = acc(x4, v4);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += dt / 6 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
      v[i] += dt / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
    }
    if (!m.contains(x)) {
      out.left_domain = true;
      break;
    }
    out.steps_done = s + 1;
    out.drift = std::max(out.drift, std::fabs(first_integral(k, x, v) - out.f0) / scale);
  }
  return out;
}

}  // namespace ktensor
