#include "ktensor/manifold.hpp"

#include <algorithm>
#include <cmath>

namespace ktensor {

int Domain::size() const {
  int s = 0;
  for (const auto& p : pieces) s = std::max(s, p.offset + p.dim);
  return s;
}

bool Domain::contains(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != size()) return false;
  for (double c : x)
    if (!std::isfinite(c)) return false;
  for (const auto& p : pieces) {
    double r2 = 0.0;
    for (int i = 0; i < p.dim; ++i) r2 += x[p.offset + i] * x[p.offset + i];
    switch (p.kind) {
      case DomainPiece::Kind::Box:
        break;
      case DomainPiece::Kind::Ball:
        if (!(std::sqrt(r2) < p.radius)) return false;
        break;
      case DomainPiece::Kind::Sphere:
        if (std::fabs(std::sqrt(r2) - p.radius) > 1e-6 * p.radius) return false;
        break;
    }
  }
  return true;
}

std::vector<double> Domain::sample(Rng& rng) const {
  std::vector<double> x(size(), 0.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const auto& p : pieces) {
    if (p.kind == DomainPiece::Kind::Box) {
      for (int i = 0; i < p.dim; ++i) x[p.offset + i] = p.lo + (p.hi - p.lo) * unif(rng);
      continue;
    }
    std::vector<double> dir(p.dim);
    double len = 0.0;
    while (len < 1e-6) {
      for (auto& d : dir) d = normal(rng);
      len = norm2(dir);
    }
    double r = p.radius;
    if (p.kind == DomainPiece::Kind::Ball) r = p.sample_radius * std::pow(unif(rng), 1.0 / p.dim);
    for (int i = 0; i < p.dim; ++i) x[p.offset + i] = r * dir[i] / len;
  }
  return x;
}

Domain Domain::shifted(int offset) const {
  Domain d = *this;
  for (auto& p : d.pieces) p.offset += offset;
  return d;
}

RiemannAtPoint RiemannAtPoint::from_components(int n, std::vector<double> comps) {
  RiemannAtPoint r;
  r.n = n;
  r.R = std::move(comps);
  r.ricci = Matrix<double>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r(i, k, k, j);
      r.ricci(i, j) = s;
    }
  r.scal = 0.0;
  for (int i = 0; i < n; ++i) r.scal += r.ricci(i, i);
  return r;
}

double RiemannAtPoint::symmetry_residual() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = (*this)(i, j, k, l);
          m = std::max({m, std::fabs(v + (*this)(j, i, k, l)), std::fabs(v + (*this)(i, j, l, k)),
                        std::fabs(v - (*this)(k, l, i, j))});
        }
  return m;
}

double RiemannAtPoint::bianchi_residual() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          m = std::max(m, std::fabs((*this)(i, j, k, l) + (*this)(j, k, i, l) + (*this)(k, i, j, l)));
  return m;
}

double RiemannAtPoint::max_abs() const {
  double m = 0.0;
  for (double v : R) m = std::max(m, std::fabs(v));
  return m;
}

namespace {

// out[ijkl] = sum E(a,i) E(b,j) E(c,k) E(d,l) in[abcd]
std::vector<double> four_tensor_to_frame(const std::vector<double>& in, const Matrix<double>& e) {
  const int m = e.rows();
  const int n = e.cols();
  std::vector<double> cur = in;
  std::size_t pre = 1;
  std::size_t post = static_cast<std::size_t>(m) * m * m;
  for (int mode = 0; mode < 4; ++mode) {
    std::vector<double> next(pre * n * post, 0.0);
    for (std::size_t a0 = 0; a0 < pre; ++a0)
      for (int a = 0; a < m; ++a)
        for (int j = 0; j < n; ++j) {
          const double w = e(a, j);
          if (w == 0.0) continue;
          for (std::size_t b = 0; b < post; ++b) next[(a0 * n + j) * post + b] += w * cur[(a0 * m + a) * post + b];
        }
    cur.swap(next);
    pre *= n;
    post = mode < 3 ? post / m : 1;
  }
  return cur;
}

}  // namespace

RiemannAtPoint Chart::riemann(const Point<double>& x) const {
  return RiemannAtPoint::from_components(dim_, four_tensor_to_frame(riemann_coords(x), frame(x)));
}

std::vector<double> Chart::geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const {
  auto gam = christoffel(x);
  std::vector<double> a(dim_, 0.0);
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) a[k] -= gam[k](i, j) * v[i] * v[j];
  return a;
}

EmbeddedSpheres::EmbeddedSpheres(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  int rep = 0, fr = 0;
  for (auto& b : blocks_) {
    if (b.dim < 1) throw ShapeError("sphere dimension must be positive");
    if (!(b.radius > 0.0)) throw DomainError("sphere radius must be positive");
    b.rep_offset = rep;
    b.frame_offset = fr;
    DomainPiece p;
    p.kind = DomainPiece::Kind::Sphere;
    p.offset = rep;
    p.dim = b.dim + 1;
    p.radius = b.radius;
    domain_.pieces.push_back(p);
    rep += b.dim + 1;
    fr += b.dim;
  }
  dim_ = fr;
  rep_dim_ = rep;
}

RiemannAtPoint EmbeddedSpheres::riemann(const Point<double>&) const {
  const int n = dim_;
  std::vector<double> r(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (const auto& b : blocks_) {
    const double c = 1.0 / (b.radius * b.radius);
    const int o = b.frame_offset;
    for (int i = o; i < o + b.dim; ++i)
      for (int j = o; j < o + b.dim; ++j)
        for (int k = o; k < o + b.dim; ++k)
          for (int l = o; l < o + b.dim; ++l) {
            // R(X,Y,Z,V) = g(X,V) g(Y,Z) - g(X,Z) g(Y,V), scaled by 1/r^2
            const double v = (i == l && j == k ? 1.0 : 0.0) - (i == k && j == l ? 1.0 : 0.0);
            r[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = c * v;
          }
  }
  return RiemannAtPoint::from_components(n, std::move(r));
}

std::vector<double> EmbeddedSpheres::geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const {
  std::vector<double> a(rep_dim_, 0.0);
  for (const auto& b : blocks_) {
    double v2 = 0.0, x2 = 0.0;
    for (int i = 0; i <= b.dim; ++i) {
      v2 += v[b.rep_offset + i] * v[b.rep_offset + i];
      x2 += x[b.rep_offset + i] * x[b.rep_offset + i];
    }
    for (int i = 0; i <= b.dim; ++i) a[b.rep_offset + i] = -v2 / x2 * x[b.rep_offset + i];
  }
  return a;
}

double EmbeddedSpheres::scalar_curvature() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.dim * (b.dim - 1) / (b.radius * b.radius);
  return s;
}

RiemannAtPoint Manifold::riemann(const Point<double>& x) const {
  return std::visit([&](const auto& b) { return b.riemann(x); }, backend_);
}

std::vector<double> Manifold::geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const {
  return std::visit([&](const auto& b) { return b.geodesic_acceleration(x, v); }, backend_);
}

std::vector<double> Manifold::to_frame(const std::vector<double>& x, const std::vector<double>& v) const {
  return mat_vec(coframe(x), v);
}

std::vector<double> Manifold::from_frame(const std::vector<double>& x, const std::vector<double>& vf) const {
  return mat_vec(frame(x), vf);
}

double Manifold::frame_gram_residual(const std::vector<double>& x) const {
  Matrix<double> e = frame(x);
  Matrix<double> gram = is_embedded() ? e.transpose() * e : e.transpose() * chart().metric(x) * e;
  return max_abs(gram - Matrix<double>::identity(dim()));
}

}  // namespace ktensor
