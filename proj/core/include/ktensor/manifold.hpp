#pragma once

// Riemannian backends. A Chart holds a metric in coordinates; the
// EmbeddedSpheres backend is a product of round spheres living in the ambient
// Euclidean space. Both produce orthonormal frames, covariant derivatives of
// tensor-valued functions and curvature; Manifold wraps either one.

#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ktensor/dual.hpp"
#include "ktensor/errors.hpp"
#include "ktensor/generic.hpp"
#include "ktensor/linalg.hpp"
#include "ktensor/mixed.hpp"
#include "ktensor/random.hpp"
#include "ktensor/sym_tensor.hpp"
#include "ktensor/symalg.hpp"

namespace ktensor {

struct DomainPiece {
  enum class Kind { Box, Ball, Sphere };
  Kind kind = Kind::Box;
  int offset = 0;
  int dim = 0;               // number of coordinates of this piece
  double lo = -1.0, hi = 1.0;  // Box: sampling and membership interval
  double radius = 1.0;         // Ball: open boundary; Sphere: radius
  double sample_radius = 1.0;  // Ball: sampling radius
};

struct Domain {
  std::vector<DomainPiece> pieces;

  int size() const;
  bool contains(const std::vector<double>& x) const;
  std::vector<double> sample(Rng& rng) const;
  Domain shifted(int offset) const;
};

// Frame components of the curvature tensor, R(i,j,k,l) = g(R_{e_i,e_j} e_k, e_l).
struct RiemannAtPoint {
  int n = 0;
  std::vector<double> R;
  Matrix<double> ricci;
  double scal = 0.0;

  static RiemannAtPoint from_components(int n, std::vector<double> comps);
  double operator()(int i, int j, int k, int l) const { return R[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l]; }
  double symmetry_residual() const;
  double bianchi_residual() const;
  double max_abs() const;
};

class Chart {
 public:
  Chart(int dim, MetricFn metric, Domain domain) : dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)) {}

  int dim() const { return dim_; }
  const Domain& domain() const { return domain_; }
  const MetricFn& metric_fn() const { return metric_; }

  template <class S>
  Matrix<S> metric(const Point<S>& x) const {
    return metric_.get<S>()(x);
  }

  // Γ^k_{ij} as gam[k](i,j).
  template <class S>
  std::vector<Matrix<S>> christoffel(const Point<S>& x) const {
    const int n = dim_;
    std::vector<Matrix<S>> dg;
    dg.reserve(n);
    Matrix<S> g;
    for (int a = 0; a < n; ++a) {
      Matrix<Dual<S>> gd = metric(seed_direction(x, a));
      Matrix<S> da(n, n);
      if (a == 0) g = Matrix<S>(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          da(i, j) = gd(i, j).d;
          if (a == 0) g(i, j) = gd(i, j).v;
        }
      dg.push_back(std::move(da));
    }
    Matrix<S> ginv = spd_inverse(g);
    std::vector<Matrix<S>> gam(n, Matrix<S>(n, n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          // first kind, index l lowered
          const S c = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
          for (int k = 0; k < n; ++k) {
            gam[k](i, j) += ginv(k, l) * c;
          }
        }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) gam[k](i, j) = gam[k](j, i);
    return gam;
  }

  // Columns are the orthonormal frame vectors in coordinates: E = L^{-T}.
  template <class S>
  Matrix<S> frame(const Point<S>& x) const {
    return lower_inverse(cholesky(metric(x))).transpose();
  }
  // E^{-1} = L^T: coordinate vector -> frame components.
  template <class S>
  Matrix<S> coframe(const Point<S>& x) const {
    return cholesky(metric(x)).transpose();
  }

  // Covariant derivative of a covariant-coordinate mixed tensor function f.
  // f must accept Point<Dual<S>>. The new leading slot is the derivative index.
  template <class S, class F>
  MixedT<S> covariant_derivative(const F& f, const Point<S>& x) const {
    const int n = dim_;
    auto gam = christoffel(x);
    MixedT<S> val;
    MixedT<S> out;
    for (int a = 0; a < n; ++a) {
      MixedT<Dual<S>> fy = f(seed_direction(x, a));
      if (a == 0) {
        val = primal(fy);
        if (val.m != n) throw ShapeError("covariant_derivative: representation dimension mismatch");
        out.m = n;
        out.lead = val.lead + 1;
        out.parts.resize(n * val.parts.size());
      }
      const std::size_t block = val.parts.size();
      Matrix<S> ma(n, n);
      for (int j = 0; j < n; ++j)
        for (int c = 0; c < n; ++c) ma(j, c) = gam[c](a, j);
      for (std::size_t idx = 0; idx < block; ++idx) {
        BasicSymTensor<S> t = tangent(fy.parts[idx]);
        t -= derivation(ma, val.parts[idx]);
        std::size_t stride = block;
        for (int s = 0; s < val.lead; ++s) {
          stride /= n;
          const int digit = static_cast<int>((idx / stride) % n);
          const std::size_t base = idx - static_cast<std::size_t>(digit) * stride;
          for (int c = 0; c < n; ++c) t.axpy(-gam[c](a, digit), val.parts[base + c * stride]);
        }
        out.parts[a * block + idx] = std::move(t);
      }
    }
    return out;
  }

  // Lowered coordinate curvature R_{abcd} = g(R_{∂a,∂b} ∂c, ∂d), flat n^4 array.
  template <class S>
  std::vector<S> riemann_coords(const Point<S>& x) const {
    const int n = dim_;
    auto gam = christoffel(x);
    std::vector<std::vector<Matrix<S>>> dgam;  // dgam[a][k](i,j) = ∂_a Γ^k_ij
    for (int a = 0; a < n; ++a) {
      auto gd = christoffel(seed_direction(x, a));
      std::vector<Matrix<S>> da(n, Matrix<S>(n, n));
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) da[k](i, j) = gd[k](i, j).d;
      dgam.push_back(std::move(da));
    }
    Matrix<S> g = metric(x);
    std::vector<S> up(static_cast<std::size_t>(n) * n * n * n, S(0.0));  // R^d_{cab} at [((a*n+b)*n+c)*n+d]
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            S r = dgam[a][d](b, c) - dgam[b][d](a, c);
            for (int e = 0; e < n; ++e) r += gam[d](a, e) * gam[e](b, c) - gam[d](b, e) * gam[e](a, c);
            up[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = r;
          }
    std::vector<S> low(up.size(), S(0.0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            S s(0.0);
            for (int e = 0; e < n; ++e) s += g(d, e) * up[((static_cast<std::size_t>(a) * n + b) * n + c) * n + e];
            low[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d] = s;
          }
    return low;
  }

  // Ric_{ab} = g^{cd} R_{a c d b} in coordinates.
  template <class S>
  Matrix<S> ricci_coords(const Point<S>& x) const {
    const int n = dim_;
    auto r = riemann_coords(x);
    Matrix<S> ginv = spd_inverse(metric(x));
    Matrix<S> ric(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            ric(a, b) += ginv(c, d) * r[((static_cast<std::size_t>(a) * n + c) * n + d) * n + b];
    return ric;
  }

  RiemannAtPoint riemann(const Point<double>& x) const;
  std::vector<double> geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const;

 private:
  int dim_;
  MetricFn metric_;
  Domain domain_;
};

// Product of round spheres S^{n_1}(r_1) x ... embedded in R^{n_1+1} x ...
class EmbeddedSpheres {
 public:
  struct Block {
    int dim = 0;
    double radius = 1.0;
    int rep_offset = 0;
    int frame_offset = 0;
  };

  explicit EmbeddedSpheres(std::vector<Block> blocks);

  int dim() const { return dim_; }
  int rep_dim() const { return rep_dim_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Domain& domain() const { return domain_; }

  // Orthogonal projector onto the tangent space at x (uses |x_b| per block).
  template <class S>
  Matrix<S> projector(const Point<S>& x) const {
    Matrix<S> p(rep_dim_, rep_dim_);
    for (const auto& b : blocks_) {
      S r2(0.0);
      for (int i = 0; i <= b.dim; ++i) r2 += x[b.rep_offset + i] * x[b.rep_offset + i];
      for (int i = 0; i <= b.dim; ++i)
        for (int j = 0; j <= b.dim; ++j) {
          S v = -(x[b.rep_offset + i] * x[b.rep_offset + j]) / r2;
          if (i == j) v += 1.0;
          p(b.rep_offset + i, b.rep_offset + j) = v;
        }
    }
    return p;
  }

  // Orthonormal tangent frame: per block, project the standard basis vectors
  // other than the one most aligned with x and orthonormalize.
  template <class S>
  Matrix<S> frame(const Point<S>& x) const {
    using std::sqrt;
    Matrix<S> e(rep_dim_, dim_);
    Matrix<S> p = projector(x);
    for (const auto& b : blocks_) {
      int pivot = 0;
      double best = -1.0;
      for (int i = 0; i <= b.dim; ++i) {
        const double a = std::fabs(value_of(x[b.rep_offset + i]));
        if (a > best) {
          best = a;
          pivot = i;
        }
      }
      int col = b.frame_offset;
      for (int i = 0; i <= b.dim; ++i) {
        if (i == pivot) continue;
        std::vector<S> v(b.dim + 1);
        for (int k = 0; k <= b.dim; ++k) v[k] = p(b.rep_offset + k, b.rep_offset + i);
        for (int c = b.frame_offset; c < col; ++c) {
          S d(0.0);
          for (int k = 0; k <= b.dim; ++k) d += v[k] * e(b.rep_offset + k, c);
          for (int k = 0; k <= b.dim; ++k) v[k] -= d * e(b.rep_offset + k, c);
        }
        S len2(0.0);
        for (int k = 0; k <= b.dim; ++k) len2 += v[k] * v[k];
        const S len = sqrt(len2);
        for (int k = 0; k <= b.dim; ++k) e(b.rep_offset + k, col) = v[k] / len;
        ++col;
      }
    }
    return e;
  }

  template <class S>
  Matrix<S> coframe(const Point<S>& x) const {
    return frame(x).transpose();
  }

  // f returns tangential ambient mixed tensors and accepts Point<Dual<S>>.
  template <class S, class F>
  MixedT<S> covariant_derivative(const F& f, const Point<S>& x) const {
    const int m = rep_dim_;
    MixedT<S> raw;
    for (int a = 0; a < m; ++a) {
      MixedT<Dual<S>> fy = f(seed_direction(x, a));
      if (a == 0) {
        if (fy.m != m) throw ShapeError("covariant_derivative: representation dimension mismatch");
        raw.m = m;
        raw.lead = fy.lead + 1;
        raw.parts.resize(m * fy.parts.size());
      }
      const std::size_t block = fy.parts.size();
      for (std::size_t idx = 0; idx < block; ++idx) raw.parts[a * block + idx] = tangent(fy.parts[idx]);
    }
    return to_basis(raw, projector(x));
  }

  RiemannAtPoint riemann(const Point<double>& x) const;
  std::vector<double> geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const;

  // Ricci as an ambient tensor and scalar curvature (both parallel).
  template <class S>
  BasicSymTensor<S> ricci_rep(const Point<S>& x) const {
    BasicSymTensor<S> ric(rep_dim_, 2);
    Matrix<S> p = projector(x);
    for (const auto& b : blocks_) {
      const double c = (b.dim - 1) / (b.radius * b.radius);
      for (int i = 0; i <= b.dim; ++i)
        for (int j = i; j <= b.dim; ++j) ric.at({b.rep_offset + i, b.rep_offset + j}) = c * p(b.rep_offset + i, b.rep_offset + j);
    }
    return ric;
  }
  double scalar_curvature() const;

 private:
  std::vector<Block> blocks_;
  int dim_ = 0;
  int rep_dim_ = 0;
  Domain domain_;
};

class Manifold;
using ManifoldPtr = std::shared_ptr<const Manifold>;

class Manifold {
 public:
  using Backend = std::variant<Chart, EmbeddedSpheres>;

  struct Factor {
    ManifoldPtr manifold;
    int rep_offset = 0;
    int frame_offset = 0;
  };

  Manifold(std::string key, Backend backend) : key_(std::move(key)), backend_(std::move(backend)) {}

  const std::string& key() const { return key_; }
  const Backend& backend() const { return backend_; }
  bool is_embedded() const { return std::holds_alternative<EmbeddedSpheres>(backend_); }
  const Chart& chart() const { return std::get<Chart>(backend_); }
  const EmbeddedSpheres& spheres() const { return std::get<EmbeddedSpheres>(backend_); }

  int dim() const {
    return std::visit([](const auto& b) { return b.dim(); }, backend_);
  }
  int rep_dim() const { return is_embedded() ? spheres().rep_dim() : chart().dim(); }
  const Domain& domain() const {
    return std::visit([](const auto& b) -> const Domain& { return b.domain(); }, backend_);
  }

  template <class S>
  Matrix<S> frame(const Point<S>& x) const {
    return std::visit([&](const auto& b) { return b.frame(x); }, backend_);
  }
  template <class S>
  Matrix<S> coframe(const Point<S>& x) const {
    return std::visit([&](const auto& b) { return b.coframe(x); }, backend_);
  }
  template <class S, class F>
  MixedT<S> covariant_derivative(const F& f, const Point<S>& x) const {
    return std::visit([&](const auto& b) { return b.covariant_derivative(f, x); }, backend_);
  }
  // Embedded representations are projected to the tangent space.
  template <class S>
  BasicSymTensor<S> tangential(const BasicSymTensor<S>& k, const Point<S>& x) const {
    if (!is_embedded()) return k;
    return transform(k, spheres().projector(x));
  }

  template <class S>
  BasicSymTensor<S> ricci_rep(const Point<S>& x) const {
    if (is_embedded()) return spheres().ricci_rep(x);
    const Matrix<S> ric = chart().ricci_coords(x);
    BasicSymTensor<S> out(dim(), 2);
    for (int i = 0; i < dim(); ++i)
      for (int j = i; j < dim(); ++j) out.at({i, j}) = ric(i, j);
    return out;
  }
  template <class S>
  S scalar_curvature(const Point<S>& x) const {
    if (is_embedded()) return S(spheres().scalar_curvature());
    const Matrix<S> ric = chart().ricci_coords(x);
    const Matrix<S> ginv = spd_inverse(chart().metric(x));
    S s(0.0);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) s += ginv(i, j) * ric(i, j);
    return s;
  }

  RiemannAtPoint riemann(const Point<double>& x) const;
  std::vector<double> sample(Rng& rng) const { return domain().sample(rng); }
  bool contains(const std::vector<double>& x) const { return domain().contains(x); }

  // Geodesic ODE in representation coordinates.
  std::vector<double> geodesic_acceleration(const std::vector<double>& x, const std::vector<double>& v) const;
  // Frame components of a representation vector, and back.
  std::vector<double> to_frame(const std::vector<double>& x, const std::vector<double>& v) const;
  std::vector<double> from_frame(const std::vector<double>& x, const std::vector<double>& vf) const;
  // Largest deviation of the frame Gram matrix from the identity.
  double frame_gram_residual(const std::vector<double>& x) const;

  // Product structure (empty for a single factor).
  std::vector<Factor> factors;
  // For charts built as coordinates of an embedded manifold: the map to its
  // representation coordinates.
  ManifoldPtr source;
  PointMapFn to_source;
  // For conformal rescalings e^{2f} g of another chart.
  ManifoldPtr conformal_base;
  ScalarFn conformal_f;

 private:
  std::string key_;
  Backend backend_;
};

}  // namespace ktensor
