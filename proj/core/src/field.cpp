#include "ktensor/field.hpp"

namespace ktensor {

namespace {

template <class S>
BasicSymTensor<S> metric_rep(const Manifold& m, const Point<S>& x) {
  const int n = m.rep_dim();
  BasicSymTensor<S> g(n, 2);
  if (m.is_embedded()) {
    const Matrix<S> p = m.spheres().projector(x);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g.at({i, j}) = p(i, j);
  } else {
    const Matrix<S> gm = m.chart().metric(x);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g.at({i, j}) = gm(i, j);
  }
  return g;
}

void require_same_base(const TensorField& a, const TensorField& b) {
  if (a.base()->key() != b.base()->key()) throw ShapeError("fields live on different manifolds");
}

}  // namespace

TensorField metric_field(const ManifoldPtr& base) {
  const Manifold* m = base.get();
  return make_field(base, 2, [m](const auto& x) { return metric_rep(*m, x); }, "metric");
}

TensorField zero_field(const ManifoldPtr& base, int degree) {
  const int n = base->rep_dim();
  return make_field(
      base, degree,
      [n, degree](const auto& x) {
        using T = scalar_of_point<decltype(x)>;
        return BasicSymTensor<T>(n, degree);
      },
      "zero");
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  require_same_base(a, b);
  return make_field(
      a.base(), a.degree(), [a, b](const auto& x) { return a.rep(x) + b.rep(x); }, a.name() + "+" + b.name(),
      std::min(a.order(), b.order()));
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  require_same_base(a, b);
  return make_field(
      a.base(), a.degree(), [a, b](const auto& x) { return a.rep(x) - b.rep(x); }, a.name() + "-" + b.name(),
      std::min(a.order(), b.order()));
}

TensorField scaled(double s, const TensorField& a) {
  return make_field(
      a.base(), a.degree(),
      [s, a](const auto& x) {
        using T = scalar_of_point<decltype(x)>;
        return a.rep(x) * T(s);
      },
      a.name(), a.order());
}

TensorField field_product(const TensorField& a, const TensorField& b) {
  require_same_base(a, b);
  return make_field(
      a.base(), a.degree() + b.degree(), [a, b](const auto& x) { return sym_product(a.rep(x), b.rep(x)); },
      a.name() + "." + b.name(), std::min(a.order(), b.order()));
}

TensorField field_L(const TensorField& a) {
  const Manifold* m = a.base().get();
  return make_field(
      a.base(), a.degree() + 2,
      [m, a](const auto& x) {
        using T = scalar_of_point<decltype(x)>;
        return sym_product(metric_rep(*m, x) * T(2.0), a.rep(x));
      },
      "L(" + a.name() + ")", a.order());
}

TensorField field_trace_free(const TensorField& a) {
  return map_frame(a, a.degree(), [](const auto& k) { return trace_free_part(k); }, "(" + a.name() + ")_0");
}

FrameTensor nabla(const TensorField& k, const Point<double>& x) {
  if (k.order() < 1) throw DomainError("nabla: field is not differentiable");
  const Manifold& m = *k.base();
  MixedT<double> d = to_basis(nabla_rep(k, x), m.frame(x));
  FrameTensor out(m.dim(), k.degree());
  out.slots = std::move(d.parts);
  return out;
}

std::vector<SymTensor> nabla2(const TensorField& k, const Point<double>& x) {
  if (k.order() < 2) throw DomainError("nabla2: field is not twice differentiable");
  const Manifold& m = *k.base();
  return to_basis(nabla2_rep(k, x), m.frame(x)).parts;
}

SymTensor d_op(const TensorField& k, const Point<double>& x) { return symmetrize(nabla(k, x)); }

SymTensor delta_op(const TensorField& k, const Point<double>& x) {
  if (k.degree() < 1) throw DegreeError("delta needs degree >= 1");
  return divergence(nabla(k, x));
}

SymTensor d0_op(const TensorField& k, const Point<double>& x) {
  const FrameTensor dk = nabla(k, x);
  const int n = dk.n;
  const int p = dk.p;
  SymTensor out = symmetrize(dk);
  if (p >= 1) out.axpy(1.0 / (n + 2.0 * p - 2.0), mult_L(divergence(dk)));
  return out;
}

}  // namespace ktensor
