#pragma once

// Symmetric tensor fields on a Manifold and the first-order operators
// nabla, d, delta. Fields are stored in representation coordinates (chart
// covariant components, or ambient components for embedded spheres) as
// generic functions, so derivatives come from dual-number evaluation.

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ktensor/frame_tensor.hpp"
#include "ktensor/generic.hpp"
#include "ktensor/manifold.hpp"
#include "ktensor/mixed.hpp"
#include "ktensor/symalg.hpp"

namespace ktensor {

class TensorField {
 public:
  TensorField(ManifoldPtr base, int degree, TensorFn rep, std::string name, int order = 2)
      : base_(std::move(base)), degree_(degree), rep_(std::move(rep)), name_(std::move(name)), order_(order) {}

  const ManifoldPtr& base() const { return base_; }
  int degree() const { return degree_; }
  int order() const { return order_; }
  const std::string& name() const { return name_; }
  const TensorFn& rep_fn() const { return rep_; }

  // Representation components; tangential for embedded bases.
  template <class S>
  BasicSymTensor<S> rep(const Point<S>& x) const {
    BasicSymTensor<S> k = rep_.get<S>()(x);
    if (k.dim() != base_->rep_dim() || k.degree() != degree_) throw ShapeError("field " + name_ + ": wrong shape");
    return base_->tangential(k, x);
  }

  // Components in the orthonormal frame of the base.
  template <class S>
  BasicSymTensor<S> frame_components(const Point<S>& x) const {
    BasicSymTensor<S> k = rep_.get<S>()(x);
    if (k.dim() != base_->rep_dim() || k.degree() != degree_) throw ShapeError("field " + name_ + ": wrong shape");
    return transform(k, base_->frame(x));
  }

  SymTensor eval(const Point<double>& x) const { return frame_components(x); }

  TensorField renamed(std::string name) const {
    TensorField f = *this;
    f.name_ = std::move(name);
    return f;
  }

 private:
  ManifoldPtr base_;
  int degree_;
  TensorFn rep_;
  std::string name_;
  int order_;
};

template <class T>
using scalar_of_point = typename std::decay_t<T>::value_type;

// Field from a generic representation function rep(Point<S>) -> BasicSymTensor<S>.
template <int max_level = 3, class F>
TensorField make_field(ManifoldPtr base, int degree, F rep, std::string name, int order = 2) {
  return TensorField(std::move(base), degree, TensorFn::make<max_level>(std::move(rep)), std::move(name), order);
}

// Field from generic orthonormal-frame components.
template <int max_level = 3, class F>
TensorField make_frame_field(ManifoldPtr base, int degree, F frame_fn, std::string name, int order = 2) {
  const Manifold* m = base.get();
  auto rep = [m, frame_fn](const auto& x) { return transform(frame_fn(x), m->coframe(x)); };
  return make_field<max_level>(std::move(base), degree, rep, std::move(name), order);
}

// Pointwise algebraic map applied in the orthonormal frame.
template <class Op>
TensorField map_frame(const TensorField& k, int degree_out, Op op, std::string name) {
  auto fn = [k, op](const auto& x) { return op(k.frame_components(x)); };
  return make_frame_field(k.base(), degree_out, fn, std::move(name), k.order());
}

template <class Op>
TensorField combine_frame(const TensorField& a, const TensorField& b, int degree_out, Op op, std::string name) {
  if (a.base()->key() != b.base()->key()) throw ShapeError("combine: fields live on different manifolds");
  auto fn = [a, b, op](const auto& x) { return op(a.frame_components(x), b.frame_components(x)); };
  return make_frame_field(a.base(), degree_out, fn, std::move(name), std::min(a.order(), b.order()));
}

TensorField metric_field(const ManifoldPtr& base);
TensorField zero_field(const ManifoldPtr& base, int degree);
TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField scaled(double s, const TensorField& a);
TensorField field_product(const TensorField& a, const TensorField& b);  // pointwise sym_product
TensorField field_L(const TensorField& a);
TensorField field_trace_free(const TensorField& a);

// Representation-level covariant derivatives (generic, used recursively).
template <class S>
MixedT<S> nabla_rep(const TensorField& k, const Point<S>& x) {
  auto f = [&k](const auto& y) {
    using T = scalar_of_point<decltype(y)>;
    return MixedT<T>::single(k.rep(y));
  };
  return k.base()->covariant_derivative(f, x);
}

template <class S>
MixedT<S> nabla2_rep(const TensorField& k, const Point<S>& x) {
  auto f = [&k](const auto& y) { return nabla_rep(k, y); };
  return k.base()->covariant_derivative(f, x);
}

// slot i = nabla_{e_i} K in the frame at x.
FrameTensor nabla(const TensorField& k, const Point<double>& x);
// [i*n + j] = nabla^2_{e_i, e_j} K.
std::vector<SymTensor> nabla2(const TensorField& k, const Point<double>& x);

SymTensor d_op(const TensorField& k, const Point<double>& x);
SymTensor delta_op(const TensorField& k, const Point<double>& x);
// (dK)_0 = dK + L(delta K)/(n+2p-2) for trace-free K.
SymTensor d0_op(const TensorField& k, const Point<double>& x);

}  // namespace ktensor
