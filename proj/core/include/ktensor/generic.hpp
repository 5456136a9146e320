#pragma once

// A function available at several scalar levels (double, D1, D2, D3). Built
// from one generic lambda; levels that a construction cannot support are left
// empty and raise when asked for.

#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ktensor/dual.hpp"
#include "ktensor/errors.hpp"
#include "ktensor/linalg.hpp"
#include "ktensor/sym_tensor.hpp"

namespace ktensor {

template <template <class> class Sig>
class Generic {
 public:
  Generic() = default;

  // Instantiate levels 0..max_level of f.
  template <int max_level = 3, class F>
  static Generic make(F f) {
    Generic g;
    g.f0_ = f;
    if constexpr (max_level >= 1) g.f1_ = f;
    if constexpr (max_level >= 2) g.f2_ = f;
    if constexpr (max_level >= 3) g.f3_ = f;
    g.levels_ = max_level;
    return g;
  }

  int levels() const { return levels_; }
  explicit operator bool() const { return static_cast<bool>(f0_); }

  template <class S>
  const std::function<Sig<S>>& get() const {
    const std::function<Sig<S>>* f = nullptr;
    if constexpr (std::is_same_v<S, double>) f = &f0_;
    else if constexpr (std::is_same_v<S, D1>) f = &f1_;
    else if constexpr (std::is_same_v<S, D2>) f = &f2_;
    else if constexpr (std::is_same_v<S, D3>) f = &f3_;
    else static_assert(!sizeof(S), "unsupported scalar level");
    if (!*f) throw DomainError("function is not differentiable to the requested order");
    return *f;
  }

 private:
  std::function<Sig<double>> f0_;
  std::function<Sig<D1>> f1_;
  std::function<Sig<D2>> f2_;
  std::function<Sig<D3>> f3_;
  int levels_ = -1;
};

template <class S> using Point = std::vector<S>;
template <class S> using MetricSig = Matrix<S>(const Point<S>&);
template <class S> using TensorSig = BasicSymTensor<S>(const Point<S>&);
template <class S> using ScalarSig = S(const Point<S>&);
template <class S> using PointMapSig = Point<S>(const Point<S>&);

using MetricFn = Generic<MetricSig>;
using TensorFn = Generic<TensorSig>;
using ScalarFn = Generic<ScalarSig>;
using PointMapFn = Generic<PointMapSig>;

}  // namespace ktensor
