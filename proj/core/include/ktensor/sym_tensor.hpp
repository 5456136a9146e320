#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "ktensor/dual.hpp"
#include "ktensor/errors.hpp"
#include "ktensor/index_table.hpp"

namespace ktensor {

// Dense symmetric p-tensor over R^n. comps[r] is the tensor-basis entry
// K_{i1..ip} for the r-th non-decreasing multi-index; the full array is
// symmetric by construction.
template <class S>
class BasicSymTensor {
 public:
  using scalar_type = S;

  BasicSymTensor() : BasicSymTensor(1, 0) {}
  BasicSymTensor(int dim, int degree) : table_(IndexTable::get(dim, degree)), comps_(table_->size(), S(0.0)) {}

  static BasicSymTensor scalar(int dim, const S& value) {
    BasicSymTensor t(dim, 0);
    t.comps_[0] = value;
    return t;
  }
  static BasicSymTensor vector(const std::vector<S>& v) {
    BasicSymTensor t(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) t.comps_[i] = v[i];
    return t;
  }
  static BasicSymTensor basis(int dim, int i) {
    BasicSymTensor t(dim, 1);
    t.comps_[i] = S(1.0);
    return t;
  }
  // g as an element of Sym^2, components delta_ij.
  static BasicSymTensor metric(int dim) {
    BasicSymTensor t(dim, 2);
    for (int i = 0; i < dim; ++i) t.at({i, i}) = S(1.0);
    return t;
  }

  int dim() const { return table_->dim(); }
  int degree() const { return table_->degree(); }
  std::size_t size() const { return comps_.size(); }
  const IndexTable& table() const { return *table_; }

  S& operator[](std::size_t r) { return comps_[r]; }
  const S& operator[](std::size_t r) const { return comps_[r]; }

  // Entry for an arbitrary 0-based index tuple.
  S& at(std::initializer_list<int> idx) { return comps_[table_->rank({idx.begin(), idx.size()})]; }
  const S& at(std::initializer_list<int> idx) const { return comps_[table_->rank({idx.begin(), idx.size()})]; }
  S& at(std::span<const int> idx) { return comps_[table_->rank(idx)]; }
  const S& at(std::span<const int> idx) const { return comps_[table_->rank(idx)]; }

  std::vector<S>& comps() { return comps_; }
  const std::vector<S>& comps() const { return comps_; }

  bool same_shape(const BasicSymTensor& o) const { return dim() == o.dim() && degree() == o.degree(); }

  BasicSymTensor& operator+=(const BasicSymTensor& o) {
    require_same(o);
    for (std::size_t r = 0; r < comps_.size(); ++r) comps_[r] += o.comps_[r];
    return *this;
  }
  BasicSymTensor& operator-=(const BasicSymTensor& o) {
    require_same(o);
    for (std::size_t r = 0; r < comps_.size(); ++r) comps_[r] -= o.comps_[r];
    return *this;
  }
  BasicSymTensor& operator*=(const S& s) {
    for (auto& c : comps_) c *= s;
    return *this;
  }
  // y += s * x
  BasicSymTensor& axpy(const S& s, const BasicSymTensor& x) {
    require_same(x);
    for (std::size_t r = 0; r < comps_.size(); ++r) comps_[r] += s * x.comps_[r];
    return *this;
  }

  BasicSymTensor operator-() const {
    BasicSymTensor t = *this;
    for (auto& c : t.comps_) c = -c;
    return t;
  }

 private:
  void require_same(const BasicSymTensor& o) const {
    if (!same_shape(o)) throw ShapeError("symmetric tensor shape mismatch");
  }

  std::shared_ptr<const IndexTable> table_;
  std::vector<S> comps_;
};

using SymTensor = BasicSymTensor<double>;

template <class S>
BasicSymTensor<S> operator+(BasicSymTensor<S> a, const BasicSymTensor<S>& b) { return a += b; }
template <class S>
BasicSymTensor<S> operator-(BasicSymTensor<S> a, const BasicSymTensor<S>& b) { return a -= b; }
template <class S>
BasicSymTensor<S> operator*(BasicSymTensor<S> a, const S& s) { return a *= s; }
template <class S>
BasicSymTensor<S> operator*(const S& s, BasicSymTensor<S> a) { return a *= s; }
template <class S>
  requires is_dual<S>::value
BasicSymTensor<S> operator*(double s, BasicSymTensor<S> a) { return a *= S(s); }
template <class S>
  requires is_dual<S>::value
BasicSymTensor<S> operator*(BasicSymTensor<S> a, double s) { return a *= S(s); }

// Scalar level conversions.
template <class S>
BasicSymTensor<Dual<S>> lift(const BasicSymTensor<S>& a) {
  BasicSymTensor<Dual<S>> out(a.dim(), a.degree());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = Dual<S>(a[r], S(0.0));
  return out;
}
template <class S>
BasicSymTensor<S> primal(const BasicSymTensor<Dual<S>>& a) {
  BasicSymTensor<S> out(a.dim(), a.degree());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = a[r].v;
  return out;
}
template <class S>
BasicSymTensor<S> tangent(const BasicSymTensor<Dual<S>>& a) {
  BasicSymTensor<S> out(a.dim(), a.degree());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = a[r].d;
  return out;
}
template <class S>
SymTensor to_double(const BasicSymTensor<S>& a) {
  SymTensor out(a.dim(), a.degree());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = value_of(a[r]);
  return out;
}
template <class S>
BasicSymTensor<S> from_double(const SymTensor& a) {
  BasicSymTensor<S> out(a.dim(), a.degree());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = S(a[r]);
  return out;
}

// Largest absolute component; cheap scale for tolerances.
inline double max_abs(const SymTensor& a) {
  double m = 0.0;
  for (double c : a.comps()) m = std::fmax(m, std::fabs(c));
  return m;
}

}  // namespace ktensor
