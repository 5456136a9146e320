#pragma once

// Factories for the example classes of (conformal) Killing tensors.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ktensor/catalog.hpp"
#include "ktensor/field.hpp"
#include "ktensor/random.hpp"

namespace ktensor {

// ---- algebraic curvature tensors on R^N ----

struct AlgCurvature {
  int dim = 0;
  std::vector<double> R;  // R(i,j,k,l) at ((i*N+j)*N+k)*N+l
  bool weyl = false;

  AlgCurvature() = default;
  explicit AlgCurvature(int n) : dim(n), R(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  double& operator()(int i, int j, int k, int l) { return R[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l]; }
  double operator()(int i, int j, int k, int l) const {
    return R[((static_cast<std::size_t>(i) * dim + j) * dim + k) * dim + l];
  }
  Matrix<double> ricci() const;  // Ric(i,j) = Σ_k R(i,k,k,j)
  double symmetry_residual() const;
  double bianchi_residual() const;
};

// Orthogonal projection of an arbitrary 4-tensor onto the curvature-tensor subspace.
AlgCurvature curvature_project(int n, const std::vector<double>& t);
// R(X,Y,Z,V) = g(X,V) g(Y,Z) - g(X,Z) g(Y,V): the unit sphere.
AlgCurvature constant_curvature(int n);
AlgCurvature random_curvature(int n, Rng& rng);
// Totally trace-free part (n >= 3).
AlgCurvature weyl_part(const AlgCurvature& r);

// K_x(X,Y) = R(X,x,x,Y) on a round sphere of dimension R.dim - 1.
TensorField curvature_to_killing(const ManifoldPtr& sphere, const AlgCurvature& r);

// ---- Killing vectors, forms and products ----

// ξ(x) = A x (+ b on charts); A must be skew-symmetric.
TensorField killing_vector(const ManifoldPtr& base, const Matrix<double>& a, const std::vector<double>& b = {});
// Left multiplication by the quaternion units i, j, k on R^4.
Matrix<double> quaternion_unit(int which);

// Pointwise product after checking both inputs are Killing at `checks` sample points.
TensorField sym_product_field(const TensorField& xi, const TensorField& zeta, int checks = 8, double tol = 1e-9);

// Antisymmetric q-forms stored on increasing index sets (rep coordinates).
class FormField {
 public:
  using CompsFn = Generic<PointMapSig>;

  FormField(ManifoldPtr base, int q, CompsFn comps, std::string name)
      : base_(std::move(base)), q_(q), comps_(std::move(comps)), name_(std::move(name)) {}

  const ManifoldPtr& base() const { return base_; }
  int degree() const { return q_; }
  const std::string& name() const { return name_; }

  template <class S>
  std::vector<S> comps(const Point<S>& x) const {
    return comps_.get<S>()(x);
  }
  // Full antisymmetric array as a mixed tensor with q leading slots.
  template <class S>
  MixedT<S> full(const Point<S>& x) const;

 private:
  ManifoldPtr base_;
  int q_;
  CompsFn comps_;
  std::string name_;
};

// Increasing q-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> increasing_subsets(int n, int q);

template <class S>
MixedT<S> FormField::full(const Point<S>& x) const {
  const int m = base_->rep_dim();
  const std::vector<S> c = comps(x);
  const auto sets = increasing_subsets(m, q_);
  if (c.size() != sets.size()) throw ShapeError("form " + name_ + ": wrong number of components");
  std::size_t total = 1;
  for (int i = 0; i < q_; ++i) total *= m;
  MixedT<S> t;
  t.m = m;
  t.lead = q_;
  t.parts.assign(total, BasicSymTensor<S>(m, 0));
  std::vector<int> perm(q_);
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (int i = 0; i < q_; ++i) perm[i] = i;
    do {
      int inversions = 0;
      for (int a = 0; a < q_; ++a)
        for (int b = a + 1; b < q_; ++b) inversions += perm[a] > perm[b];
      std::size_t f = 0;
      for (int a = 0; a < q_; ++a) f = f * m + sets[r][perm[a]];
      t.parts[f][0] = (inversions % 2 ? -1.0 : 1.0) * c[r];
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return t;
}

// Random constant (q+1)-form on R^n, increasing-set components.
std::vector<double> random_form(int n, int q, Rng& rng);

// u_x = x _| ω restricted to the sphere, for a constant (q+1)-form ω on R^{n+1}.
FormField killing_form_sphere(const ManifoldPtr& sphere, int q, const std::vector<double>& omega);
// Frame residual max |(∇_a u)_{bI} + (∇_b u)_{aI}|, the condition X _| ∇_X u = 0.
double killing_form_residual(const FormField& u, const Point<double>& x);
// K(X,Y) = g(X _| u, Y _| u).
TensorField killing_form_to_tensor(const FormField& u);

// ---- special conformal Killing tensors ----

// x . k0 on a flat chart.
TensorField special_ckt_flat(const ManifoldPtr& flat, const std::vector<double>& k0);
// Σ a_j L^j K_j with the special-Killing coefficients; checks the input first.
TensorField special_to_killing(const TensorField& k, int checks = 8, double tol = 1e-9);
// Frame components N(e_i, e_j) as [((i*n)+j)*n + c].
std::vector<double> nijenhuis(const TensorField& a, const Point<double>& x);

// ---- products and distributions ----

// Field on a factor lifted to a product manifold. factor < 0 picks the first
// factor whose key (or chart source) matches; equal factors need the index.
TensorField lift_to_product(const TensorField& k, const ManifoldPtr& product, int factor = -1);
// h = (K1 + K2)_0 + Σ ξ_i . ζ_i on M1 x M2; K1, ξ_i live on the first factor.
TensorField product_ckt(const ManifoldPtr& product, const TensorField& k1, const TensorField& k2,
                        const std::vector<std::pair<TensorField, TensorField>>& pairs, int checks = 8,
                        double tol = 1e-9);

struct DistributionSplit {
  ManifoldPtr base;
  TensorField pi1;  // degree 2; the projector onto E1 as a symmetric form
  int n1 = 0;
};

// E1 spanned by a nowhere-vanishing vector field (normalized pointwise).
DistributionSplit line_split(const TensorField& xi);
// E1 spanned by the first n1 coordinate directions of a flat chart.
DistributionSplit coordinate_split(const ManifoldPtr& flat, int n1);
// |π1^2 - π1| and the rank defect, from the eigenvalues of π1 in the frame.
double split_projector_residual(const DistributionSplit& s, const Point<double>& x);
// Condition (d1): E2-part of ∇_X X for X in E1 and E1-part for X in E2.
double d1_residual(const DistributionSplit& s, const Point<double>& x);
// K = n2 π1 - n1 π2.
TensorField distribution_stackel(const DistributionSplit& s);

}  // namespace ktensor
