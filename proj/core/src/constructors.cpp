#include "ktensor/constructors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ktensor/residuals.hpp"

namespace ktensor {

// ---------------------------------------------------------------- curvature

Matrix<double> AlgCurvature::ricci() const {
  Matrix<double> ric(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) ric(i, j) += (*this)(i, k, k, j);
  return ric;
}

double AlgCurvature::symmetry_residual() const {
  return RiemannAtPoint::from_components(dim, R).symmetry_residual();
}

double AlgCurvature::bianchi_residual() const {
  return RiemannAtPoint::from_components(dim, R).bianchi_residual();
}

AlgCurvature curvature_project(int n, const std::vector<double>& t) {
  if (t.size() != static_cast<std::size_t>(n) * n * n * n) throw ShapeError("curvature_project: expected n^4 entries");
  auto at = [&](int i, int j, int k, int l) { return t[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l]; };
  AlgCurvature s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s(i, j, k, l) = (at(i, j, k, l) - at(j, i, k, l) - at(i, j, l, k) + at(j, i, l, k) + at(k, l, i, j) -
                           at(l, k, i, j) - at(k, l, j, i) + at(l, k, j, i)) /
                          8.0;
  AlgCurvature r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r(i, j, k, l) = s(i, j, k, l) - (s(i, j, k, l) + s(j, k, i, l) + s(k, i, j, l)) / 3.0;
  return r;
}

AlgCurvature constant_curvature(int n) {
  AlgCurvature r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r(i, j, j, i) = 1.0;
      r(i, j, i, j) = -1.0;
    }
  return r;
}

AlgCurvature random_curvature(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> t(static_cast<std::size_t>(n) * n * n * n);
  for (auto& v : t) v = normal(rng);
  return curvature_project(n, t);
}

AlgCurvature weyl_part(const AlgCurvature& r) {
  const int n = r.dim;
  if (n < 3) throw ShapeError("weyl_part: dimension must be at least 3");
  const Matrix<double> ric = r.ricci();
  double scal = 0.0;
  for (int i = 0; i < n; ++i) scal += ric(i, i);
  Matrix<double> a = ric;
  for (int i = 0; i < n; ++i) a(i, i) -= scal / (2.0 * (n - 1));
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  AlgCurvature w(n);
  w.weyl = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double kn = a(i, l) * d(j, k) + a(j, k) * d(i, l) - a(i, k) * d(j, l) - a(j, l) * d(i, k);
          w(i, j, k, l) = r(i, j, k, l) - kn / (n - 2.0);
        }
  return w;
}

namespace {

void require_round_sphere(const ManifoldPtr& m, const std::string& what) {
  if (!m->is_embedded() || m->spheres().blocks().size() != 1)
    throw ShapeError(what + ": base must be a single embedded sphere");
}

void require_flat(const ManifoldPtr& m, const std::string& what) {
  if (m->is_embedded()) throw ShapeError(what + ": base must be a flat chart");
  Rng rng(0);
  const auto x = m->sample(rng);
  if (max_abs(m->chart().metric(x) - Matrix<double>::identity(m->dim())) > 0.0)
    throw ShapeError(what + ": base must be a flat chart");
}

void verify_killing(const TensorField& k, int checks, double tol, const std::string& what) {
  const Manifold& m = *k.base();
  for (int i = 0; i < checks; ++i) {
    Rng rng = task_rng(0x6b696c6cULL, i);
    const double r = killing_residual(k, m.sample(rng));
    if (!(r <= tol))
      throw VerificationError(what + ": " + k.name() + " is not Killing (residual " + std::to_string(r) + ")");
  }
}

}  // namespace

TensorField curvature_to_killing(const ManifoldPtr& sphere, const AlgCurvature& r) {
  require_round_sphere(sphere, "curvature_to_killing");
  const int m = sphere->rep_dim();
  if (r.dim != m) throw ShapeError("curvature_to_killing: curvature dimension must be the ambient dimension");
  const AlgCurvature rc = r;
  return make_field(sphere, 2, [rc, m](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    BasicSymTensor<T> k(m, 2);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        T s(0.0);
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            const double w = rc(a, c, d, b);
            if (w != 0.0) s += w * x[c] * x[d];
          }
        k.at({a, b}) = s;
      }
    return k;
  }, r.weyl ? "curvature-killing(weyl)" : "curvature-killing");
}

// ---------------------------------------------------------------- vectors

TensorField killing_vector(const ManifoldPtr& base, const Matrix<double>& a, const std::vector<double>& b) {
  const int m = base->rep_dim();
  if (a.rows() != m || a.cols() != m) throw ShapeError("killing_vector: generator has the wrong size");
  if (max_abs(a + a.transpose()) > 1e-12) throw ShapeError("killing_vector: generator is not skew-symmetric");
  std::vector<double> shift = b;
  if (shift.empty()) shift.assign(m, 0.0);
  if (static_cast<int>(shift.size()) != m) throw ShapeError("killing_vector: translation has the wrong size");
  if (base->is_embedded()) {
    if (norm2(shift) != 0.0) throw ShapeError("killing_vector: translations are not Killing on spheres");
    const auto& blocks = base->spheres().blocks();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        auto block_of = [&](int c) {
          for (std::size_t q = 0; q < blocks.size(); ++q)
            if (c >= blocks[q].rep_offset && c <= blocks[q].rep_offset + blocks[q].dim) return static_cast<int>(q);
          return -1;
        };
        if (a(i, j) != 0.0 && block_of(i) != block_of(j))
          throw ShapeError("killing_vector: generator mixes sphere factors");
      }
  } else {
    require_flat(base, "killing_vector");
  }
  return make_field(base, 1, [a, shift, m](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    std::vector<T> v(m, T(0.0));
    for (int i = 0; i < m; ++i) {
      v[i] = T(shift[i]);
      for (int j = 0; j < m; ++j)
        if (a(i, j) != 0.0) v[i] += a(i, j) * x[j];
    }
    return BasicSymTensor<T>::vector(v);
  }, "killing-vector");
}

Matrix<double> quaternion_unit(int which) {
  Matrix<double> q(4, 4);
  // columns: images of 1, i, j, k under left multiplication
  const int table[3][4][2] = {
      {{1, 1}, {0, -1}, {3, 1}, {2, -1}},   // i
      {{2, 1}, {3, -1}, {0, -1}, {1, 1}},   // j
      {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};  // k
  if (which < 1 || which > 3) throw ShapeError("quaternion_unit: which must be 1, 2 or 3");
  for (int c = 0; c < 4; ++c) q(table[which - 1][c][0], c) = table[which - 1][c][1];
  return q;
}

TensorField sym_product_field(const TensorField& xi, const TensorField& zeta, int checks, double tol) {
  if (xi.degree() != 1 || zeta.degree() != 1) throw DegreeError("sym_product_field: expects vector fields");
  verify_killing(xi, checks, tol, "sym_product_field");
  verify_killing(zeta, checks, tol, "sym_product_field");
  return field_product(xi, zeta);
}

// ---------------------------------------------------------------- forms

std::vector<std::vector<int>> increasing_subsets(int n, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(q);
  for (int i = 0; i < q; ++i) cur[i] = i;
  if (q > n) return out;
  while (true) {
    out.push_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[i] == n - q + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<double> random_form(int n, int q, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> w(increasing_subsets(n, q + 1).size());
  for (auto& v : w) v = normal(rng);
  return w;
}

FormField killing_form_sphere(const ManifoldPtr& sphere, int q, const std::vector<double>& omega) {
  require_round_sphere(sphere, "killing_form_sphere");
  const int m = sphere->rep_dim();
  if (q < 1 || q >= m) throw DegreeError("killing_form_sphere: need 1 <= q <= n");
  const auto big = increasing_subsets(m, q + 1);
  if (omega.size() != big.size()) throw ShapeError("killing_form_sphere: omega has the wrong number of components");
  const auto small = increasing_subsets(m, q);
  // u_I = Σ_c x_c ω_{cI}: for each increasing I and c not in I, the sign of sorting (c, I).
  struct Term {
    std::size_t out, in;
    int c;
    double sign;
  };
  std::vector<Term> terms;
  for (std::size_t r = 0; r < small.size(); ++r)
    for (int c = 0; c < m; ++c) {
      const auto& s = small[r];
      if (std::find(s.begin(), s.end(), c) != s.end()) continue;
      std::vector<int> merged = s;
      const int pos = static_cast<int>(std::lower_bound(merged.begin(), merged.end(), c) - merged.begin());
      merged.insert(merged.begin() + pos, c);
      const std::size_t in = static_cast<std::size_t>(std::find(big.begin(), big.end(), merged) - big.begin());
      terms.push_back({r, in, c, pos % 2 ? -1.0 : 1.0});
    }
  const std::size_t count = small.size();
  auto fn = FormField::CompsFn::make([terms, omega, count](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    std::vector<T> u(count, T(0.0));
    for (const auto& t : terms) u[t.out] += (t.sign * omega[t.in]) * x[t.c];
    return u;
  });
  return FormField(sphere, q, fn, "killing-form");
}

double killing_form_residual(const FormField& u, const Point<double>& x) {
  const Manifold& m = *u.base();
  auto f = [&u](const auto& y) { return u.full(y); };
  const MixedT<double> d = to_basis(m.covariant_derivative(f, x), m.frame(x));
  const int n = d.m;
  const std::size_t rest = d.parts.size() / (static_cast<std::size_t>(n) * n);
  double worst = 0.0, big = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::size_t r = 0; r < rest; ++r) {
        const double ab = d.parts[(a * n + b) * rest + r][0];
        const double ba = d.parts[(b * n + a) * rest + r][0];
        worst = std::max(worst, std::fabs(ab + ba));
        big = std::max(big, std::fabs(ab));
      }
  return worst / std::max(1.0, big);
}

TensorField killing_form_to_tensor(const FormField& u) {
  const int m = u.base()->rep_dim();
  const int q = u.degree();
  double fact = 1.0;
  for (int i = 2; i < q; ++i) fact *= i;
  return make_field(u.base(), 2, [u, m, fact](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    const MixedT<T> full = u.full(x);
    const std::size_t rest = full.parts.size() / m;
    BasicSymTensor<T> k(m, 2);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        T s(0.0);
        for (std::size_t r = 0; r < rest; ++r) s += full.parts[a * rest + r][0] * full.parts[b * rest + r][0];
        k.at({a, b}) = s / fact;
      }
    return k;
  }, "killing-form-tensor");
}

// ---------------------------------------------------------------- special

TensorField special_ckt_flat(const ManifoldPtr& flat, const std::vector<double>& k0) {
  require_flat(flat, "special_ckt_flat");
  if (static_cast<int>(k0.size()) != flat->dim()) throw ShapeError("special_ckt_flat: k0 has the wrong size");
  return make_field(flat, 2, [k0](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    std::vector<T> kv(k0.begin(), k0.end());
    return sym_product(BasicSymTensor<T>::vector(x), BasicSymTensor<T>::vector(kv));
  }, "x.k0");
}

TensorField special_to_killing(const TensorField& k, int checks, double tol) {
  const Manifold& m = *k.base();
  const int n = m.dim();
  const int p = k.degree();
  if (p < 1) throw DegreeError("special_to_killing: degree must be at least 1");
  for (int i = 0; i < checks; ++i) {
    Rng rng = task_rng(0x73706563ULL, i);
    const auto r = point_residuals(k, m.sample(rng));
    if (!(r.special <= tol)) throw VerificationError("special_to_killing: input is not special conformal Killing");
  }
  const std::vector<double> a = special_killing_coefficients(n, p);
  return map_frame(k, p, [a](const auto& kf) {
    const auto dec = standard_decomposition(kf);
    auto out = dec.parts[0];
    for (std::size_t j = 1; j < dec.parts.size(); ++j) out += apply_L(dec.parts[j], static_cast<int>(j)) * a[j];
    return out;
  }, "hat(" + k.name() + ")");
}

std::vector<double> nijenhuis(const TensorField& a, const Point<double>& x) {
  if (a.degree() != 2) throw DegreeError("nijenhuis: expects a 2-tensor");
  const FrameTensor da = nabla(a, x);
  const SymTensor ax = a.eval(x);
  const int n = da.n;
  auto A = [&](int i, int j) { return ax.at({i, j}); };
  auto D = [&](int c, int i, int j) { return da.slots[c].at({i, j}); };
  std::vector<double> out(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int b = 0; b < n; ++b) s += A(c, b) * (D(i, b, j) - D(j, b, i));
        for (int e = 0; e < n; ++e) s += -A(e, i) * D(e, c, j) + A(e, j) * D(e, c, i);
        out[(static_cast<std::size_t>(i) * n + j) * n + c] = s;
      }
  return out;
}

// ---------------------------------------------------------------- products

TensorField lift_to_product(const TensorField& k, const ManifoldPtr& product, int factor) {
  if (factor >= static_cast<int>(product->factors.size())) throw ShapeError("lift_to_product: no such factor");
  for (int i = 0; i < static_cast<int>(product->factors.size()); ++i) {
    if (factor >= 0 && i != factor) continue;
    const auto& f = product->factors[i];
    TensorField src = k;
    if (f.manifold->key() != k.base()->key()) {
      if (!(f.manifold->source && f.manifold->source->key() == k.base()->key())) continue;
      src = pull_back_to_chart(k, f.manifold);
    }
    const int off = f.rep_offset;
    const int sub = f.manifold->rep_dim();
    const int total = product->rep_dim();
    return make_field(product, k.degree(), [src, off, sub, total](const auto& x) {
      using T = scalar_of_point<decltype(x)>;
      Point<T> y(x.begin() + off, x.begin() + off + sub);
      return embed_indices(src.rep(y), off, total);
    }, src.name(), src.order());
  }
  throw ShapeError("lift_to_product: " + k.base()->key() + " is not a factor of " + product->key());
}

TensorField product_ckt(const ManifoldPtr& product, const TensorField& k1, const TensorField& k2,
                        const std::vector<std::pair<TensorField, TensorField>>& pairs, int checks, double tol) {
  if (product->factors.size() != 2) throw ShapeError("product_ckt: base must be a product of two manifolds");
  if (k1.degree() != 2 || k2.degree() != 2) throw DegreeError("product_ckt: K1 and K2 must be 2-tensors");
  verify_killing(k1, checks, tol, "product_ckt");
  verify_killing(k2, checks, tol, "product_ckt");
  TensorField h = field_trace_free(lift_to_product(k1, product, 0) + lift_to_product(k2, product, 1));
  for (const auto& [xi, zeta] : pairs) {
    verify_killing(xi, checks, tol, "product_ckt");
    verify_killing(zeta, checks, tol, "product_ckt");
    h = h + field_product(lift_to_product(xi, product, 0), lift_to_product(zeta, product, 1));
  }
  return h.renamed("product-ckt");
}

// ---------------------------------------------------------------- distributions

DistributionSplit line_split(const TensorField& xi) {
  if (xi.degree() != 1) throw DegreeError("line_split: expects a vector field");
  TensorField pi = map_frame(xi, 2, [](const auto& v) {
    using T = std::decay_t<decltype(v[0])>;
    const int n = v.dim();
    T len2(0.0);
    for (int i = 0; i < n; ++i) len2 += v[i] * v[i];
    BasicSymTensor<T> p(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) p.at({i, j}) = v[i] * v[j] / len2;
    return p;
  }, "pi1");
  return DistributionSplit{xi.base(), pi, 1};
}

DistributionSplit coordinate_split(const ManifoldPtr& flat, int n1) {
  require_flat(flat, "coordinate_split");
  const int n = flat->dim();
  if (n1 < 1 || n1 >= n) throw ShapeError("coordinate_split: need 0 < n1 < n");
  TensorField pi = make_frame_field(flat, 2, [n, n1](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    BasicSymTensor<T> p(n, 2);
    for (int i = 0; i < n1; ++i) p.at({i, i}) = T(1.0);
    return p;
  }, "pi1");
  return DistributionSplit{flat, pi, n1};
}

double split_projector_residual(const DistributionSplit& s, const Point<double>& x) {
  const SymTensor p = s.pi1.eval(x);
  const int n = p.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = p.at({i, j});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double worst = 0.0;
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    const double l = es.eigenvalues()(i);
    worst = std::max(worst, std::min(std::fabs(l), std::fabs(l - 1.0)));
    rank += l > 0.5;
  }
  return worst + std::abs(rank - s.n1);
}

double d1_residual(const DistributionSplit& s, const Point<double>& x) {
  const FrameTensor dp = nabla(s.pi1, x);
  const SymTensor p = s.pi1.eval(x);
  const int n = dp.n;
  Matrix<double> q1(n, n), q2(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      q1(i, j) = p.at({i, j});
      q2(i, j) = (i == j ? 1.0 : 0.0) - q1(i, j);
    }
  std::vector<double> t(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) t[(a * n + b) * n + c] = dp.slots[a].at({b, c}) + dp.slots[b].at({a, c});
  auto project = [&](const Matrix<double>& qa, const Matrix<double>& qc) {
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double v = 0.0;
          for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2)
              for (int c2 = 0; c2 < n; ++c2) v += qa(a, a2) * qa(b, b2) * qc(c, c2) * t[(a2 * n + b2) * n + c2];
          worst = std::max(worst, std::fabs(v));
        }
    return worst;
  };
  return std::max(project(q1, q2), project(q2, q1)) / std::max(1.0, norm(dp));
}

TensorField distribution_stackel(const DistributionSplit& s) {
  const int n = s.base->dim();
  return (scaled(n, s.pi1) - scaled(s.n1, metric_field(s.base))).renamed("distribution-stackel");
}

}  // namespace ktensor
