#include <algorithm>
#include <cmath>

#include "ktensor/analysis.hpp"
#include "ktensor/parallel.hpp"

namespace ktensor {

namespace {

// NaN-aware componentwise max: n/a stays NaN only if it is n/a everywhere.
void fold_max(double& acc, double v) {
  if (std::isnan(v)) return;
  acc = std::isnan(acc) ? v : std::max(acc, v);
}

bool ok(double residual, double tol) { return std::isfinite(residual) && residual <= tol; }

}  // namespace

ClassReport classify(const TensorField& k, int samples, double tol, std::uint64_t seed, const ClassifyOptions& opt) {
  if (k.degree() < 1) throw DegreeError("classify: field degree must be at least 1");
  if (samples < 1) throw ConfigError("classify: need at least one sample");
  const ManifoldPtr& m = k.base();
  ClassReport r;
  r.field = k.name();
  r.manifold = m->key();
  r.degree = k.degree();
  r.samples = samples;
  r.tol = tol;
  r.seed = seed;
  r.per_sample.resize(samples);

  parallel_for(samples, [&](std::size_t i) {
    Rng rng = task_rng(seed, i);
    const auto x = m->sample(rng);
    FrameTensor dk = nabla(k, x);
    SymTensor kx = k.eval(x);
    if (opt.remix_frame) {
      const Matrix<double> q = random_orthogonal(m->dim(), rng);
      dk = rotate(dk, q);
      kx = transform(kx, q);
    }
    r.per_sample[i] = residuals_from(dk, kx);
  });

  PointResiduals& mx = r.max;
  for (const auto& s : r.per_sample) {
    fold_max(mx.scale, s.scale);
    fold_max(mx.killing, s.killing);
    fold_max(mx.conformal, s.conformal);
    fold_max(mx.trace, s.trace);
    fold_max(mx.divergence, s.divergence);
    fold_max(mx.special, s.special);
    fold_max(mx.codazzi, s.codazzi);
    fold_max(mx.p1, s.p1);
    fold_max(mx.p2, s.p2);
    fold_max(mx.p3, s.p3);
    fold_max(mx.two_tensor, s.two_tensor);
    fold_max(mx.special1, s.special1);
  }

  r.killing = ok(mx.killing, tol);
  r.conformal = ok(mx.conformal, tol);
  r.trace_free = ok(mx.trace, tol);
  r.divergence_free = ok(mx.divergence, tol);
  r.special = ok(mx.special, tol);
  r.codazzi = ok(mx.codazzi, tol);
  r.stackel = r.killing && r.trace_free;
  if (!std::isnan(mx.p1)) r.p1_zero = ok(mx.p1, tol);
  if (!std::isnan(mx.two_tensor)) r.two_tensor = ok(mx.two_tensor, tol);
  if (!std::isnan(mx.special1)) r.special1 = ok(mx.special1, tol);

  r.implications_hold = (!r.killing || r.conformal) && (!r.stackel || r.divergence_free) && (!r.special || r.conformal);
  return r;
}

std::vector<PartVerdict> divfree_killing_parts(const TensorField& k, int samples, double tol, std::uint64_t seed) {
  const ClassReport r = classify(k, samples, tol, seed);
  if (!r.killing || !r.divergence_free)
    throw VerificationError("divfree_killing_parts: " + k.name() + " is not a divergence-free Killing tensor");
  const int p = k.degree();
  std::vector<PartVerdict> out;
  for (int i = 0; 2 * i <= p; ++i) {
    const TensorField part = map_frame(k, p - 2 * i, [i](const auto& t) { return standard_decomposition(t).parts[i]; },
                                       k.name() + "_" + std::to_string(i));
    PartVerdict v;
    v.index = i;
    v.degree = p - 2 * i;
    std::vector<PointResiduals> res(samples);
    parallel_for(samples, [&](std::size_t s) {
      Rng rng = task_rng(seed, s);
      res[s] = point_residuals(part, k.base()->sample(rng));
    });
    for (const auto& s : res) {
      v.killing = std::max(v.killing, s.killing);
      if (!std::isnan(s.divergence)) v.divergence = std::max(v.divergence, s.divergence);
    }
    v.stackel = v.killing <= tol && v.divergence <= tol;
    out.push_back(v);
  }
  return out;
}

TensorField random_polynomial_field(const ManifoldPtr& m, int p, Rng& rng) {
  const int n = m->rep_dim();
  const SymTensor a = random_tensor(n, p, rng);
  const SymTensor b = p >= 1 ? random_tensor(n, p - 1, rng) : SymTensor(n, 0);
  const SymTensor c = p >= 2 ? random_tensor(n, p - 2, rng) : SymTensor(n, 0);
  return make_field(m, p, [a, b, c, p](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    BasicSymTensor<T> k = from_double<T>(a);
    const auto xv = BasicSymTensor<T>::vector(x);
    if (p >= 1) k += sym_product(xv, from_double<T>(b));
    if (p >= 2) k += sym_product(sym_product(xv, xv), from_double<T>(c));
    return k;
  }, "poly" + std::to_string(p));
}

}  // namespace ktensor
