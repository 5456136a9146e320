#include <algorithm>
#include <cmath>

#include "ktensor/analysis.hpp"
#include "ktensor/catalog.hpp"
#include "ktensor/curvature.hpp"
#include "ktensor/parallel.hpp"

namespace ktensor {

namespace {

constexpr double kAlgebraicTol = 1e-12;
constexpr double kSecondOrderTol = 1e-6;
constexpr double kSphereEigenTol = 1e-8;
constexpr double kNonPositiveTol = 1e-10;
constexpr double kMetricDriftTol = 1e-9;
constexpr double kNegativeDrift = 1e-3;

bool is_unit_round_sphere(const Manifold& m) {
  return m.is_embedded() && m.spheres().blocks().size() == 1 && m.spheres().blocks()[0].radius == 1.0;
}

bool is_hyperbolic(const std::string& key) { return key.rfind("hyperbolic:", 0) == 0; }

template <class Fn>
double max_over_samples(const ManifoldPtr& m, int samples, std::uint64_t seed, Fn fn) {
  std::vector<double> out(samples, 0.0);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng = task_rng(seed, i);
    out[i] = fn(m->sample(rng), rng);
  });
  double w = 0.0;
  for (double v : out) w = std::max(w, std::isnan(v) ? INFINITY : v);
  return w;
}

struct SampleChecks {
  double gram = 0.0, riemann = 0.0, qself = 0.0, qrh = 0.0, parallel = 0.0, lich = 0.0, ricci = 0.0;
  double eigen = 0.0, nonpos = 0.0, selftest = 0.0;
};

}  // namespace

SuiteReport catalog_suite(const std::string& key, int samples, double tol, std::uint64_t seed) {
  const ManifoldPtr m = make_manifold(key);
  const int n = m->dim();
  const bool unit_sphere = is_unit_round_sphere(*m);
  const bool hyperbolic = is_hyperbolic(key);
  const bool modified_ricci = !m->conformal_base;

  Rng field_rng = task_rng(seed, 0xf1e1d);
  std::vector<TensorField> polys;
  for (int p = 1; p <= 2; ++p) polys.push_back(random_polynomial_field(m, p, field_rng));
  const TensorField g = metric_field(m);

  std::vector<SampleChecks> res(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng = task_rng(seed, i);
    const auto x = m->sample(rng);
    SampleChecks& s = res[i];
    s.gram = m->frame_gram_residual(x);
    const RiemannAtPoint r = m->riemann(x);
    const double rs = std::max(1.0, r.max_abs());
    s.riemann = std::max(r.symmetry_residual(), r.bianchi_residual()) / rs;
    for (int p = 1; p <= 3; ++p) {
      const SymTensor a = random_tensor(n, p, rng);
      const SymTensor b = random_tensor(n, p, rng);
      s.qself = std::max(s.qself, std::fabs(inner(qR_act(r, a), b) - inner(a, qR_act(r, b))) /
                                      (norm(a) * norm(b) * rs));
      const SymTensor k0 = random_trace_free(n, p, rng);
      if (unit_sphere) s.eigen = std::max(s.eigen, norm(qR_act(r, k0) - k0 * double(p * (n + p - 2))) / norm(k0));
      if (hyperbolic) s.nonpos = std::max(s.nonpos, inner(qR_act(r, k0), k0) / inner(k0, k0));
    }
    const SymTensor h = random_tensor(n, 2, rng);
    s.qrh = qrh_residual(r, h) / (norm(h) * rs);
    s.parallel = norm(nabla(g, x));
    for (const auto& pf : polys) s.lich = std::max(s.lich, norm(lichnerowicz_defect(pf, x)));
    if (modified_ricci) s.ricci = ricci_killing_residual(m, x, random_vector(n, rng));
    if (!m->is_embedded() && i < 10) s.selftest = metric_derivative_selftest(m->chart(), x);
  });

  SampleChecks w;
  auto fold = [](double& a, double b) { a = std::max(a, std::isnan(b) ? INFINITY : b); };
  for (const auto& s : res) {
    fold(w.gram, s.gram);
    fold(w.riemann, s.riemann);
    fold(w.qself, s.qself);
    fold(w.qrh, s.qrh);
    fold(w.parallel, s.parallel);
    fold(w.lich, s.lich);
    fold(w.ricci, s.ricci);
    fold(w.eigen, s.eigen);
    fold(w.nonpos, s.nonpos);
    fold(w.selftest, s.selftest);
  }

  SuiteReport rep;
  rep.suite = "catalog " + key;
  rep.trials = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  rep.add("frame gram", w.gram, kAlgebraicTol);
  rep.add("riemann symmetries", w.riemann, tol);
  rep.add("q(R) self-adjoint", w.qself, 1e-10);
  rep.add("q(R)h = 2R°h - Ric(h)", w.qrh, tol);
  rep.add("metric parallel", w.parallel, tol);
  rep.add("lichnerowicz", w.lich, kSecondOrderTol);
  if (modified_ricci) rep.add("modified Ricci Killing", w.ricci, 1e-8);
  if (unit_sphere) rep.add("sphere q(R) = p(n+p-2)", w.eigen, kSphereEigenTol);
  if (hyperbolic) rep.add("g(q(R)K,K) <= 0", std::max(0.0, w.nonpos), kNonPositiveTol);
  if (!m->is_embedded()) rep.add("metric derivative self-test", w.selftest, kSecondOrderTol);
  rep.finalize();
  return rep;
}

SuiteReport verify_construction(const Construction& c, int samples, double tol, std::uint64_t seed,
                                ClassReport* classification) {
  if (tol <= 0.0) tol = c.tol;
  const ClassReport r = classify(c.field, samples, tol, seed);
  if (classification) *classification = r;
  SuiteReport rep;
  rep.suite = "verify " + c.key + " on " + c.base->key();
  rep.trials = samples;
  rep.seed = seed;
  rep.tolerance = tol;

  auto verdict = [&](const char* name, const std::optional<bool>& expect, double residual) {
    if (!expect) return;
    if (c.negative && c.target == name) {
      rep.add_expected_fail(std::string("target ") + name, residual, tol);
    } else if (*expect) {
      rep.add(std::string(name) + " = yes", residual, tol);
    } else {
      rep.add_expected_fail(std::string(name) + " = no", residual, tol, 1.0);
    }
  };
  verdict("killing", c.expect.killing, r.max.killing);
  verdict("conformal", c.expect.conformal, r.max.conformal);
  verdict("trace_free", c.expect.trace_free, r.max.trace);
  verdict("divergence_free", c.expect.divergence_free, r.max.divergence);
  verdict("special", c.expect.special, r.max.special);
  verdict("stackel", c.expect.stackel, std::max(r.max.killing, r.max.trace));
  rep.add_flag("verdict implications", r.implications_hold);
  if (r.p1_zero) rep.add_flag("P1 = 0 iff conformal", *r.p1_zero == r.conformal);

  const ManifoldPtr& m = c.base;
  for (const auto& chk : c.checks) {
    const double v = max_over_samples(m, samples, seed, [&](const Point<double>& x, Rng&) { return chk.residual(x); });
    if (chk.expect_pass)
      rep.add(chk.name, v, chk.tol);
    else
      rep.add_expected_fail(chk.name, v, chk.tol);
  }
  if (!c.negative && c.expect.stackel.value_or(false)) {
    rep.add("stackel => delta K = 0", r.max.divergence, tol);
    const TensorField lk = field_L(c.field);
    const ClassReport rl = classify(lk, samples, tol, seed);
    rep.add("L(K) Killing", rl.max.killing, tol);
    rep.add("L(K) divergence-free", rl.max.divergence, tol);
  }
  if (!c.negative && c.expect.killing.value_or(false) && c.field.degree() == 2)
    rep.add("d tr K = 2 delta K", r.max.two_tensor, tol);
  rep.finalize();
  return rep;
}

SuiteReport constructor_suite(int samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "constructors";
  rep.trials = samples;
  rep.seed = seed;
  rep.tolerance = 1e-9;
  for (const auto& key : registry_keys()) {
    const Construction c = construct(key);
    rep.append(verify_construction(c, samples, c.tol, seed), key + ": ");
  }
  rep.finalize();
  return rep;
}

SuiteReport conformal_invariance_suite(int samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "conformal invariance";
  rep.trials = samples;
  rep.seed = seed;
  rep.tolerance = 1e-9;
  for (const auto& key : registry_keys()) {
    const Construction c = construct(key);
    if (c.negative) continue;
    const ManifoldPtr bump = conformal_bump(c.base);
    const TensorField kt = conformal_transport(c.field, bump);
    const ClassReport r0 = classify(c.field, samples, c.tol, seed);
    const ClassReport r1 = classify(kt, samples, rep.tolerance, seed);
    rep.add(key + ": conformal on g", r0.max.conformal, c.tol);
    rep.add(key + ": conformal on e^{2f}g", r1.max.conformal, rep.tolerance);
    rep.add_flag(key + ": conformal verdicts agree", r0.conformal == r1.conformal);
    rep.add_flag(key + ": trace-free verdicts agree", r0.trace_free == r1.trace_free);
  }
  rep.finalize();
  return rep;
}

double DriftTable::max_drift() const {
  double w = 0.0;
  for (const auto& r : runs) w = std::max(w, std::isnan(r.drift) ? INFINITY : r.drift);
  return w;
}

DriftTable drift_table(const TensorField& k, int trajectories, int steps, double dt, std::uint64_t seed) {
  DriftTable t;
  t.field = k.name();
  t.manifold = k.base()->key();
  t.runs.resize(trajectories);
  parallel_for(trajectories, [&](std::size_t i) {
    Rng rng = task_rng(seed, i);
    t.runs[i] = geodesic_drift(k, random_start(*k.base(), rng), steps, dt);
  });
  return t;
}

double order_ratio(const TensorField& k, const GeodesicOptions& opt, std::uint64_t seed) {
  Rng rng = task_rng(seed, 0);
  const GeodesicStart start = random_start(*k.base(), rng);
  const int steps = static_cast<int>(std::lround(opt.span_coarse / opt.dt_coarse));
  const double coarse = geodesic_drift(k, start, steps, opt.dt_coarse).drift;
  const double fine = geodesic_drift(k, start, 2 * steps, opt.dt_coarse / 2).drift;
  constexpr double kRoundoff = 1e-12;
  if (coarse <= kRoundoff && fine <= kRoundoff) return 0.0;
  return coarse / std::max(fine, 1e-300);
}

SuiteReport geodesic_suite(const GeodesicOptions& opt) {
  SuiteReport rep;
  rep.suite = "geodesics";
  rep.trials = opt.trajectories;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;
  for (const auto& key : registry_keys()) {
    const Construction c = construct(key);
    const bool killing = c.expect.killing.value_or(false);
    if (!c.negative && !killing) continue;
    const DriftTable t = drift_table(c.field, opt.trajectories, opt.steps, opt.dt, opt.seed);
    if (c.negative) {
      rep.add_expected_fail(key + ": drift", t.max_drift(), kNegativeDrift, 1.0);
      continue;
    }
    rep.add(key + ": drift", t.max_drift(), opt.tol);
    const double ratio = order_ratio(c.field, opt, opt.seed);
    if (ratio == 0.0)
      rep.add_flag(key + ": drift at roundoff for both steps", true);
    else
      rep.add_expected_fail(key + ": drift ratio under dt halving", ratio, 16.0, 1.0);
  }
  rep.finalize();
  return rep;
}

SuiteReport geometry_suite(const GeometryOptions& opt) {
  SuiteReport rep;
  rep.suite = "geometry";
  rep.trials = opt.samples;
  rep.seed = opt.seed;
  rep.tolerance = opt.tol;
  for (const auto& key : opt.keys) {
    rep.append(catalog_suite(key, opt.samples, opt.tol, opt.seed), key + ": ");
    if (opt.trajectories > 0) {
      const ManifoldPtr m = make_manifold(key);
      rep.add(key + ": metric drift", drift_table(metric_field(m), opt.trajectories, opt.steps, opt.dt, opt.seed).max_drift(),
              kMetricDriftTol);
    }
  }
  if (opt.constructors) {
    rep.append(constructor_suite(opt.samples, opt.seed));
    rep.append(conformal_invariance_suite(opt.samples, opt.seed));
  }
  if (opt.trajectories > 0) {
    GeodesicOptions g;
    g.trajectories = opt.trajectories;
    g.steps = opt.steps;
    g.dt = opt.dt;
    g.seed = opt.seed;
    rep.append(geodesic_suite(g));
  }
  rep.finalize();
  return rep;
}

}  // namespace ktensor
