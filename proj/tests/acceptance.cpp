// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ktensor/analysis.hpp"
#include "ktensor/catalog.hpp"
#include "ktensor/curvature.hpp"
#include "ktensor/random.hpp"
#include "ktensor/symalg.hpp"
#include "oracle.hpp"

using namespace ktensor;

namespace {

// Pinned tolerances.
constexpr double kAlgebraTol = 1e-10;
constexpr double kWeitzenbockTol = 1e-10;
constexpr double kLichnerowiczTol = 1e-6;
constexpr double kSphereEigenTol = 1e-8;
constexpr double kCurvedTol = 1e-9;
constexpr double kFlatTol = 1e-11;
constexpr double kNegativeMargin = 1e3;
constexpr double kNonPositiveTol = 1e-10;
constexpr double kDriftTol = 1e-7;
constexpr double kOrderRatio = 16.0;
constexpr double kNegativeDrift = 1e-3;

constexpr std::uint64_t kSeed = 42;
constexpr int kIdentityTrials = 50;
constexpr int kWeitzenbockTrials = 100;
constexpr int kLichnerowiczSamples = 50;
constexpr int kClassifySamples = 100;
constexpr int kNonPositiveSamples = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

bool contains(const std::string& s, const char* sub) { return s.find(sub) != std::string::npos; }

struct Filtered {
  int count = 0;
  int failed = 0;
  double worst = 0.0;  // over expected-pass cases, raw residual / case tolerance
  std::string first_failure;
};

Filtered filter(const SuiteReport& r, const std::function<bool(const SuiteCase&)>& keep) {
  Filtered f;
  for (const auto& c : r.cases) {
    if (!keep(c)) continue;
    ++f.count;
    if (!c.pass) {
      if (f.failed++ == 0) f.first_failure = c.name + fmt(" (%.3g vs %.3g)", c.max_residual, c.tolerance);
    }
    if (c.expect_pass && c.tolerance > 0.0) f.worst = std::max(f.worst, c.max_residual / c.tolerance);
  }
  return f;
}

Outcome from_filter(const Filtered& f, const char* what) {
  Outcome o;
  o.pass = f.count > 0 && f.failed == 0;
  o.detail = fmt("%d %s cases, %d failed, worst residual/tol %.2e", f.count, what, f.failed, f.worst);
  if (f.failed) o.detail += ", first: " + f.first_failure;
  if (f.count == 0) o.detail += " (none found)";
  return o;
}

SuiteReport& identities() {
  static SuiteReport r = [] {
    IdentityOptions o;
    o.n_min = 2;
    o.n_max = 5;
    o.p_min = 0;
    o.p_max = 4;
    o.trials = kIdentityTrials;
    o.weitzenbock_trials = kWeitzenbockTrials;
    o.seed = kSeed;
    o.tol = kAlgebraTol;
    return identity_suite(o);
  }();
  return r;
}

SuiteReport& constructors() {
  static SuiteReport r = constructor_suite(kClassifySamples, kSeed);
  return r;
}

Outcome c1() {
  return from_filter(filter(identities(),
                            [](const SuiteCase& c) {
                              return !contains(c.name, "weitzenbock") && c.tolerance <= kAlgebraTol;
                            }),
                     "algebraic");
}

Outcome c2() {
  Outcome o = from_filter(
      filter(identities(),
             [](const SuiteCase& c) { return contains(c.name, "weitzenbock") && c.tolerance <= kWeitzenbockTol; }),
      "Weitzenbock");
  // every (n, p) with p >= 1 must be present, except (2, 1) where n+2p-4 = 0
  int pairs = 0, expected = 0;
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      if (n == 2 && p == 1) continue;
      ++expected;
      const std::string tag = fmt("n=%d p=%d", n, p);
      bool found = false;
      for (const auto& c : identities().cases)
        if (contains(c.name, "weitzenbock B") && c.name.size() >= tag.size() &&
            c.name.compare(c.name.size() - tag.size(), tag.size(), tag) == 0)
          found = true;
      pairs += found;
    }
  o.detail += fmt(", %d/%d (n,p) pairs", pairs, expected);
  o.pass = o.pass && pairs == expected;
  return o;
}

Outcome c3() {
  Filtered all;
  for (const char* key : {"euclidean:3", "sphere:2"}) {
    const SuiteReport r = catalog_suite(key, kLichnerowiczSamples, kCurvedTol, kSeed);
    for (const auto& c : r.cases) {
      if (c.name != "lichnerowicz") continue;
      ++all.count;
      all.worst = std::max(all.worst, c.max_residual);
      if (c.max_residual > kLichnerowiczTol) {
        if (all.failed++ == 0) all.first_failure = std::string(key) + fmt(" %.3g", c.max_residual);
      }
    }
  }
  Outcome o;
  o.pass = all.count == 2 && all.failed == 0;
  o.detail = fmt("max pointwise defect %.2e over %d samples on euclidean:3 and sphere:2", all.worst,
                 kLichnerowiczSamples);
  if (all.failed) o.detail += ", failed: " + all.first_failure;
  return o;
}

// Constant-curvature Riemann tensor R_ijkl = δ_il δ_jk - δ_ik δ_jl, built by hand.
struct UnitSphereCurvature {
  int n;
  double operator()(int i, int j, int k, int l) const { return double(i == l && j == k) - double(i == k && j == l); }
};

Outcome c4() {
  double worst_oracle = 0.0, worst_lib = 0.0, worst_agree = 0.0;
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    auto m = sphere(n);
    for (int p = 1; p <= 3; ++p) {
      Rng rng = task_rng(kSeed, static_cast<std::uint64_t>(10 * n + p));
      for (int t = 0; t < 20; ++t) {
        const SymTensor k = random_trace_free(n, p, rng);
        const double scale = std::max(1.0, norm(k));
        const double lambda = p * (n + p - 2);
        const oracle::Full q = oracle::q_full(UnitSphereCurvature{n}, oracle::expand(k));
        worst_oracle = std::max(worst_oracle, oracle::max_diff(q, k * lambda) / scale);
        const SymTensor ql = qR_act(m->riemann(m->sample(rng)), k);
        worst_lib = std::max(worst_lib, max_abs(ql - k * lambda) / scale);
        worst_agree = std::max(worst_agree, oracle::max_diff(q, ql) / scale);
        ++checked;
      }
    }
  }
  Outcome o;
  o.pass = worst_oracle <= kSphereEigenTol && worst_lib <= kSphereEigenTol && worst_agree <= kSphereEigenTol;
  o.detail = fmt("%d tensors; oracle %.2e, library %.2e, oracle vs library %.2e", checked, worst_oracle, worst_lib,
                 worst_agree);
  return o;
}

Outcome c5() {
  const SuiteReport& r = constructors();
  // pinned tolerances: the registry must not loosen them
  int loose = 0;
  for (const auto& key : registry_keys()) {
    const Construction c = construct(key);
    const std::string b = c.base->key();
    const bool flat = b.rfind("euclidean:", 0) == 0 || b.rfind("torus:", 0) == 0;
    const double pinned = flat ? kFlatTol : kCurvedTol;
    if (c.tol > pinned) ++loose;
  }
  Filtered neg = filter(r, [](const SuiteCase& c) { return contains(c.name, ": target "); });
  double margin = INFINITY;
  for (const auto& c : r.cases)
    if (contains(c.name, ": target ")) margin = std::min(margin, c.max_residual / (c.tolerance / kNegativeMargin));
  Outcome o = from_filter(filter(r, [](const SuiteCase&) { return true; }), "constructor");
  o.pass = o.pass && loose == 0 && neg.count > 0 && neg.failed == 0 && margin >= kNegativeMargin;
  o.detail += fmt(", %d negative targets, smallest margin %.2e x tol", neg.count, margin);
  if (loose) o.detail += fmt(", %d constructions above pinned tol", loose);
  return o;
}

Outcome c6() {
  const char* lemmas[] = {"delta(xi.zeta) = d g(xi,zeta)", "d tr K = 2 delta K", "stackel => delta K = 0",
                          "L(K) Killing", "L(K) divergence-free", "Nijenhuis vanishes", "Nijenhuis does not vanish"};
  Outcome o = from_filter(filter(constructors(),
                                 [&](const SuiteCase& c) {
                                   for (const char* l : lemmas)
                                     if (contains(c.name, l)) return true;
                                   return false;
                                 }),
                          "lemma");
  std::string missing;
  for (const char* l : lemmas) {
    bool seen = false;
    for (const auto& c : constructors().cases) seen = seen || contains(c.name, l);
    if (!seen) missing += std::string(missing.empty() ? "" : "; ") + l;
  }
  if (!missing.empty()) {
    o.pass = false;
    o.detail += ", missing: " + missing;
  }
  return o;
}

Outcome c7() {
  const SuiteReport r = conformal_invariance_suite(kClassifySamples, kSeed);
  const Filtered agree = filter(r, [](const SuiteCase& c) { return contains(c.name, "verdicts agree"); });
  Outcome o = from_filter(filter(r, [](const SuiteCase&) { return true; }), "conformal");
  o.pass = o.pass && agree.count > 0 && agree.failed == 0;
  o.detail += fmt(", %d verdict agreements", agree.count);
  return o;
}

Outcome c8() {
  double worst = -INFINITY;
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    auto m = hyperbolic(n);
    for (int p = 1; p <= 3; ++p)
      for (int t = 0; t < kNonPositiveSamples; ++t) {
        Rng rng = task_rng(kSeed, static_cast<std::uint64_t>(100000 * n + 1000 * p + t));
        const SymTensor k0 = random_trace_free(n, p, rng);
        const SymTensor k = k0 * (1.0 / norm(k0));
        const double v = inner(qR_act(m->riemann(m->sample(rng)), k), k);
        worst = std::max(worst, v);
        ++checked;
      }
  }
  Outcome o;
  o.pass = worst <= kNonPositiveTol;
  o.detail = fmt("%d unit trace-free tensors on H^2..H^4, max g(q(R)K,K) = %.3e", checked, worst);
  return o;
}

Outcome c9() {
  GeodesicOptions g;
  g.steps = 10000;
  g.dt = 1e-3;
  g.tol = kDriftTol;
  g.seed = kSeed;
  const SuiteReport r = geodesic_suite(g);
  Outcome o = from_filter(filter(r, [](const SuiteCase&) { return true; }), "geodesic");
  double ratio = INFINITY, neg = INFINITY;
  int pos = 0;
  for (const auto& c : r.cases) {
    if (contains(c.name, "drift ratio")) ratio = std::min(ratio, c.max_residual);
    if (!c.expect_pass && contains(c.name, ": drift") && !contains(c.name, "ratio"))
      neg = std::min(neg, c.max_residual);
    if (c.expect_pass && contains(c.name, ": drift")) ++pos;
  }
  o.pass = o.pass && ratio >= kOrderRatio && neg >= kNegativeDrift && pos > 0;
  o.detail += fmt(", min order ratio %.1f, min negative drift %.2e", ratio, neg);
  return o;
}

Outcome c10() {
  IdentityOptions io;
  io.n_max = 4;
  io.p_max = 3;
  io.trials = 10;
  io.weitzenbock_trials = 10;
  const Construction c = construct("hopf-stackel");
  ClassReport cr1, cr2;
  const std::string v1 = to_json(verify_construction(c, 30, c.tol, kSeed, &cr1), cr1);
  const std::string v2 = to_json(verify_construction(c, 30, c.tol, kSeed, &cr2), cr2);
  const std::string i1 = to_json(identity_suite(io)), i2 = to_json(identity_suite(io));
  const DriftTable d1 = drift_table(c.field, 3, 1000, 1e-3, kSeed), d2 = drift_table(c.field, 3, 1000, 1e-3, kSeed);
  SuiteReport empty;
  empty.suite = "geodesic";
  const std::string g1 = to_json(empty, d1), g2 = to_json(empty, d2);
  io.seed = kSeed + 1;
  const bool seed_matters = to_json(identity_suite(io)) != i1;
  Outcome o;
  o.pass = v1 == v2 && i1 == i2 && g1 == g2 && seed_matters;
  o.detail = fmt("verify %s, identities %s, geodesic %s, other seed %s", v1 == v2 ? "identical" : "DIFFER",
                 i1 == i2 ? "identical" : "DIFFER", g1 == g2 ? "identical" : "DIFFER",
                 seed_matters ? "differs" : "SAME");
  return o;
}

}  // namespace

int main() {
  std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
