#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ktensor/analysis.hpp"

namespace ktensor {

using nlohmann::ordered_json;

void SuiteReport::add(std::string name, double residual, double tol) {
  cases.push_back({std::move(name), residual, tol, true, std::isfinite(residual) && residual <= tol});
}

void SuiteReport::add_expected_fail(std::string name, double residual, double tol, double factor) {
  const double threshold = factor * tol;
  cases.push_back({std::move(name), residual, threshold, false, std::isfinite(residual) && residual >= threshold});
}

void SuiteReport::add_flag(std::string name, bool ok) { cases.push_back({std::move(name), 0.0, 0.0, true, ok}); }

void SuiteReport::append(const SuiteReport& other, const std::string& prefix) {
  for (auto c : other.cases) {
    c.name = prefix + c.name;
    cases.push_back(std::move(c));
  }
}

void SuiteReport::finalize() {
  max_residual = 0.0;
  pass = true;
  for (const auto& c : cases) {
    if (!c.expect_pass) continue;
    if (c.tolerance == 0.0) {
      if (!c.pass) max_residual = std::max(max_residual, std::nextafter(tolerance, INFINITY));
      continue;
    }
    double v = std::isfinite(c.max_residual) ? c.max_residual : INFINITY;
    if (c.tolerance > 0.0 && tolerance > 0.0) v *= tolerance / c.tolerance;
    if (!c.pass) v = std::max(v, std::nextafter(tolerance, INFINITY));
    max_residual = std::max(max_residual, v);
    pass = pass && c.pass;
  }
}

namespace {

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

namespace {

ordered_json suite_json(const SuiteReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["tolerance"] = number(r.tolerance);
  j["trials"] = r.trials;
  j["max_residual"] = number(r.max_residual);
  ordered_json cases = ordered_json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"name", c.name},
                     {"max_residual", number(c.max_residual)},
                     {"tolerance", number(c.tolerance)},
                     {"expect", c.expect_pass ? "pass" : "fail"},
                     {"pass", c.pass}});
  j["cases"] = cases;
  j["pass"] = r.pass;
  return j;
}

}  // namespace

std::string to_json(const SuiteReport& r) { return suite_json(r).dump(2) + "\n"; }

std::string to_text(const SuiteReport& r, bool failures_only) {
  std::ostringstream os;
  os << std::setprecision(3);
  int failed = 0;
  for (const auto& c : r.cases) {
    if (!c.pass) ++failed;
    if (failures_only && c.pass) continue;
    os << (c.pass ? "  ok    " : "  FAIL  ") << c.name;
    if (c.tolerance > 0.0)
      os << "  residual " << c.max_residual << (c.expect_pass ? "  tol " : "  must reach ") << c.tolerance;
    os << "\n";
  }
  os << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << "  (" << r.cases.size() - failed << "/" << r.cases.size()
     << " cases, max residual " << r.max_residual << ", tol " << r.tolerance << ", seed " << r.seed << ")\n";
  return os.str();
}

namespace {

ordered_json residual_json(const PointResiduals& m) {
  return {{"killing", number(m.killing)},       {"conformal", number(m.conformal)},
          {"trace", number(m.trace)},           {"divergence", number(m.divergence)},
          {"special", number(m.special)},       {"codazzi", number(m.codazzi)},
          {"p1", number(m.p1)},                 {"p2", number(m.p2)},
          {"p3", number(m.p3)},                 {"two_tensor", number(m.two_tensor)},
          {"special1", number(m.special1)}};
}

ordered_json opt_flag(const std::optional<bool>& b) { return b ? ordered_json(*b) : ordered_json(nullptr); }

}  // namespace

namespace {

ordered_json class_json(const ClassReport& r) {
  ordered_json j;
  j["field"] = r.field;
  j["manifold"] = r.manifold;
  j["degree"] = r.degree;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = r.tol;
  j["residuals"] = residual_json(r.max);
  j["verdicts"] = {{"killing", r.killing},
                   {"conformal", r.conformal},
                   {"trace_free", r.trace_free},
                   {"divergence_free", r.divergence_free},
                   {"special", r.special},
                   {"stackel", r.stackel},
                   {"codazzi", r.codazzi},
                   {"p1_zero", opt_flag(r.p1_zero)},
                   {"two_tensor", opt_flag(r.two_tensor)},
                   {"special1", opt_flag(r.special1)}};
  j["implications_hold"] = r.implications_hold;
  return j;
}

}  // namespace

std::string to_json(const ClassReport& r) { return class_json(r).dump(2) + "\n"; }

std::string to_json(const SuiteReport& r, const ClassReport& c) {
  ordered_json j = suite_json(r);
  j["classification"] = class_json(c);
  return j.dump(2) + "\n";
}

std::string to_json(const SuiteReport& r, const DriftTable& t) {
  ordered_json j = suite_json(r);
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < t.runs.size(); ++i) {
    const auto& d = t.runs[i];
    rows.push_back({{"index", i},
                    {"drift", number(d.drift)},
                    {"f0", number(d.f0)},
                    {"steps", d.steps_done},
                    {"left_domain", d.left_domain}});
  }
  j["field"] = t.field;
  j["manifold"] = t.manifold;
  j["trajectories"] = rows;
  return j.dump(2) + "\n";
}

std::string to_text(const DriftTable& t) {
  std::ostringstream os;
  os << t.field << " on " << t.manifold << "\n";
  os << "  traj  drift        F(0)         steps  left-domain\n";
  for (std::size_t i = 0; i < t.runs.size(); ++i) {
    const auto& d = t.runs[i];
    os << "  " << std::setw(4) << i << "  " << std::setw(11) << std::scientific << std::setprecision(3) << d.drift
       << "  " << std::setw(11) << d.f0 << "  " << std::setw(5) << d.steps_done << "  " << (d.left_domain ? "yes" : "no")
       << "\n";
  }
  return os.str();
}

std::string to_text(const ClassReport& r) {
  std::ostringstream os;
  os << std::setprecision(3);
  auto line = [&](const char* name, bool v, double res) {
    os << "  " << std::left << std::setw(18) << name << (v ? "yes" : "no ") << "  max residual " << res << "\n";
  };
  os << r.field << " on " << r.manifold << " (degree " << r.degree << ", " << r.samples << " samples, tol " << r.tol
     << ", seed " << r.seed << ")\n";
  line("killing", r.killing, r.max.killing);
  line("conformal killing", r.conformal, r.max.conformal);
  line("trace-free", r.trace_free, r.max.trace);
  line("divergence-free", r.divergence_free, r.max.divergence);
  line("special", r.special, r.max.special);
  line("stackel", r.stackel, std::fmax(r.max.killing, r.max.trace));
  line("codazzi", r.codazzi, r.max.codazzi);
  if (r.two_tensor) line("dtrK = 2 deltaK", *r.two_tensor, r.max.two_tensor);
  if (!r.implications_hold) os << "  warning: verdict implications violated\n";
  return os.str();
}

}  // namespace ktensor
