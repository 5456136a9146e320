// ktensor command-line front end.
//
//   ktensor identities --dims 2..5 --degrees 0..4 --trials 50 --seed 42 --json out.json
//   ktensor verify --manifold sphere:3 --construct hopf-stackel --samples 100 --tol 1e-9
//   ktensor geodesic --manifold sphere:2 --construct metric --trajectories 10
//   ktensor geometry --keys sphere:2,hyperbolic:3
//   ktensor list
//
// Exit codes: 0 pass, 1 check failure, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ktensor/analysis.hpp"
#include "ktensor/catalog.hpp"
#include "ktensor/tensor_io.hpp"

using namespace ktensor;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& text, const char* what) {
  Range r;
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      r.lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      r.hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw ConfigError(std::string(what) + ": expected a..b, got '" + text + "'");
  }
  if (r.hi < r.lo) throw ConfigError(std::string(what) + ": empty range '" + text + "'");
  return r;
}

struct Output {
  std::string json_path;
  std::string format = "text";

  void check() const {
    if (format != "text" && format != "json") throw ConfigError("--format must be text or json");
  }
  void emit(const std::string& text, const std::string& json) const {
    if (format == "json")
      std::cout << json;
    else
      std::cout << text;
    if (!json_path.empty()) {
      std::ofstream f(json_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + json_path);
      f << json;
    }
  }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--json", out.json_path, "Write the JSON report to PATH");
  cmd->add_option("--format", out.format, "Stdout format: text or json")->capture_default_str();
}

struct FieldSpec {
  std::string manifold;
  std::string construct;
  std::string params;
  std::string field_file;
};

void add_field_options(CLI::App* cmd, FieldSpec& f) {
  cmd->add_option("--manifold", f.manifold, "Catalog key, e.g. sphere:3 or product:sphere:2,sphere:2");
  cmd->add_option("--construct", f.construct, "Constructor registry key (see `ktensor list`)");
  cmd->add_option("--params", f.params, "Constructor parameters as a JSON object");
  cmd->add_option("--field-file", f.field_file, "Constant field from a tensor literal (representation coordinates)");
}

// Either a registry construction or a constant field read from a file.
struct Resolved {
  std::optional<Construction> construction;
  std::optional<TensorField> field;
  const TensorField& get() const { return construction ? construction->field : *field; }
};

Resolved resolve(const FieldSpec& f, const std::string& fallback_construct) {
  Resolved r;
  if (!f.construct.empty() && !f.field_file.empty()) throw ConfigError("give --construct or --field-file, not both");
  if (!f.field_file.empty()) {
    if (f.manifold.empty()) throw ConfigError("--field-file needs --manifold");
    if (!f.params.empty()) throw ConfigError("--params only applies to --construct");
    const ManifoldPtr m = make_manifold(f.manifold);
    const SymTensor k = load_tensor_file(f.field_file);
    if (k.dim() != m->rep_dim())
      throw ConfigError("field file has dimension " + std::to_string(k.dim()) + ", manifold needs " +
                        std::to_string(m->rep_dim()));
    r.field = make_field(m, k.degree(), [k](const auto& x) {
      using T = scalar_of_point<decltype(x)>;
      return from_double<T>(k);
    }, f.field_file);
    return r;
  }
  const std::string key = f.construct.empty() ? fallback_construct : f.construct;
  if (key.empty()) throw ConfigError("give --construct or --field-file");
  r.construction = construct(key, f.manifold, params_from_text(f.params));
  return r;
}

int run_identities(const std::string& dims, const std::string& degrees, int trials, std::uint64_t seed,
                   double tol, const Output& out) {
  out.check();
  const Range n = parse_range(dims, "--dims");
  const Range p = parse_range(degrees, "--degrees");
  IdentityOptions opt;
  opt.n_min = n.lo;
  opt.n_max = n.hi;
  opt.p_min = p.lo;
  opt.p_max = p.hi;
  opt.trials = trials;
  opt.seed = seed;
  if (tol > 0.0) opt.tol = tol;
  const SuiteReport rep = identity_suite(opt);
  out.emit(to_text(rep, true), to_json(rep));
  return rep.pass ? kPass : kFail;
}

int run_verify(const FieldSpec& spec, int samples, double tol, std::uint64_t seed, const Output& out) {
  out.check();
  if (samples < 1) throw ConfigError("--samples must be positive");
  const Resolved r = resolve(spec, "");
  ClassReport cls;
  SuiteReport rep;
  if (r.construction) {
    rep = verify_construction(*r.construction, samples, tol, seed, &cls);
  } else {
    cls = classify(*r.field, samples, tol > 0.0 ? tol : default_tolerance(*r.field->base()), seed);
    rep.suite = "verify " + r.field->name() + " on " + r.field->base()->key();
    rep.trials = samples;
    rep.seed = seed;
    rep.tolerance = cls.tol;
    rep.add_flag("verdict implications", cls.implications_hold);
    rep.finalize();
  }
  out.emit(to_text(cls) + to_text(rep), to_json(rep, cls));
  return rep.pass ? kPass : kFail;
}

int run_geodesic(const FieldSpec& spec, int trajectories, int steps, double dt, double tol, std::uint64_t seed,
                 const Output& out) {
  out.check();
  if (trajectories < 1 || steps < 1 || !(dt > 0.0)) throw ConfigError("need positive --trajectories, --steps, --dt");
  const Resolved r = resolve(spec, "metric");
  const TensorField& k = r.get();
  const DriftTable t = drift_table(k, trajectories, steps, dt, seed);
  // Fields not expected to be Killing must visibly drift.
  const bool conserved = !r.construction || (!r.construction->negative && r.construction->expect.killing.value_or(false));
  SuiteReport rep;
  rep.suite = "geodesic " + k.name() + " on " + k.base()->key();
  rep.trials = trajectories;
  rep.seed = seed;
  rep.tolerance = tol;
  if (conserved) {
    for (std::size_t i = 0; i < t.runs.size(); ++i) rep.add("trajectory " + std::to_string(i), t.runs[i].drift, tol);
  } else {
    rep.add_expected_fail("max drift", t.max_drift(), 1e-3, 1.0);
  }
  rep.finalize();
  out.emit(to_text(t) + to_text(rep, true), to_json(rep, t));
  return rep.pass ? kPass : kFail;
}

int run_geometry(const std::string& keys, int samples, int trajectories, double tol, std::uint64_t seed,
                 const Output& out) {
  out.check();
  GeometryOptions opt;
  if (!keys.empty()) {
    opt.keys.clear();
    // product keys contain commas; split on ';'
    std::size_t start = 0;
    while (start <= keys.size()) {
      const auto end = keys.find(';', start);
      const std::string k = keys.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (!k.empty()) opt.keys.push_back(k);
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  for (const auto& k : opt.keys) make_manifold(k);
  opt.samples = samples;
  opt.trajectories = trajectories;
  opt.tol = tol;
  opt.seed = seed;
  const SuiteReport rep = geometry_suite(opt);
  out.emit(to_text(rep, true), to_json(rep));
  return rep.pass ? kPass : kFail;
}

int run_list() {
  std::cout << "manifolds:\n";
  for (const auto& k : catalog_key_forms()) std::cout << "  " << k << "\n";
  std::cout << "constructors (default manifold):\n";
  for (const auto& k : registry_keys()) std::cout << "  " << k << "  (" << default_manifold(k) << ")\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ktensor: Killing and conformal Killing tensors, numerically"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  Output out;

  auto* ids = app.add_subcommand("identities", "Algebraic identity suite");
  std::string dims = "2..5", degrees = "0..4";
  int trials = 50;
  double id_tol = 1e-10;
  ids->add_option("--dims", dims, "Dimension range a..b")->capture_default_str();
  ids->add_option("--degrees", degrees, "Degree range a..b")->capture_default_str();
  ids->add_option("--trials", trials, "Random trials per (n,p)")->capture_default_str();
  ids->add_option("--tol", id_tol, "Relative residual tolerance")->capture_default_str();
  ids->add_option("--seed", seed, "Seed")->capture_default_str();
  add_output(ids, out);

  auto* ver = app.add_subcommand("verify", "Classify a constructed or file-supplied field");
  FieldSpec vspec;
  int samples = 100;
  double ver_tol = 0.0;
  add_field_options(ver, vspec);
  ver->add_option("--samples", samples, "Sample points")->capture_default_str();
  ver->add_option("--tol", ver_tol, "Tolerance (default: 1e-9 curved, 1e-11 flat)");
  ver->add_option("--seed", seed, "Seed")->capture_default_str();
  add_output(ver, out);

  auto* geo = app.add_subcommand("geodesic", "First-integral drift along random geodesics");
  FieldSpec gspec;
  int trajectories = 10, steps = 10000;
  double dt = 1e-3, geo_tol = 1e-7;
  add_field_options(geo, gspec);
  geo->add_option("--trajectories", trajectories, "Number of random initial conditions")->capture_default_str();
  geo->add_option("--steps", steps, "RK4 steps")->capture_default_str();
  geo->add_option("--dt", dt, "Step size")->capture_default_str();
  geo->add_option("--tol", geo_tol, "Drift tolerance for Killing fields")->capture_default_str();
  geo->add_option("--seed", seed, "Seed")->capture_default_str();
  add_output(geo, out);

  auto* gs = app.add_subcommand("geometry", "Catalog, constructor and conformal-invariance checks");
  std::string keys;
  int gs_samples = 100, gs_traj = 0;
  double gs_tol = 1e-9;
  gs->add_option("--keys", keys, "Manifold keys separated by ';' (default: euclidean:3;sphere:2;sphere:3;hyperbolic:3)");
  gs->add_option("--samples", gs_samples, "Sample points")->capture_default_str();
  gs->add_option("--trajectories", gs_traj, "Geodesic trajectories per field (0 skips)")->capture_default_str();
  gs->add_option("--tol", gs_tol, "Geometric tolerance")->capture_default_str();
  gs->add_option("--seed", seed, "Seed")->capture_default_str();
  add_output(gs, out);

  auto* list = app.add_subcommand("list", "List manifold key forms and constructors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (ids->parsed()) return run_identities(dims, degrees, trials, seed, id_tol, out);
    if (ver->parsed()) return run_verify(vspec, samples, ver_tol, seed, out);
    if (geo->parsed()) return run_geodesic(gspec, trajectories, steps, dt, geo_tol, seed, out);
    if (gs->parsed()) return run_geometry(keys, gs_samples, gs_traj, gs_tol, seed, out);
    if (list->parsed()) return run_list();
  } catch (const VerificationError& e) {
    std::cerr << "ktensor: " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << "ktensor: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
