#include "ktensor/registry.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "ktensor/residuals.hpp"

namespace ktensor {

Params params_from_text(const std::string& text) {
  Params out;
  if (text.empty()) return out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("params: expected an object");
  for (const auto& [name, v] : j.items()) {
    if (v.is_number()) {
      out[name] = {v.get<double>()};
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_number(); })) {
      out[name] = v.get<std::vector<double>>();
    } else {
      throw ConfigError("params: " + name + " must be a number or a list of numbers");
    }
  }
  return out;
}

namespace {

const std::vector<std::string> kPositive = {
    "metric",         "killing-vector",   "sphere-curvature", "sphere-curvature:weyl", "sym-product",
    "hopf-pair",      "hopf-stackel",     "l-hopf-stackel",   "killing-form:q=1",      "killing-form:q=2",
    "special-flat",   "special-killing",  "product-ckt",      "distribution-hopf",     "distribution-flat"};

const std::vector<std::string> kNegative = {
    "sphere-curvature:broken", "sym-product:broken",  "hopf-stackel:broken",      "killing-form:q=2:broken",
    "special-flat:broken",     "product-ckt:broken",  "distribution-hopf:broken"};

const std::map<std::string, std::string> kDefaults = {
    {"metric", "sphere:2"},
    {"killing-vector", "sphere:2"},
    {"sphere-curvature", "sphere:3"},
    {"sphere-curvature:weyl", "sphere:3"},
    {"sym-product", "sphere:2"},
    {"hopf-pair", "sphere:3"},
    {"hopf-stackel", "sphere:3"},
    {"l-hopf-stackel", "sphere:3"},
    {"killing-form:q=1", "sphere:2"},
    {"killing-form:q=2", "sphere:4"},
    {"special-flat", "euclidean:3"},
    {"special-killing", "euclidean:3"},
    {"product-ckt", "product:sphere:2,sphere:2"},
    {"distribution-hopf", "sphere:3"},
    {"distribution-flat", "euclidean:3"},
};

std::string family(const std::string& key) {
  const std::string suffix = ":broken";
  if (key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0)
    return key.substr(0, key.size() - suffix.size());
  return key;
}

double param(const Params& p, const std::string& name, double fallback) {
  auto it = p.find(name);
  if (it == p.end()) return fallback;
  if (it->second.size() != 1) throw ConfigError("params: " + name + " must be a single number");
  return it->second[0];
}

bool is_flat_chart(const Manifold& m) {
  if (m.is_embedded()) return false;
  Rng rng(0);
  for (int i = 0; i < 3; ++i) {
    const auto x = m.sample(rng);
    if (max_abs(m.chart().metric(x) - Matrix<double>::identity(m.dim())) != 0.0) return false;
  }
  return true;
}

bool is_round_sphere(const Manifold& m, int dim = -1) {
  return m.is_embedded() && m.spheres().blocks().size() == 1 && (dim < 0 || m.dim() == dim);
}

void require(bool ok, const std::string& key, const std::string& manifold, const std::string& what) {
  if (!ok) throw ConfigError("constructor " + key + " needs " + what + ", got " + manifold);
}

// Height gradient a - (a.x)x: a non-Killing vector field on a sphere.
TensorField gradient_field(const ManifoldPtr& m, const std::vector<double>& a) {
  return make_field(m, 1, [a](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    std::vector<T> v(a.begin(), a.end());
    return BasicSymTensor<T>::vector(v);
  }, "gradient");
}

Matrix<double> tilted_hopf(double t) {
  Matrix<double> a = quaternion_unit(1);
  a(2, 0) += t;
  a(0, 2) -= t;
  return a;
}

// ξ.ξ - (2/n)|ξ|^2 g in the frame.
TensorField hopf_tensor(const TensorField& xi, const std::string& name) {
  return map_frame(xi, 2, [](const auto& v) {
    const int n = v.dim();
    auto k = sym_product(v, v);
    auto g = decltype(k)::metric(n);
    return k - g * (inner(v, v) * (2.0 / n));
  }, name);
}

TensorField inner_field(const TensorField& a, const TensorField& b) {
  return combine_frame(a, b, 0, [](const auto& u, const auto& v) {
    using T = std::decay_t<decltype(u[0])>;
    return BasicSymTensor<T>::scalar(u.dim(), inner(u, v));
  }, "g(" + a.name() + "," + b.name() + ")");
}

PointCheck residual_check(const std::string& name, const TensorField& k, double tol, bool expect_pass,
                          double PointResiduals::*member) {
  return PointCheck{name, [k, member](const Point<double>& x) { return point_residuals(k, x).*member; }, tol,
                    expect_pass};
}

std::vector<double> random_unit(int n, Rng& rng) {
  auto v = random_vector(n, rng);
  const double l = norm2(v);
  for (auto& c : v) c /= l;
  return v;
}

}  // namespace

std::vector<std::string> registry_keys() {
  std::vector<std::string> keys = kPositive;
  keys.insert(keys.end(), kNegative.begin(), kNegative.end());
  return keys;
}

bool registry_has(const std::string& key) {
  auto keys = registry_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string default_manifold(const std::string& key) {
  if (!registry_has(key)) throw ConfigError("unknown constructor: " + key);
  return kDefaults.at(family(key));
}

double default_tolerance(const Manifold& m) { return is_flat_chart(m) ? 1e-11 : 1e-9; }

Construction construct(const std::string& key, const std::string& manifold_key, const Params& params) {
  if (!registry_has(key)) throw ConfigError("unknown constructor: " + key);
  for (const auto& [name, v] : params)
    if (name != "seed" && name != "k0" && name != "t" && name != "variant")
      throw ConfigError("unknown constructor parameter: " + name);
  const std::string fam = family(key);
  const std::string mkey = manifold_key.empty() ? default_manifold(key) : manifold_key;
  const ManifoldPtr m = make_manifold(mkey);
  Rng rng(static_cast<std::uint64_t>(param(params, "seed", 1.0)));
  const double tilt = param(params, "t", 0.5);

  Construction c{key, m, zero_field(m, 0), 1e-9, false, "", {}, {}};
  c.negative = fam != key;
  c.tol = default_tolerance(*m);
  const int n = m->dim();
  const int rep = m->rep_dim();

  if (fam == "metric") {
    c.field = metric_field(m);
    c.expect = {true, true, false, true, std::nullopt, false};
  } else if (fam == "killing-vector") {
    require(m->is_embedded() || is_flat_chart(*m), key, mkey, "a sphere or a flat chart");
    std::vector<double> b;
    if (!m->is_embedded()) b = random_vector(rep, rng);
    Matrix<double> a(rep, rep);
    if (m->is_embedded()) {
      for (const auto& blk : m->spheres().blocks()) {
        Matrix<double> s = random_skew(blk.dim + 1, rng);
        for (int i = 0; i <= blk.dim; ++i)
          for (int j = 0; j <= blk.dim; ++j) a(blk.rep_offset + i, blk.rep_offset + j) = s(i, j);
      }
    } else {
      a = random_skew(rep, rng);
    }
    c.field = killing_vector(m, a, b);
    c.expect.killing = true;
    c.expect.conformal = true;
  } else if (fam == "sphere-curvature" || fam == "sphere-curvature:weyl") {
    require(is_round_sphere(*m), key, mkey, "a round sphere");
    if (c.negative) {
      AlgCurvature raw(rep);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : raw.R) v = normal(rng);
      c.field = curvature_to_killing(m, raw).renamed("unprojected-curvature");
      c.target = "killing";
      c.expect.killing = false;
    } else {
      AlgCurvature r = random_curvature(rep, rng);
      if (fam == "sphere-curvature:weyl") {
        require(rep >= 4, key, mkey, "a sphere of dimension at least 3");
        r = weyl_part(r);
        c.field = curvature_to_killing(m, r);
        c.expect = {true, true, true, true, std::nullopt, true};
      } else {
        c.field = curvature_to_killing(m, r);
        c.expect.killing = true;
        c.expect.conformal = true;
        c.checks.push_back(residual_check("d tr K = 2 delta K", c.field, c.tol, true, &PointResiduals::two_tensor));
      }
    }
  } else if (fam == "sym-product") {
    require(is_round_sphere(*m), key, mkey, "a round sphere");
    TensorField xi = killing_vector(m, random_skew(rep, rng));
    TensorField zeta = c.negative ? gradient_field(m, random_vector(rep, rng)) : killing_vector(m, random_skew(rep, rng));
    if (c.negative) {
      c.field = field_product(xi, zeta);
      c.target = "killing";
      c.expect.killing = false;
    } else {
      c.field = sym_product_field(xi, zeta);
      c.expect.killing = true;
      c.expect.conformal = true;
      const TensorField prod = c.field;
      const TensorField g12 = inner_field(xi, zeta);
      c.checks.push_back(PointCheck{"delta(xi.zeta) = d g(xi,zeta)",
                                    [prod, g12](const Point<double>& x) {
                                      const FrameTensor dk = nabla(prod, x);
                                      return norm(divergence(dk) - d_op(g12, x)) / std::max(1.0, norm(dk));
                                    },
                                    c.tol, true});
    }
  } else if (fam == "hopf-pair" || fam == "hopf-stackel" || fam == "l-hopf-stackel" ||
             fam == "distribution-hopf") {
    require(is_round_sphere(*m, 3), key, mkey, "the round 3-sphere");
    const Matrix<double> gi = quaternion_unit(1);
    const Matrix<double> gen = c.negative ? tilted_hopf(tilt) : gi;
    TensorField xi = c.negative ? make_field(m, 1, [gen](const auto& x) {
      using T = scalar_of_point<decltype(x)>;
      std::vector<T> v(4, T(0.0));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (gen(i, j) != 0.0) v[i] += gen(i, j) * x[j];
      return BasicSymTensor<T>::vector(v);
    }, "tilted-hopf") : killing_vector(m, gen);
    if (fam == "hopf-pair") {
      TensorField xi2 = killing_vector(m, gi + quaternion_unit(2));
      const TensorField prod = sym_product_field(xi, xi2);
      const TensorField g12 = inner_field(xi, xi2);
      c.field = (prod - scaled(2.0 / n, field_product(g12, metric_field(m)))).renamed("hopf-pair");
      c.expect = {true, true, true, true, std::nullopt, true};
      c.checks.push_back(PointCheck{"g(xi1,xi2) constant",
                                    [g12](const Point<double>& x) { return norm(d_op(g12, x)); }, c.tol, true});
    } else if (fam == "hopf-stackel" || fam == "l-hopf-stackel") {
      c.field = hopf_tensor(xi, c.negative ? "tilted-hopf-tensor" : "hopf-stackel");
      if (c.negative) {
        c.target = "killing";
        c.expect.killing = false;
        c.expect.conformal = true;
        c.expect.trace_free = true;
      } else if (fam == "hopf-stackel") {
        c.expect = {true, true, true, true, std::nullopt, true};
      } else {
        const TensorField stackel = c.field;
        c.field = field_L(stackel).renamed("L(hopf-stackel)");
        c.expect.killing = true;
        c.expect.divergence_free = true;
        c.expect.trace_free = false;
        c.checks.push_back(residual_check("d L(K) = 0", c.field, c.tol, true, &PointResiduals::killing));
        c.checks.push_back(residual_check("delta L(K) = 0", c.field, c.tol, true, &PointResiduals::divergence));
      }
    } else {
      const DistributionSplit split = line_split(xi);
      c.field = distribution_stackel(split);
      c.checks.push_back(PointCheck{"projector", [split](const Point<double>& x) {
                                      return split_projector_residual(split, x);
                                    }, 1e-12, true});
      c.checks.push_back(PointCheck{"condition (d1)", [split](const Point<double>& x) {
                                      return d1_residual(split, x);
                                    }, c.tol, !c.negative});
      if (c.negative) {
        c.target = "killing";
        c.expect.killing = false;
        c.expect.trace_free = true;
      } else {
        c.expect = {true, true, true, true, std::nullopt, true};
      }
    }
  } else if (fam == "killing-form:q=1" || fam == "killing-form:q=2") {
    require(is_round_sphere(*m), key, mkey, "a round sphere");
    const int q = fam == "killing-form:q=1" ? 1 : 2;
    require(q < rep - 1 || q == 1, key, mkey, "a sphere of dimension greater than q");
    const std::vector<double> omega = random_form(rep, q, rng);
    FormField u = killing_form_sphere(m, q, omega);
    if (c.negative) {
      FormField base = u;
      u = FormField(m, q, FormField::CompsFn::make([base](const auto& x) {
        auto comps = base.comps(x);
        for (auto& v : comps) v *= 1.0 + x[0] * x[0];
        return comps;
      }), "bent-form");
      c.target = "killing";
      c.expect.killing = false;
    } else {
      c.expect.killing = true;
      c.expect.conformal = true;
    }
    c.field = killing_form_to_tensor(u);
    c.checks.push_back(PointCheck{"X _| nabla_X u = 0", [u](const Point<double>& x) {
                                    return killing_form_residual(u, x);
                                  }, c.tol, !c.negative});
  } else if (fam == "special-flat" || fam == "special-killing") {
    require(is_flat_chart(*m), key, mkey, "a flat chart");
    std::vector<double> k0 = params.count("k0") ? params.at("k0") : random_unit(n, rng);
    if (static_cast<int>(k0.size()) != n) throw ConfigError("params: k0 must have the manifold dimension");
    TensorField k = special_ckt_flat(m, k0);
    if (fam == "special-flat" && c.negative) {
      k = (k + make_field(m, 2, [n](const auto& x) {
        using T = scalar_of_point<decltype(x)>;
        T r2(0.0);
        for (const auto& v : x) r2 += v * v;
        BasicSymTensor<T> e(n, 2);
        e.at({0, 1}) = r2;
        return e;
      }, "|x|^2 e1.e2")).renamed("bent-special");
      c.field = k;
      c.target = "special";
      c.expect.special = false;
    } else if (fam == "special-flat") {
      c.field = k;
      c.expect.special = true;
      c.expect.conformal = true;
      c.expect.killing = false;
      c.checks.push_back(PointCheck{"Nijenhuis vanishes", [k](const Point<double>& x) {
                                      auto nij = nijenhuis(k, x);
                                      double w = 0.0;
                                      for (double v : nij) w = std::max(w, std::fabs(v));
                                      return w;
                                    }, c.tol, true});
    } else {
      c.field = special_to_killing(k, 8, c.tol);
      const TensorField hat = c.field;
      c.expect.killing = true;
      c.expect.conformal = true;
      c.checks.push_back(PointCheck{"Nijenhuis does not vanish", [hat](const Point<double>& x) {
                                      auto nij = nijenhuis(hat, x);
                                      double w = 0.0;
                                      for (double v : nij) w = std::max(w, std::fabs(v));
                                      return w;
                                    }, c.tol, false});
      c.checks.push_back(residual_check("d tr K = 2 delta K", hat, c.tol, true, &PointResiduals::two_tensor));
    }
  } else if (fam == "product-ckt") {
    require(m->factors.size() == 2 && m->factors[0].manifold->is_embedded() &&
                m->factors[1].manifold->is_embedded() && is_round_sphere(*m->factors[0].manifold) &&
                is_round_sphere(*m->factors[1].manifold),
            key, mkey, "a product of two round spheres");
    const ManifoldPtr m1 = m->factors[0].manifold;
    const ManifoldPtr m2 = m->factors[1].manifold;
    const int variant = static_cast<int>(param(params, "variant", 0.0));
    if (variant < 0 || variant > 2) throw ConfigError("params: variant must be 0, 1 or 2");
    TensorField k1 = variant == 1 ? metric_field(m1) : curvature_to_killing(m1, random_curvature(m1->rep_dim(), rng));
    TensorField k2 = variant == 0 ? metric_field(m2) : zero_field(m2, 2);
    std::vector<std::pair<TensorField, TensorField>> pairs;
    if (variant == 0) {
      TensorField xi = killing_vector(m1, random_skew(m1->rep_dim(), rng));
      TensorField zeta = c.negative ? gradient_field(m2, random_vector(m2->rep_dim(), rng))
                                    : killing_vector(m2, random_skew(m2->rep_dim(), rng));
      if (c.negative) {
        c.field = (field_trace_free(lift_to_product(k1, m, 0) + lift_to_product(k2, m, 1)) +
                   field_product(lift_to_product(xi, m, 0), lift_to_product(zeta, m, 1)))
                      .renamed("broken-product-ckt");
      } else {
        pairs.emplace_back(xi, zeta);
      }
    } else if (c.negative) {
      throw ConfigError("product-ckt:broken needs variant 0");
    }
    if (c.negative) {
      c.target = "conformal";
      c.expect.conformal = false;
    } else {
      c.field = product_ckt(m, k1, k2, pairs, 8, c.tol);
      c.expect.conformal = true;
      c.expect.trace_free = true;
      if (variant == 1) {
        c.expect.killing = true;
        c.expect.stackel = true;
        c.expect.divergence_free = true;
      }
    }
  } else if (fam == "distribution-flat") {
    require(is_flat_chart(*m), key, mkey, "a flat chart");
    const DistributionSplit split = coordinate_split(m, 1);
    c.field = distribution_stackel(split);
    c.expect = {true, true, true, true, std::nullopt, true};
    c.checks.push_back(PointCheck{"condition (d1)", [split](const Point<double>& x) {
                                    return d1_residual(split, x);
                                  }, c.tol, true});
  }
  return c;
}

}  // namespace ktensor
