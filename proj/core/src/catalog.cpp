#include "ktensor/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ktensor {

namespace {

constexpr int kMaxDim = 8;

int parse_dim(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad manifold key: " + key);
  }
  if (used != s.size() || n < 2 || n > kMaxDim) throw ConfigError("bad manifold dimension in key: " + key);
  return n;
}

DomainPiece box(int dim, double lo, double hi) {
  DomainPiece p;
  p.kind = DomainPiece::Kind::Box;
  p.dim = dim;
  p.lo = lo;
  p.hi = hi;
  return p;
}

DomainPiece ball(int dim, double radius, double sample_radius) {
  DomainPiece p;
  p.kind = DomainPiece::Kind::Ball;
  p.dim = dim;
  p.radius = radius;
  p.sample_radius = sample_radius;
  return p;
}

// Conformally flat metric c(|x|^2) delta on a block of coordinates.
template <class T, class C>
void conformal_block(Matrix<T>& g, const Point<T>& x, int offset, int dim, C factor) {
  T r2(0.0);
  for (int i = 0; i < dim; ++i) r2 += x[offset + i] * x[offset + i];
  const T c = factor(r2);
  for (int i = 0; i < dim; ++i) g(offset + i, offset + i) = c;
}

ManifoldPtr make_chart(std::string key, int dim, MetricFn metric, Domain domain) {
  return std::make_shared<const Manifold>(std::move(key), Chart(dim, std::move(metric), std::move(domain)));
}

}  // namespace

ManifoldPtr euclidean(int n) {
  auto fn = MetricFn::make([n](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    return Matrix<T>::identity(n);
  });
  return make_chart("euclidean:" + std::to_string(n), n, fn, Domain{{box(n, -1.0, 1.0)}});
}

ManifoldPtr flat_torus(int n) {
  auto fn = MetricFn::make([n](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    return Matrix<T>::identity(n);
  });
  return make_chart("torus:" + std::to_string(n), n, fn, Domain{{box(n, 0.0, 2.0 * std::numbers::pi)}});
}

ManifoldPtr hyperbolic(int n) {
  auto fn = MetricFn::make([n](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    Matrix<T> g(n, n);
    conformal_block(g, x, 0, n, [](const T& r2) {
      const T s = 1.0 - r2;
      return 4.0 / (s * s);
    });
    return g;
  });
  return make_chart("hyperbolic:" + std::to_string(n), n, fn, Domain{{ball(n, 1.0, 0.6)}});
}

ManifoldPtr sphere(int n, double radius) {
  EmbeddedSpheres::Block b;
  b.dim = n;
  b.radius = radius;
  std::string key = "sphere:" + std::to_string(n);
  if (radius != 1.0) key += "@" + std::to_string(radius);
  return std::make_shared<const Manifold>(key, EmbeddedSpheres({b}));
}

ManifoldPtr sphere_stereographic(int n, double radius) { return chart_form(sphere(n, radius)); }

ManifoldPtr chart_form(const ManifoldPtr& m) {
  if (!m->is_embedded()) return m;
  const auto blocks = m->spheres().blocks();
  const int n = m->dim();
  auto metric = MetricFn::make([blocks, n](const auto& y) {
    using T = scalar_of_point<decltype(y)>;
    Matrix<T> g(n, n);
    for (const auto& b : blocks) {
      const double r2 = b.radius * b.radius;
      conformal_block(g, y, b.frame_offset, b.dim, [r2](const T& s) {
        const T d = 1.0 + s;
        return 4.0 * r2 / (d * d);
      });
    }
    return g;
  });
  // Inverse stereographic projection from the last ambient axis.
  auto phi = PointMapFn::make([blocks, m](const auto& y) {
    using T = scalar_of_point<decltype(y)>;
    Point<T> x(m->rep_dim(), T(0.0));
    for (const auto& b : blocks) {
      T s(0.0);
      for (int i = 0; i < b.dim; ++i) s += y[b.frame_offset + i] * y[b.frame_offset + i];
      const T inv = 1.0 / (1.0 + s);
      for (int i = 0; i < b.dim; ++i) x[b.rep_offset + i] = b.radius * 2.0 * y[b.frame_offset + i] * inv;
      x[b.rep_offset + b.dim] = b.radius * (s - 1.0) * inv;
    }
    return x;
  });
  Domain domain;
  for (const auto& b : blocks) {
    DomainPiece p = ball(b.dim, 1e9, 1.5);
    p.offset = b.frame_offset;
    domain.pieces.push_back(p);
  }
  std::string key = (blocks.size() == 1 && blocks[0].radius == 1.0) ? "sphere-stereo:" + std::to_string(n)
                                                                      : "stereo(" + m->key() + ")";
  auto chart = std::make_shared<Manifold>(key, Chart(n, metric, domain));
  chart->source = m;
  chart->to_source = phi;
  return chart;
}

ManifoldPtr product(const ManifoldPtr& a, const ManifoldPtr& b) {
  const std::string key = "product:" + a->key() + "," + b->key();
  if (a->is_embedded() && b->is_embedded()) {
    std::vector<EmbeddedSpheres::Block> blocks = a->spheres().blocks();
    for (auto blk : b->spheres().blocks()) blocks.push_back(blk);
    auto m = std::make_shared<Manifold>(key, EmbeddedSpheres(blocks));
    m->factors = {{a, 0, 0}, {b, a->rep_dim(), a->dim()}};
    return m;
  }
  const ManifoldPtr ca = chart_form(a);
  const ManifoldPtr cb = chart_form(b);
  const int na = ca->dim();
  const int nb = cb->dim();
  const Chart cha = ca->chart();
  const Chart chb = cb->chart();
  auto metric = MetricFn::make([cha, chb, na, nb](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    Point<T> xa(x.begin(), x.begin() + na);
    Point<T> xb(x.begin() + na, x.end());
    const Matrix<T> ga = cha.metric(xa);
    const Matrix<T> gb = chb.metric(xb);
    Matrix<T> g(na + nb, na + nb);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) g(i, j) = ga(i, j);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) g(na + i, na + j) = gb(i, j);
    return g;
  });
  Domain domain = cha.domain();
  for (auto p : chb.domain().shifted(na).pieces) domain.pieces.push_back(p);
  auto m = std::make_shared<Manifold>(key, Chart(na + nb, metric, domain));
  m->factors = {{ca, 0, 0}, {cb, na, na}};
  return m;
}

ManifoldPtr conformal_bump(const ManifoldPtr& base) {
  const ManifoldPtr cb = chart_form(base);
  const Chart ch = cb->chart();
  auto f = ScalarFn::make([](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    T r2(0.0);
    for (const auto& c : x) r2 += c * c;
    const T u = 1.0 - 0.25 * r2;
    return 0.3 * u * u;
  });
  auto metric = MetricFn::make([ch, f](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    using std::exp;
    Matrix<T> g = ch.metric(x);
    g *= exp(2.0 * f.template get<T>()(x));
    return g;
  });
  auto m = std::make_shared<Manifold>("conformal:bump:" + base->key(), Chart(cb->dim(), metric, ch.domain()));
  m->conformal_base = cb;
  m->conformal_f = f;
  return m;
}

ManifoldPtr make_manifold(const std::string& key) {
  auto starts = [&](const std::string& prefix) { return key.rfind(prefix, 0) == 0; };
  if (starts("euclidean:")) return euclidean(parse_dim(key.substr(10), key));
  if (starts("sphere-stereo:")) return sphere_stereographic(parse_dim(key.substr(14), key));
  if (starts("sphere:")) return sphere(parse_dim(key.substr(7), key));
  if (starts("hyperbolic:")) return hyperbolic(parse_dim(key.substr(11), key));
  if (starts("torus:")) return flat_torus(parse_dim(key.substr(6), key));
  if (starts("conformal:bump:")) return conformal_bump(make_manifold(key.substr(15)));
  if (starts("product:")) {
    const std::string rest = key.substr(8);
    for (std::size_t pos = rest.find(','); pos != std::string::npos; pos = rest.find(',', pos + 1)) {
      ManifoldPtr a, b;
      try {
        a = make_manifold(rest.substr(0, pos));
        b = make_manifold(rest.substr(pos + 1));
      } catch (const ConfigError&) {
        continue;
      }
      if (a->dim() + b->dim() > 2 * kMaxDim) break;
      return product(a, b);
    }
    throw ConfigError("bad product key: " + key);
  }
  throw ConfigError("unknown manifold key: " + key);
}

TensorField pull_back_to_chart(const TensorField& k, const ManifoldPtr& chart) {
  if (!chart->source || chart->source->key() != k.base()->key())
    throw ShapeError("pull_back_to_chart: chart is not a coordinate form of the field's manifold");
  const Manifold* c = chart.get();
  auto rep = [k, c](const auto& y) {
    using T = scalar_of_point<decltype(y)>;
    const Point<T> x = c->to_source.template get<T>()(y);
    Matrix<T> jac(static_cast<int>(x.size()), static_cast<int>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto xd = c->to_source.template get<Dual<T>>()(seed_direction(y, i));
      for (std::size_t a = 0; a < x.size(); ++a) jac(static_cast<int>(a), static_cast<int>(i)) = xd[a].d;
    }
    return transform(k.rep(x), jac);
  };
  return make_field<2>(chart, k.degree(), rep, k.name(), k.order());
}

TensorField conformal_transport(const TensorField& k, const ManifoldPtr& conformal) {
  if (!conformal->conformal_base) throw ShapeError("conformal_transport: target is not a conformal rescaling");
  TensorField src = k;
  if (k.base()->is_embedded()) src = pull_back_to_chart(k, conformal->conformal_base);
  if (src.base()->key() != conformal->conformal_base->key())
    throw ShapeError("conformal_transport: field lives on a different manifold");
  const Manifold* c = conformal.get();
  const int p = k.degree();
  auto rep = [src, c, p](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    using std::exp;
    return src.rep(x) * exp((2.0 * p) * c->conformal_f.template get<T>()(x));
  };
  return make_field<2>(conformal, p, rep, k.name(), k.order());
}

std::vector<std::string> catalog_key_forms() {
  return {"euclidean:N", "sphere:N", "sphere-stereo:N", "hyperbolic:N", "torus:N", "product:A,B", "conformal:bump:A"};
}

}  // namespace ktensor
