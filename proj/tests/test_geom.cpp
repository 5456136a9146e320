#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ktensor/catalog.hpp"
#include "ktensor/curvature.hpp"
#include "ktensor/geodesic.hpp"
#include "ktensor/random.hpp"
#include "ktensor/residuals.hpp"
#include "oracle.hpp"

using namespace ktensor;

namespace {

// K(x) = A + x.B + x.x.C in representation coordinates.
TensorField polynomial_field(const ManifoldPtr& m, int p, Rng& rng) {
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
  }, "poly");
}

double max_slot(const FrameTensor& t) {
  double m = 0.0;
  for (const auto& s : t.slots) m = std::fmax(m, max_abs(s));
  return m;
}

const char* kCurvedKeys[] = {"sphere:3", "sphere-stereo:2", "hyperbolic:3", "product:sphere:2,hyperbolic:2",
                             "conformal:bump:euclidean:3", "product:sphere:2,sphere:2"};

}  // namespace

TEST_CASE("catalog keys parse and reject") {
  CHECK(make_manifold("euclidean:3")->dim() == 3);
  CHECK(make_manifold("sphere:3")->rep_dim() == 4);
  CHECK(make_manifold("product:sphere:2,sphere:2")->dim() == 4);
  CHECK(make_manifold("product:product:sphere:2,euclidean:2,torus:2")->dim() == 6);
  CHECK(make_manifold("conformal:bump:sphere:2")->dim() == 2);
  CHECK_THROWS_AS(make_manifold("euclidean:1"), ConfigError);
  CHECK_THROWS_AS(make_manifold("klein:2"), ConfigError);
  CHECK_THROWS_AS(make_manifold("product:sphere:2"), ConfigError);
  CHECK_THROWS_AS(make_manifold("sphere:x"), ConfigError);
}

TEST_CASE("christoffel symbols") {
  auto e = make_manifold("euclidean:3");
  Rng rng(1);
  for (const auto& g : e->chart().christoffel(e->sample(rng))) CHECK(max_abs(g) == 0.0);
  auto s = make_manifold("sphere-stereo:2");
  for (const auto& g : s->chart().christoffel(std::vector<double>{0.0, 0.0})) CHECK(max_abs(g) < 1e-15);
  auto h = make_manifold("conformal:bump:hyperbolic:3");
  auto gam = h->chart().christoffel(h->sample(rng));
  for (const auto& g : gam) CHECK(max_abs(g - g.transpose()) == 0.0);
}

TEST_CASE("frames are orthonormal") {
  auto s = make_manifold("sphere-stereo:2");
  Matrix<double> e = s->frame(std::vector<double>{0.0, 0.0});
  Matrix<double> half = Matrix<double>::identity(2);
  half *= 0.5;
  CHECK(max_abs(e - half) < 1e-15);
  Rng rng(2);
  for (const char* key : kCurvedKeys) {
    auto m = make_manifold(key);
    for (int t = 0; t < 20; ++t) CHECK(m->frame_gram_residual(m->sample(rng)) <= 1e-13);
  }
}

TEST_CASE("metric derivatives agree with finite differences") {
  Rng rng(3);
  for (const char* key : {"hyperbolic:3", "sphere-stereo:3", "conformal:bump:euclidean:3", "conformal:bump:sphere:2"}) {
    auto m = make_manifold(key);
    for (int t = 0; t < 5; ++t) CHECK(metric_derivative_selftest(m->chart(), m->sample(rng)) <= 1e-6);
  }
}

TEST_CASE("metric field is parallel") {
  Rng rng(4);
  for (const char* key : kCurvedKeys) {
    auto m = make_manifold(key);
    auto g = metric_field(m);
    for (int t = 0; t < 5; ++t) {
      auto x = m->sample(rng);
      CHECK(max_slot(nabla(g, x)) < 1e-12);
      CHECK(max_abs(d_op(g, x)) < 1e-12);
      CHECK(max_abs(g.eval(x) - SymTensor::metric(m->dim())) < 1e-12);
    }
  }
}

TEST_CASE("x.k0 on flat space") {
  const int n = 3;
  auto m = euclidean(n);
  Rng rng(5);
  const auto k0 = random_vector(n, rng);
  auto k = make_field(m, 2, [k0](const auto& x) {
    using T = scalar_of_point<decltype(x)>;
    std::vector<T> kv(k0.begin(), k0.end());
    return sym_product(BasicSymTensor<T>::vector(x), BasicSymTensor<T>::vector(kv));
  }, "x.k0");
  const SymTensor kt = SymTensor::vector(k0);
  for (int t = 0; t < 5; ++t) {
    auto x = m->sample(rng);
    FrameTensor dk = nabla(k, x);
    for (int i = 0; i < n; ++i) CHECK(max_abs(dk.slots[i] - mult_basis(i, kt)) < 1e-14);
    CHECK(max_abs(d_op(k, x) - mult_L(kt)) < 1e-13);
    CHECK(max_abs(delta_op(k, x) + kt * double(n + 1)) < 1e-13);
  }
}

TEST_CASE("curvature sign and symmetries") {
  Rng rng(6);
  auto s2 = make_manifold("sphere:2");
  auto r = s2->riemann(s2->sample(rng));
  CHECK(r(0, 1, 1, 0) == doctest::Approx(1.0));
  CHECK(r.scal == doctest::Approx(2.0));
  auto st = make_manifold("sphere-stereo:2");
  auto rs = st->riemann(st->sample(rng));
  CHECK(std::fabs(rs(0, 1, 1, 0) - 1.0) < 1e-8);
  auto h2 = make_manifold("hyperbolic:2");
  for (int t = 0; t < 10; ++t) CHECK(std::fabs(h2->riemann(h2->sample(rng))(0, 1, 1, 0) + 1.0) < 1e-8);
  auto e = make_manifold("euclidean:3");
  CHECK(e->riemann(e->sample(rng)).max_abs() == 0.0);
  for (const char* key : kCurvedKeys) {
    auto m = make_manifold(key);
    auto x = m->sample(rng);
    auto rm = m->riemann(x);
    const double tol = m->is_embedded() ? 1e-12 : 1e-8;
    CHECK(rm.symmetry_residual() <= tol);
    CHECK(rm.bianchi_residual() <= tol);
  }
}

TEST_CASE("q(R) against the full-array oracle") {
  Rng rng(7);
  for (int n = 2; n <= 4; ++n) {
    auto m = sphere(n);
    auto r = m->riemann(m->sample(rng));
    for (int p = 1; p <= 3; ++p) {
      const SymTensor k = random_trace_free(n, p, rng);
      const SymTensor q = qR_act(r, k);
      CHECK(oracle::max_diff(oracle::q_full(r, oracle::expand(k)), q) < 1e-12);
      CHECK(max_abs(q - k * double(p * (n + p - 2))) < 1e-12);
    }
  }
  auto b = make_manifold("conformal:bump:euclidean:3");
  auto x = b->sample(rng);
  auto r = b->riemann(x);
  const SymTensor v = SymTensor::vector(random_vector(3, rng));
  CHECK(max_abs(qR_act(r, v) - SymTensor::vector(mat_vec(r.ricci, components(v)))) < 1e-10);
  for (int p = 0; p <= 3; ++p) {
    const SymTensor a = random_tensor(3, p, rng), c = random_tensor(3, p, rng);
    CHECK(std::fabs(inner(qR_act(r, a), c) - inner(a, qR_act(r, c))) <= 1e-10 * norm(a) * norm(c));
    if (p >= 1) CHECK(oracle::max_diff(oracle::q_full(r, oracle::expand(a)), qR_act(r, a)) < 1e-10);
  }
}

TEST_CASE("q(R) on 2-tensors through R-ring") {
  Rng rng(8);
  auto s3 = sphere(3);
  auto r = s3->riemann(s3->sample(rng));
  const SymTensor g = SymTensor::metric(3);
  CHECK(max_abs(r_ring(r, g) + SymTensor::metric(3) * 2.0) < 1e-14);  // -Ric on the unit 3-sphere
  CHECK(qrh_residual(r, g) < 1e-14);
  CHECK(qrh_residual(r, random_tensor(3, 2, rng)) < 1e-8);
  auto b = make_manifold("conformal:bump:euclidean:3");
  CHECK(qrh_residual(b->riemann(b->sample(rng)), random_tensor(3, 2, rng)) < 1e-8);
}

TEST_CASE("non-positive curvature inequality on the Poincare ball") {
  Rng rng(9);
  for (int n = 2; n <= 4; ++n) {
    auto m = hyperbolic(n);
    for (int t = 0; t < 20; ++t) {
      auto r = m->riemann(m->sample(rng));
      const SymTensor k = random_trace_free(n, 1 + t % 3, rng);
      CHECK(inner(qR_act(r, k), k) <= 1e-10);
    }
  }
}

TEST_CASE("Lichnerowicz identity") {
  Rng rng(10);
  auto flat = euclidean(3);
  auto s2 = sphere(2);
  for (int p = 1; p <= 3; ++p) {
    auto kf = polynomial_field(flat, p, rng);
    auto ks = polynomial_field(s2, p, rng);
    for (int t = 0; t < 3; ++t) {
      CHECK(max_abs(lichnerowicz_defect(kf, flat->sample(rng))) <= 1e-9);
      const auto x = s2->sample(rng);
      CHECK(max_abs(lichnerowicz_defect(ks, x)) <= 1e-6);
      CHECK(max_abs(qR_act(s2->riemann(x), ks.eval(x))) > 1e-2);  // the curvature term matters
    }
  }
  auto h = make_manifold("conformal:bump:euclidean:2");
  auto kh = polynomial_field(h, 2, rng);
  CHECK(max_abs(lichnerowicz_defect(kh, h->sample(rng))) <= 1e-6);
  CHECK(max_abs(lichnerowicz_defect(metric_field(s2), s2->sample(rng))) <= 1e-12);
}

TEST_CASE("modified Ricci Killing residual") {
  Rng rng(11);
  for (const char* key : {"sphere:3", "euclidean:3", "sphere-stereo:3"}) {
    auto m = make_manifold(key);
    auto x = m->sample(rng);
    CHECK(ricci_killing_residual(m, x, random_vector(m->dim(), rng)) <= 1e-8);
  }
  auto b = make_manifold("conformal:bump:euclidean:3");
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) worst = std::fmax(worst, ricci_killing_residual(b, b->sample(rng), random_vector(3, rng)));
  CHECK(worst > 1e-3);
}

TEST_CASE("pull-back and conformal transport") {
  Rng rng(12);
  auto s2 = sphere(2);
  auto chart = chart_form(s2);
  auto k = polynomial_field(s2, 2, rng);
  auto kc = pull_back_to_chart(k, chart);
  for (int t = 0; t < 5; ++t) {
    auto y = chart->sample(rng);
    auto x = chart->to_source.get<double>()(y);
    CHECK(std::fabs(norm(kc.eval(y)) - norm(k.eval(x))) < 1e-12);
    CHECK(std::fabs(norm(d_op(kc, y)) - norm(d_op(k, x))) < 1e-10);
  }
  auto conf = conformal_bump(s2);
  auto kt = conformal_transport(k, conf);
  for (int t = 0; t < 5; ++t) {
    auto y = conf->sample(rng);
    const double f = conf->conformal_f.get<double>()(y);
    CHECK(std::fabs(norm(kt.eval(y)) - std::exp(2.0 * f) * norm(kc.eval(y))) < 1e-11);
  }
}

TEST_CASE("geodesic drift") {
  Rng rng(13);
  for (const char* key : {"sphere:2", "hyperbolic:2", "product:sphere:2,sphere:2"}) {
    auto m = make_manifold(key);
    auto g = metric_field(m);
    auto r = geodesic_drift(g, random_start(*m, rng), 2000, 1e-3);
    CHECK_FALSE(r.left_domain);
    CHECK(r.drift <= 1e-9);
  }
  auto s2 = sphere(2);
  auto k = polynomial_field(s2, 2, rng);
  CHECK(geodesic_drift(k, random_start(*s2, rng), 2000, 1e-3).drift >= 1e-3);
}

TEST_CASE("special constant recovers k from X.k") {
  Rng rng(11);
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      CAPTURE(n);
      CAPTURE(p);
      const SymTensor k0 = random_tensor(n, p - 1, rng);
      // ∇_i K = e_i . k0, built from the full-array product
      FrameTensor dk(n, p);
      oracle::Full div(n, p - 1);
      for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        const oracle::Full slot = oracle::product(oracle::vec(e), oracle::expand(k0));
        for (std::size_t f = 0; f < slot.a.size(); ++f) {
          auto idx = slot.unflat(f);
          std::sort(idx.begin(), idx.end());
          dk.slots[i].at(std::span<const int>(idx)) = slot.a[f];
        }
        const oracle::Full c = oracle::contract(e, slot);
        for (std::size_t f = 0; f < c.a.size(); ++f) div.a[f] -= c.a[f];
      }
      // δK = -(n+p-1) k0 by brute force, so k = -δK/(n+p-1) is k0
      for (auto& v : div.a) v /= -(n + p - 1.0);
      CHECK(oracle::max_diff(div, k0) < 1e-13);
      CHECK(max_abs(special_constant(dk) - k0) < 1e-13);
    }
}
