#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "ktensor/frame_tensor.hpp"
#include "ktensor/random.hpp"
#include "ktensor/symalg.hpp"
#include "ktensor/tensor_io.hpp"
#include "oracle.hpp"

using namespace ktensor;

namespace {

double rel_diff(const SymTensor& a, const SymTensor& b) {
  return norm(a - b) / std::fmax(1.0, std::fmax(norm(a), norm(b)));
}

SymTensor vec(std::vector<double> v) { return SymTensor::vector(v); }

}  // namespace

TEST_CASE("index table enumerates sorted tuples") {
  for (int n = 1; n <= 6; ++n)
    for (int p = 0; p <= 5; ++p) {
      IndexTable t(n, p);
      CHECK(t.size() == binomial(n + p - 1, p));
      double total = 0.0;
      for (std::size_t r = 0; r < t.size(); ++r) {
        CHECK(t.rank_sorted(t.tuple(r)) == r);
        total += t.multiplicity(r);
        if (r > 0) {
          auto a = t.tuple(r - 1);
          auto b = t.tuple(r);
          CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
        }
      }
      CHECK(total == doctest::Approx(std::pow(n, p)));
    }
}

TEST_CASE("sym_product examples") {
  auto e1 = SymTensor::basis(2, 0), e2 = SymTensor::basis(2, 1);
  auto p = sym_product(e1, e2);
  CHECK(p.at({0, 1}) == 1.0);
  CHECK(p.at({1, 0}) == 1.0);
  CHECK(p.at({0, 0}) == 0.0);
  CHECK(p.at({1, 1}) == 0.0);

  Rng rng(1);
  auto k = random_tensor(4, 3, rng);
  CHECK(rel_diff(sym_product(SymTensor::scalar(4, 1.0), k), k) == 0.0);

  auto f1 = SymTensor::basis(3, 0), f2 = SymTensor::basis(3, 1), f3 = SymTensor::basis(3, 2);
  auto left = sym_product(sym_product(f1, f2), f3);
  auto right = sym_product(f1, sym_product(f2, f3));
  auto brute = oracle::permutation_sum(oracle::outer(oracle::outer(oracle::expand(f1), oracle::expand(f2)), oracle::expand(f3)));
  CHECK(oracle::max_diff(brute, left) == 0.0);
  CHECK(oracle::max_diff(brute, right) == 0.0);
}

TEST_CASE("sym_product agrees with the permutation oracle") {
  Rng rng(7);
  for (int n = 2; n <= 4; ++n)
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q + p <= 4; ++q) {
        auto a = random_tensor(n, p, rng), b = random_tensor(n, q, rng);
        auto ref = oracle::product(oracle::expand(a), oracle::expand(b));
        CHECK(oracle::max_diff(ref, sym_product(a, b)) < 1e-12);
      }
}

TEST_CASE("sym_product is commutative, associative and bilinear") {
  Rng rng(11);
  for (int n = 2; n <= 6; ++n)
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const int r = 6 - p - q > 2 ? 2 : 6 - p - q;
        auto a = random_tensor(n, p, rng), b = random_tensor(n, q, rng), c = random_tensor(n, r, rng);
        auto a2 = random_tensor(n, p, rng);
        CHECK(rel_diff(sym_product(a, b), sym_product(b, a)) < 1e-12);
        CHECK(rel_diff(sym_product(sym_product(a, b), c), sym_product(a, sym_product(b, c))) < 1e-12);
        CHECK(rel_diff(sym_product(2.5 * a + a2, b), 2.5 * sym_product(a, b) + sym_product(a2, b)) < 1e-12);
      }
  CHECK_THROWS_AS(sym_product(SymTensor(2, 1), SymTensor(3, 1)), ShapeError);
}

TEST_CASE("contract examples") {
  std::vector<double> v{1.0, 0.0};
  auto u = vec({1.0, 1.0});
  auto u3 = sym_product(u, sym_product(u, u));
  auto u2 = sym_product(u, u);
  // v _| u^3 = 3 g(v,u) u^2
  CHECK(rel_diff(contract(v, u3), 3.0 * u2) < 1e-14);

  auto g = SymTensor::metric(3);
  CHECK(rel_diff(contract(SymTensor::basis(3, 0), g), SymTensor::basis(3, 0)) == 0.0);

  auto e1 = SymTensor::basis(2, 0), e2 = SymTensor::basis(2, 1);
  CHECK(rel_diff(contract(e1, sym_product(e1, e2)), e2) == 0.0);
  CHECK_THROWS_AS(contract(e1, SymTensor::scalar(2, 1.0)), DegreeError);
}

TEST_CASE("contract agrees with the full-array oracle and v_|(w.K) identity") {
  Rng rng(3);
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      auto k = random_tensor(n, p, rng);
      auto v = random_vector(n, rng), w = random_vector(n, rng);
      CHECK(oracle::max_diff(oracle::contract(v, oracle::expand(k)), contract(v, k)) < 1e-12);
      // v _| (w . K) = g(v,w) K + w . (v _| K)
      auto lhs = contract(v, mult_vector(w, k));
      auto rhs = dot(v, w) * k + mult_vector(w, contract(v, k));
      CHECK(rel_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("inner product normalization") {
  Rng rng(5);
  // g(v1.v2, w1.w2) = sum over permutations of products of g(v_i, w_sigma(i))
  for (int trial = 0; trial < 20; ++trial) {
    auto v1 = random_vector(3, rng), v2 = random_vector(3, rng), w1 = random_vector(3, rng), w2 = random_vector(3, rng);
    auto a = sym_product(vec(v1), vec(v2)), b = sym_product(vec(w1), vec(w2));
    const double expect = dot(v1, w1) * dot(v2, w2) + dot(v1, w2) * dot(v2, w1);
    CHECK(inner(a, b) == doctest::Approx(expect).epsilon(1e-13));
  }
  for (int n = 2; n <= 6; ++n) {
    auto g = SymTensor::metric(n);
    CHECK(inner(g, g) == doctest::Approx(n / 2.0).epsilon(1e-15));
    // brute force: g = 1/2 sum e_i . e_i
    oracle::Full gf(n, 2);
    for (int i = 0; i < n; ++i) {
      auto e = oracle::vec(std::vector<double>(n, 0.0));
      e.a[i] = 1.0;
      auto ee = oracle::product(e, e);
      for (std::size_t k = 0; k < gf.a.size(); ++k) gf.a[k] += 0.5 * ee.a[k];
    }
    CHECK(oracle::inner(gf, gf) == doctest::Approx(inner(g, g)));
  }
  CHECK(inner(SymTensor::basis(3, 0), SymTensor::basis(3, 1)) == 0.0);
  CHECK_THROWS_AS(inner(SymTensor(3, 2), SymTensor(3, 1)), ShapeError);
}

TEST_CASE("adjointness and K(v1..vp) = inner(K, v1...vp)") {
  Rng rng(9);
  for (int n = 2; n <= 5; ++n)
    for (int p = 0; p <= 4; ++p) {
      auto a = random_tensor(n, p, rng), b = random_tensor(n, p + 1, rng);
      auto v = random_vector(n, rng);
      CHECK(inner(mult_vector(v, a), b) == doctest::Approx(inner(a, contract(v, b))).epsilon(1e-12));
      auto c = random_tensor(n, p + 2, rng);
      CHECK(inner(mult_L(a), c) == doctest::Approx(inner(a, trace_Lambda(c))).epsilon(1e-12));
      // full-array polynomial evaluation
      auto x = random_vector(n, rng);
      auto full = oracle::expand(a);
      double brute = 0.0;
      for (std::size_t i = 0; i < full.a.size(); ++i) {
        double t = full.a[i];
        for (int idx : full.unflat(i)) t *= x[idx];
        brute += t;
      }
      CHECK(poly_eval(a, x) == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("L and Lambda examples") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(rel_diff(mult_L(SymTensor::scalar(n, 1.0)), 2.0 * SymTensor::metric(n)) == 0.0);
    CHECK(trace_Lambda(SymTensor::metric(n))[0] == n);
  }
  CHECK_THROWS_AS(trace_Lambda(SymTensor(3, 1)), DegreeError);
  Rng rng(13);
  auto k = random_tensor(4, 3, rng);
  auto comm = trace_Lambda(mult_L(k)) - mult_L(trace_Lambda(k));
  CHECK(rel_diff(comm, (2.0 * 4 + 4.0 * 3) * k) < 1e-12);
  CHECK(oracle::max_diff(oracle::trace(oracle::expand(k)), trace_Lambda(k)) < 1e-12);
}

TEST_CASE("commutator identities") {
  Rng rng(17);
  for (int n = 2; n <= 5; ++n)
    for (int p = 0; p <= 4; ++p) {
      auto k = random_tensor(n, p, rng);
      auto v = random_vector(n, rng);
      // [deg, L] = 2L is structural: deg(LK) - L(deg K) = (p+2-p) LK.
      auto vk = mult_vector(v, k);
      if (p >= 1) {
        // [Lambda, v.] = 2 v_|
        auto lhs = trace_Lambda(mult_vector(v, k)) - (p >= 2 ? mult_vector(v, trace_Lambda(k)) : SymTensor(n, p - 1));
        CHECK(rel_diff(lhs, 2.0 * contract(v, k)) < 1e-12);
        // [v_|, L] = 2 v.
        auto lhs2 = contract(v, mult_L(k)) - mult_L(contract(v, k));
        CHECK(rel_diff(lhs2, 2.0 * mult_vector(v, k)) < 1e-12);
      }
      if (p >= 3) {
        // [Lambda, v_|] = 0
        auto lhs3 = trace_Lambda(contract(v, k));
        CHECK(rel_diff(lhs3, contract(v, trace_Lambda(k))) < 1e-12);
      }
      CHECK(rel_diff(mult_L(mult_vector(v, k)), mult_vector(v, mult_L(k))) < 1e-12);
      CHECK(rel_diff(euler_operator(k), double(p) * k) < 1e-12);
      (void)vk;
    }
}

TEST_CASE("standard decomposition") {
  for (int n = 2; n <= 5; ++n) {
    auto dec = standard_decomposition(SymTensor::metric(n));
    REQUIRE(dec.parts.size() == 2);
    CHECK(norm(dec.parts[0]) < 1e-15);
    CHECK(dec.parts[1][0] == doctest::Approx(0.5));
  }
  Rng rng(19);
  {
    auto k = random_tensor(3, 2, rng);
    const double tr = trace_Lambda(k)[0];
    auto dec = standard_decomposition(k);
    CHECK(rel_diff(dec.parts[0], k - (tr / 3.0) * SymTensor::metric(3)) < 1e-14);
    CHECK(dec.parts[1][0] == doctest::Approx(tr / 6.0));
  }
  {
    auto s = random_trace_free(4, 1, rng);
    auto dec = standard_decomposition(mult_L(mult_L(s)));
    REQUIRE(dec.parts.size() == 3);
    CHECK(norm(dec.parts[0]) < 1e-12);
    CHECK(norm(dec.parts[1]) < 1e-12);
    CHECK(rel_diff(dec.parts[2], s) < 1e-12);
  }
  for (int n = 2; n <= 6; ++n)
    for (int p = 0; p <= 6; ++p) {
      auto k = random_tensor(n, p, rng);
      auto dec = standard_decomposition(k);
      for (const auto& part : dec.parts)
        if (part.degree() >= 2) CHECK(norm(trace_Lambda(part)) < 1e-11 * std::fmax(1.0, norm(k)));
      CHECK(rel_diff(reconstruct(dec), k) < 1e-11);
      auto again = standard_decomposition(reconstruct(dec));
      for (std::size_t i = 0; i < dec.parts.size(); ++i) CHECK(rel_diff(again.parts[i], dec.parts[i]) < 1e-11);
    }
}

TEST_CASE("trace-free symmetric product") {
  auto e1 = SymTensor::basis(3, 0), e2 = SymTensor::basis(3, 1);
  CHECK(rel_diff(tracefree_sym_product(e1.comps(), e2), sym_product(e1, e2)) == 0.0);
  auto r = tracefree_sym_product(e1.comps(), e1);
  CHECK(std::fabs(trace_Lambda(r)[0]) < 1e-15);
  CHECK(rel_diff(r, sym_product(e1, e1) - (2.0 / 3.0) * SymTensor::metric(3)) < 1e-15);
  Rng rng(23);
  auto k = random_trace_free(4, 3, rng);
  auto v = random_vector(4, rng);
  CHECK(norm(trace_Lambda(tracefree_sym_product(v, k))) < 1e-12 * norm(k));
  CHECK_THROWS_AS(tracefree_sym_product(v, random_tensor(4, 2, rng)), NotTraceFreeError);
}

TEST_CASE("lambda2 action") {
  auto e1 = SymTensor::basis(3, 0), e2 = SymTensor::basis(3, 1);
  CHECK(rel_diff(lambda2_act(e1.comps(), e2.comps(), e1), e2) == 0.0);
  CHECK(lambda2_act(e1.comps(), e2.comps(), SymTensor::scalar(3, 2.0))[0] == 0.0);
  Rng rng(29);
  auto x = random_vector(4, rng), y = random_vector(4, rng);
  auto k = random_tensor(4, 3, rng);
  CHECK(norm(lambda2_act(x, y, k) + lambda2_act(y, x, k)) < 1e-13);
  // derivation by the skew matrix y x^T - x y^T is the same action
  Matrix<double> m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = y[i] * x[j] - x[i] * y[j];
  CHECK(rel_diff(derivation(m, k), lambda2_act(x, y, k)) < 1e-12);
}

TEST_CASE("transform matches a full-array basis change") {
  Rng rng(31);
  for (int p = 0; p <= 3; ++p) {
    auto k = random_tensor(3, p, rng);
    Matrix<double> m(3, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = random_vector(1, rng)[0];
    auto t = transform(k, m);
    auto full = oracle::expand(k);
    oracle::Full ref(2, p);
    for (std::size_t o = 0; o < ref.a.size(); ++o) {
      auto jdx = ref.unflat(o);
      for (std::size_t i = 0; i < full.a.size(); ++i) {
        auto idx = full.unflat(i);
        double w = full.a[i];
        for (int s = 0; s < p; ++s) w *= m(idx[s], jdx[s]);
        ref.a[o] += w;
      }
    }
    CHECK(oracle::max_diff(ref, t) < 1e-12);
  }
}

TEST_CASE("poly_eval examples") {
  Rng rng(37);
  auto x = random_vector(3, rng);
  CHECK(poly_eval(SymTensor::metric(3), x) == doctest::Approx(dot(x, x)));
  auto u = random_vector(3, rng);
  auto up = vec(u);
  auto xp = vec(x);
  for (int p = 1; p <= 4; ++p) {
    CHECK(poly_eval(up, x) == doctest::Approx(oracle::factorial(p) * std::pow(dot(u, x), p)).epsilon(1e-12));
    auto k = random_tensor(3, p, rng);
    CHECK(inner(k, xp) == doctest::Approx(poly_eval(k, x)).epsilon(1e-12));
    CHECK(inner(euler_operator(k), xp) == doctest::Approx(p * poly_eval(k, x)).epsilon(1e-12));
    up = sym_product(up, vec(u));
    xp = sym_product(xp, vec(x));
  }
}

TEST_CASE("constant_a") {
  CHECK(constant_a(4, 2, 0) == doctest::Approx(-1.0 / 6.0));
  CHECK(constant_a(5, 3, 1) == doctest::Approx(-1.0 / 5.0));
  CHECK_THROWS_AS(constant_a(2, 0, 0), DomainError);
  auto a = special_killing_coefficients(3, 2);
  CHECK(a[1] == doctest::Approx(-2.0));  // K - n L K_1 = K - tr(K) g for n = 3
  for (int n = 2; n <= 6; ++n)
    for (int p = 2; p <= 6; ++p)
      CHECK(special_killing_coefficients(n, p)[1] == doctest::Approx(-double(n + p - 3) / (p - 1)));
}

TEST_CASE("Cartan projections") {
  Rng rng(41);
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      if (cartan_degenerate(n, p)) {
        CHECK_THROWS_AS(cartan_decompose(FrameTensor(n, p)), DegenerateShapeError);
        continue;
      }
      auto s = random_trace_free(n, p + 1, rng);
      auto t1 = pi1_adjoint(s);
      CHECK(rel_diff(pi1(t1), (p + 1.0) * s) < 1e-12);
      auto parts = cartan_decompose(t1);
      CHECK(norm(parts.P2) < 1e-11 * norm(t1));
      CHECK(norm(parts.P3) < 1e-11 * norm(t1));

      auto q = random_trace_free(n, p - 1, rng);
      const double c = (n + 2.0 * p - 2) * (n + p - 3.0) / (n + 2.0 * p - 4);
      CHECK(rel_diff(pi2(pi2_adjoint(q, p)), c * q) < 1e-12);

      auto t = random_trace_free_frame_tensor(n, p, rng);
      auto d = cartan_decompose(t);
      CHECK(norm(d.P1 + d.P2 + d.P3 - t) < 1e-12 * norm(t));
      CHECK(std::fabs(inner(d.P1, d.P2)) < 1e-11 * norm(t) * norm(t));
      CHECK(std::fabs(inner(d.P1, d.P3)) < 1e-11 * norm(t) * norm(t));
      CHECK(std::fabs(inner(d.P2, d.P3)) < 1e-11 * norm(t) * norm(t));
      auto dd = cartan_decompose(d.P1);
      CHECK(norm(dd.P1 - d.P1) < 1e-11 * norm(t));

      auto b = conformal_weight(t);
      auto expect = double(p) * d.P1 - double(n + p - 2) * d.P2 - d.P3;
      CHECK(norm(b - expect) < 1e-10 * norm(t));
    }
  CHECK_THROWS_AS(cartan_decompose(FrameTensor(3, 0)), DegenerateShapeError);
}

TEST_CASE("conformal weight by hand, n=3, p=1, T = e1 (x) e1") {
  FrameTensor t(3, 1);
  t.slots[0] = SymTensor::basis(3, 0);
  auto b = conformal_weight(t);
  CHECK(norm(b.slots[0]) == 0.0);
  CHECK(rel_diff(b.slots[1], -1.0 * SymTensor::basis(3, 1)) == 0.0);
  CHECK(rel_diff(b.slots[2], -1.0 * SymTensor::basis(3, 2)) == 0.0);
}

TEST_CASE("tensor literal round trip") {
  Rng rng(43);
  for (int p = 0; p <= 4; ++p) {
    auto k = random_tensor(3, p, rng);
    k[0] = -0.0;
    auto back = tensor_from_text(tensor_to_text(k));
    REQUIRE(back.same_shape(k));
    for (std::size_t r = 0; r < k.size(); ++r) {
      CHECK(std::memcmp(&back[r], &k[r], sizeof(double)) == 0);
    }
  }
  CHECK_THROWS_AS(tensor_from_text("{\"dim\":1,\"degree\":1}"), ConfigError);
  CHECK_THROWS_AS(tensor_from_text("{\"dim\":2,\"degree\":2,\"entries\":[{\"index\":[2,1],\"value\":1}]}"), ConfigError);
  CHECK_THROWS_AS(tensor_from_text("{\"dim\":2,\"degree\":1,\"entries\":[{\"index\":[3],\"value\":1}]}"), ConfigError);
  CHECK_THROWS_AS(tensor_from_text("not json"), ConfigError);
  auto e = tensor_from_text("{\"dim\":2,\"degree\":2,\"entries\":[{\"index\":[1,2],\"value\":0.5}]}");
  CHECK(e.at({1, 0}) == 0.5);
}
