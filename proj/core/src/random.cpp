#include "ktensor/random.hpp"

#include <cmath>

#include "ktensor/symalg.hpp"

namespace ktensor {

std::vector<double> random_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

SymTensor random_tensor(int n, int p, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SymTensor k(n, p);
  for (auto& c : k.comps()) c = normal(rng);
  return k;
}

SymTensor random_trace_free(int n, int p, Rng& rng) { return trace_free_part(random_tensor(n, p, rng)); }

FrameTensor random_frame_tensor(int n, int p, Rng& rng) {
  FrameTensor t(n, p);
  for (auto& s : t.slots) s = random_tensor(n, p, rng);
  return t;
}

FrameTensor random_trace_free_frame_tensor(int n, int p, Rng& rng) {
  FrameTensor t(n, p);
  for (auto& s : t.slots) s = random_trace_free(n, p, rng);
  return t;
}

// Gram-Schmidt on a Gaussian matrix.
Matrix<double> random_orthogonal(int n, Rng& rng) {
  Matrix<double> q(n, n);
  std::vector<std::vector<double>> cols;
  while (static_cast<int>(cols.size()) < n) {
    auto v = random_vector(n, rng);
    for (const auto& c : cols) {
      const double d = dot(v, c);
      for (int i = 0; i < n; ++i) v[i] -= d * c[i];
    }
    const double len = norm2(v);
    if (len < 1e-8) continue;
    for (auto& x : v) x /= len;
    cols.push_back(v);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) q(i, j) = cols[j][i];
  return q;
}

Matrix<double> random_skew(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = normal(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

}  // namespace ktensor
