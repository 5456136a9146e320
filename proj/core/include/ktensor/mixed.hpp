#pragma once

// T^{(x) lead} (x) Sym^p, stored as m^lead symmetric tensors (row-major over
// the leading indices). Used for nabla K and nabla^2 K in representation
// coordinates before conversion to the orthonormal frame.

#include <cstddef>
#include <vector>

#include "ktensor/linalg.hpp"
#include "ktensor/sym_tensor.hpp"
#include "ktensor/symalg.hpp"

namespace ktensor {

template <class S>
struct MixedT {
  int m = 0;
  int lead = 0;
  std::vector<BasicSymTensor<S>> parts;

  static MixedT single(BasicSymTensor<S> k) {
    MixedT t;
    t.m = k.dim();
    t.lead = 0;
    t.parts.push_back(std::move(k));
    return t;
  }
};

template <class S>
MixedT<S> primal(const MixedT<Dual<S>>& t) {
  MixedT<S> out{t.m, t.lead, {}};
  out.parts.reserve(t.parts.size());
  for (const auto& p : t.parts) out.parts.push_back(primal(p));
  return out;
}

// Apply mat (rows = t.m) to every slot, leading and symmetric.
template <class S, class M>
MixedT<S> to_basis(const MixedT<S>& t, const Matrix<M>& mat) {
  const int m = t.m;
  const int k = mat.cols();
  std::vector<BasicSymTensor<S>> cur;
  cur.reserve(t.parts.size());
  for (const auto& p : t.parts) cur.push_back(transform(p, mat));
  const int deg = cur.empty() ? 0 : cur.front().degree();

  std::size_t pre = 1;
  std::size_t post = t.parts.size() / (t.lead > 0 ? m : 1);
  for (int mode = 0; mode < t.lead; ++mode) {
    std::vector<BasicSymTensor<S>> next(pre * k * post, BasicSymTensor<S>(k, deg));
    for (std::size_t a0 = 0; a0 < pre; ++a0)
      for (int a = 0; a < m; ++a)
        for (int j = 0; j < k; ++j) {
          const M w = mat(a, j);
          if (!is_dual<M>::value && value_of(w) == 0.0) continue;
          for (std::size_t b = 0; b < post; ++b) next[(a0 * k + j) * post + b].axpy(S(w), cur[(a0 * m + a) * post + b]);
        }
    cur.swap(next);
    pre *= k;
    post = (mode + 1 < t.lead) ? post / m : 1;
  }
  return MixedT<S>{k, t.lead, std::move(cur)};
}

}  // namespace ktensor
