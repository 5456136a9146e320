#pragma once

// Algebra of Sym V: products, contractions, L, Lambda, inner product, the
// standard decomposition and the basis-change kernels. Every function is
// templated on the scalar so the same code runs on dual numbers.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ktensor/errors.hpp"
#include "ktensor/index_table.hpp"
#include "ktensor/linalg.hpp"
#include "ktensor/sym_tensor.hpp"

namespace ktensor {

inline constexpr double kTraceFreeTol = 1e-9;

template <class S>
BasicSymTensor<S> sym_product(const BasicSymTensor<S>& a, const BasicSymTensor<S>& b) {
  if (a.dim() != b.dim()) throw ShapeError("sym_product: dimension mismatch");
  const int n = a.dim();
  const int p = a.degree();
  const int q = b.degree();
  BasicSymTensor<S> out(n, p + q);
  const ProductPlan& plan = product_plan(n, p, q);
  const std::size_t m = plan.terms_per_output;
  for (std::size_t r = 0; r < out.size(); ++r) {
    S acc(0.0);
    for (std::size_t t = r * m; t < (r + 1) * m; ++t) acc += a[plan.left[t]] * b[plan.right[t]];
    out[r] = acc;
  }
  return out;
}

// v . K for a vector given by components.
template <class S>
BasicSymTensor<S> mult_vector(const std::vector<S>& v, const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  if (static_cast<int>(v.size()) != n) throw ShapeError("mult_vector: dimension mismatch");
  BasicSymTensor<S> out(n, p + 1);
  const auto& rm = remove_plan(n, p + 1);
  const auto& tab = out.table();
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto t = tab.tuple(r);
    S acc(0.0);
    for (int s = 0; s <= p; ++s) acc += v[t[s]] * k[rm[r * (p + 1) + s]];
    out[r] = acc;
  }
  return out;
}

// e_i . K
template <class S>
BasicSymTensor<S> mult_basis(int i, const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  BasicSymTensor<S> out(n, p + 1);
  const auto& rm = remove_plan(n, p + 1);
  const auto& tab = out.table();
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto t = tab.tuple(r);
    S acc(0.0);
    for (int s = 0; s <= p; ++s)
      if (t[s] == i) acc += k[rm[r * (p + 1) + s]];
    out[r] = acc;
  }
  return out;
}

template <class S>
std::vector<S> components(const BasicSymTensor<S>& v) {
  if (v.degree() != 1) throw DegreeError("expected a vector (degree 1)");
  return v.comps();
}

template <class S>
BasicSymTensor<S> contract(const std::vector<S>& v, const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  if (p < 1) throw DegreeError("contract: degree must be at least 1");
  if (static_cast<int>(v.size()) != n) throw ShapeError("contract: dimension mismatch");
  BasicSymTensor<S> out(n, p - 1);
  const auto& cp = contract_plan(n, p);
  for (std::size_t r = 0; r < out.size(); ++r) {
    S acc(0.0);
    for (int j = 0; j < n; ++j) acc += v[j] * k[cp[r * n + j]];
    out[r] = acc;
  }
  return out;
}

template <class S>
BasicSymTensor<S> contract(const BasicSymTensor<S>& v, const BasicSymTensor<S>& k) {
  return contract(components(v), k);
}

// e_i _| K
template <class S>
BasicSymTensor<S> contract_basis(int i, const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  if (p < 1) throw DegreeError("contract: degree must be at least 1");
  BasicSymTensor<S> out(n, p - 1);
  const auto& cp = contract_plan(n, p);
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = k[cp[r * n + i]];
  return out;
}

template <class S>
BasicSymTensor<S> sym_product(const std::vector<S>& v, const BasicSymTensor<S>& k) {
  return mult_vector(v, k);
}

// L(K) = sum_i e_i . e_i . K
template <class S>
BasicSymTensor<S> mult_L(const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  BasicSymTensor<S> out(n, p + 2);
  const auto& rm2 = remove_plan(n, p + 2);
  const auto& rm1 = remove_plan(n, p + 1);
  const auto& tab2 = out.table();
  auto tab1 = IndexTable::get(n, p + 1);
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto t = tab2.tuple(r);
    S acc(0.0);
    for (int s = 0; s < p + 2; ++s) {
      const std::size_t r1 = rm2[r * (p + 2) + s];
      auto t1 = tab1->tuple(r1);
      for (int u = 0; u < p + 1; ++u)
        if (t1[u] == t[s]) acc += k[rm1[r1 * (p + 1) + u]];
    }
    out[r] = acc;
  }
  return out;
}

// Lambda(K) = sum_i e_i _| e_i _| K
template <class S>
BasicSymTensor<S> trace_Lambda(const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  if (p < 2) throw DegreeError("trace_Lambda: degree must be at least 2");
  BasicSymTensor<S> out(n, p - 2);
  const auto& outer = contract_plan(n, p);
  const auto& inner_plan = contract_plan(n, p - 1);
  for (std::size_t r = 0; r < out.size(); ++r) {
    S acc(0.0);
    for (int i = 0; i < n; ++i) acc += k[outer[inner_plan[r * n + i] * n + i]];
    out[r] = acc;
  }
  return out;
}

template <class S>
S inner(const BasicSymTensor<S>& a, const BasicSymTensor<S>& b) {
  if (!a.same_shape(b)) throw ShapeError("inner: shape mismatch");
  const auto& tab = a.table();
  S acc(0.0);
  for (std::size_t r = 0; r < a.size(); ++r) acc += tab.multiplicity(r) * (a[r] * b[r]);
  return acc / tab.factorial();
}

inline double norm(const SymTensor& a) { return std::sqrt(std::fmax(inner(a, a), 0.0)); }

// K(X) = sum over all p-tuples of K_I X_i1 ... X_ip
template <class S>
S poly_eval(const BasicSymTensor<S>& k, const std::vector<S>& x) {
  if (static_cast<int>(x.size()) != k.dim()) throw ShapeError("poly_eval: dimension mismatch");
  const auto& tab = k.table();
  S acc(0.0);
  for (std::size_t r = 0; r < k.size(); ++r) {
    S term = tab.multiplicity(r) * k[r];
    for (int i : tab.tuple(r)) term *= x[i];
    acc += term;
  }
  return acc;
}

// (X ^ Y)_* K = Y . (X _| K) - X . (Y _| K)
template <class S>
BasicSymTensor<S> lambda2_act(const std::vector<S>& x, const std::vector<S>& y, const BasicSymTensor<S>& k) {
  if (k.degree() == 0) return BasicSymTensor<S>(k.dim(), 0);
  return mult_vector(y, contract(x, k)) - mult_vector(x, contract(y, k));
}

// Derivation extension of an endomorphism M, where M e_k = sum_j M(j,k) e_j:
// (D_M K)_I = sum_s sum_k M(i_s, k) K_{I with i_s -> k}.
template <class S, class M>
BasicSymTensor<S> derivation(const Matrix<M>& m, const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  BasicSymTensor<S> out(n, p);
  if (p == 0) return out;
  const auto& rm = remove_plan(n, p);
  const auto& cp = contract_plan(n, p);
  const auto& tab = k.table();
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto t = tab.tuple(r);
    S acc(0.0);
    for (int s = 0; s < p; ++s) {
      const std::size_t rest = rm[r * p + s];
      for (int c = 0; c < n; ++c) acc += m(t[s], c) * k[cp[rest * n + c]];
    }
    out[r] = acc;
  }
  return out;
}

// Basis change on every slot: K'_{j1..jp} = sum K_{a1..ap} M(a1,j1)...M(ap,jp).
// M has K.dim() rows; the result has M.cols() as dimension.
template <class S, class M>
BasicSymTensor<S> transform(const BasicSymTensor<S>& k, const Matrix<M>& m) {
  const int in = k.dim();
  const int out_dim = m.cols();
  const int p = k.degree();
  if (m.rows() != in) throw ShapeError("transform: matrix rows must equal tensor dimension");
  BasicSymTensor<S> out(out_dim, p);
  if (p == 0) {
    out[0] = k[0];
    return out;
  }
  const auto& fr = k.table().full_rank();
  if (fr.empty()) throw ShapeError("transform: tensor too large");
  std::vector<S> buf(fr.size());
  for (std::size_t f = 0; f < fr.size(); ++f) buf[f] = k[fr[f]];

  std::size_t pre = 1;
  std::size_t post = k.table().full_size() / in;
  std::vector<S> next;
  for (int mode = 0; mode < p; ++mode) {
    next.assign(pre * out_dim * post, S(0.0));
    for (std::size_t a0 = 0; a0 < pre; ++a0)
      for (int a = 0; a < in; ++a) {
        const S* src = &buf[(a0 * in + a) * post];
        for (int j = 0; j < out_dim; ++j) {
          const M w = m(a, j);
          if (value_of(w) == 0.0 && !is_dual<M>::value) continue;
          S* dst = &next[(a0 * out_dim + j) * post];
          for (std::size_t b = 0; b < post; ++b) dst[b] += w * src[b];
        }
      }
    buf.swap(next);
    pre *= out_dim;
    post = (mode + 1 < p) ? post / in : 1;
  }
  const auto& tab = out.table();
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::size_t f = 0;
    for (int i : tab.tuple(r)) f = f * out_dim + i;
    out[r] = buf[f];
  }
  return out;
}

// Copies K on R^m into R^n (n >= m) at index offset.
template <class S>
BasicSymTensor<S> embed_indices(const BasicSymTensor<S>& k, int offset, int n) {
  Matrix<double> m(k.dim(), n);
  for (int i = 0; i < k.dim(); ++i) m(i, offset + i) = 1.0;
  return transform(k, m);
}

template <class S>
struct BasicDecomposition {
  int base_degree = 0;
  std::vector<BasicSymTensor<S>> parts;  // parts[i] has degree base_degree - 2i
};
using Decomposition = BasicDecomposition<double>;

template <class S>
BasicSymTensor<S> apply_L(BasicSymTensor<S> k, int times) {
  for (int t = 0; t < times; ++t) k = mult_L(k);
  return k;
}

// K = sum_i L^i K_i with Lambda K_i = 0. Uses Lambda L^i S = c(i,q) L^{i-1} S
// for trace-free S of degree q, c(i,q) = 2i(n + 2q + 2i - 2), and solves for
// the parts from the top degree down.
template <class S>
BasicDecomposition<S> standard_decomposition(const BasicSymTensor<S>& k) {
  const int n = k.dim();
  const int p = k.degree();
  const int top = p / 2;
  std::vector<BasicSymTensor<S>> lam;
  lam.push_back(k);
  for (int j = 1; j <= top; ++j) lam.push_back(trace_Lambda(lam.back()));

  auto c = [n](int i, int q) { return 2.0 * i * (n + 2.0 * q + 2.0 * i - 2.0); };
  // gamma(i,j): Lambda^j L^i S = gamma(i,j) L^{i-j} S, S of degree p-2i.
  auto gamma = [&](int i, int j) {
    const int q = p - 2 * i;
    double g = 1.0;
    for (int t = 0; t < j; ++t) g *= c(i - t, q);
    return g;
  };

  BasicDecomposition<S> dec;
  dec.base_degree = p;
  dec.parts.resize(top + 1);
  for (int j = top; j >= 0; --j) {
    BasicSymTensor<S> rhs = lam[j];
    for (int i = j + 1; i <= top; ++i) rhs.axpy(S(-gamma(i, j)), apply_L(dec.parts[i], i - j));
    rhs *= S(1.0 / gamma(j, j));
    dec.parts[j] = rhs;
  }
  return dec;
}

template <class S>
BasicSymTensor<S> reconstruct(const BasicDecomposition<S>& dec) {
  BasicSymTensor<S> out = dec.parts.empty() ? BasicSymTensor<S>() : dec.parts[0];
  for (std::size_t i = 1; i < dec.parts.size(); ++i) out += apply_L(dec.parts[i], static_cast<int>(i));
  return out;
}

template <class S>
BasicSymTensor<S> trace_free_part(const BasicSymTensor<S>& k) {
  if (k.degree() < 2) return k;
  return standard_decomposition(k).parts[0];
}

inline bool is_trace_free(const SymTensor& k, double tol = kTraceFreeTol) {
  if (k.degree() < 2) return true;
  return norm(trace_Lambda(k)) <= tol * std::fmax(norm(k), 1e-300) || norm(k) == 0.0;
}

// (v.K)_0 = v.K - L(v _| K)/(n + 2(p-1)) for trace-free K.
template <class S>
BasicSymTensor<S> tracefree_sym_product(const std::vector<S>& v, const BasicSymTensor<S>& k,
                                        double tol = kTraceFreeTol) {
  const int n = k.dim();
  const int p = k.degree();
  if (p >= 2 && !is_trace_free(to_double(k), tol)) throw NotTraceFreeError("tracefree_sym_product: input is not trace-free");
  BasicSymTensor<S> out = mult_vector(v, k);
  if (p == 0) return out;
  out.axpy(S(-1.0 / (n + 2.0 * (p - 1))), mult_L(contract(v, k)));
  return out;
}

inline double constant_a(int n, int p, int i) {
  const int den = n + 2 * (p - 2 * i - 1);
  if (den == 0) throw DomainError("constant_a: zero denominator");
  return -1.0 / den;
}

// a_0 = 1, a_j = -(n+p-2j-1)/(p+1-2j) a_{j-1}, j = 1..p/2.
inline std::vector<double> special_killing_coefficients(int n, int p) {
  std::vector<double> a{1.0};
  for (int j = 1; j <= p / 2; ++j) {
    const int den = p + 1 - 2 * j;
    if (den == 0) throw DomainError("special Killing recursion: zero denominator");
    a.push_back(-static_cast<double>(n + p - 2 * j - 1) / den * a.back());
  }
  return a;
}

// Euler operator sum_i e_i . (e_i _| K); equals p K.
template <class S>
BasicSymTensor<S> euler_operator(const BasicSymTensor<S>& k) {
  BasicSymTensor<S> out(k.dim(), k.degree());
  if (k.degree() == 0) return out;
  for (int i = 0; i < k.dim(); ++i) out += mult_basis(i, contract_basis(i, k));
  return out;
}

}  // namespace ktensor
