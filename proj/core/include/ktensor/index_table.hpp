#pragma once

// Enumeration of non-decreasing multi-indices for Sym^p R^n, plus the
// precomputed index plans used by the product, contraction and basis-change
// kernels. Tables are immutable once built and shared between tensors.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ktensor {

class IndexTable {
 public:
  IndexTable(int dim, int degree);

  // Shared table for (dim, degree); thread-safe.
  static std::shared_ptr<const IndexTable> get(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return size_; }

  // 0-based sorted tuple of rank r.
  std::span<const int> tuple(std::size_t r) const {
    return {tuples_.data() + r * static_cast<std::size_t>(degree_), static_cast<std::size_t>(degree_)};
  }
  // Number of distinct orderings of tuple r, i.e. p!/prod(count!).
  double multiplicity(std::size_t r) const { return mult_[r]; }
  double factorial() const { return factorial_; }

  std::size_t rank_sorted(std::span<const int> sorted) const;
  std::size_t rank(std::span<const int> tuple) const;  // any order

  // Rank of each full index (row-major over n^p); empty if n^p is too large.
  const std::vector<std::uint32_t>& full_rank() const { return full_rank_; }
  std::size_t full_size() const { return full_size_; }

 private:
  int dim_;
  int degree_;
  std::size_t size_;
  double factorial_;
  std::vector<int> tuples_;
  std::vector<double> mult_;
  std::size_t full_size_ = 0;
  std::vector<std::uint32_t> full_rank_;
};

std::size_t binomial(int n, int k);

// Plans are flat rank tables, cached per thread.
//   contract_plan(n,p)[r*n + j]  = rank in degree p of sorted(j ∪ tuple_{p-1}(r))
//   remove_plan(n,p)[r*p + s]    = rank in degree p-1 of tuple_p(r) without position s
//   product_plan(n,p,q)          = for each output rank, C(p+q,p) pairs (rank_p, rank_q)
const std::vector<std::uint32_t>& contract_plan(int n, int p);
const std::vector<std::uint32_t>& remove_plan(int n, int p);

struct ProductPlan {
  std::size_t terms_per_output = 0;
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;
};
const ProductPlan& product_plan(int n, int p, int q);

}  // namespace ktensor
