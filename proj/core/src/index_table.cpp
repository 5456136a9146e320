#include "ktensor/index_table.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "ktensor/errors.hpp"

namespace ktensor {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

IndexTable::IndexTable(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw ShapeError("dimension must be positive");
  if (degree < 0) throw DegreeError("degree must be non-negative");
  size_ = binomial(dim + degree - 1, degree);
  factorial_ = 1.0;
  for (int i = 2; i <= degree; ++i) factorial_ *= i;

  tuples_.reserve(size_ * degree);
  mult_.reserve(size_);
  std::vector<int> t(degree, 0);
  for (std::size_t r = 0; r < size_; ++r) {
    tuples_.insert(tuples_.end(), t.begin(), t.end());
    double m = factorial_;
    int run = 1;
    for (int k = 1; k <= degree; ++k) {
      if (k < degree && t[k] == t[k - 1]) {
        ++run;
      } else {
        for (int f = 2; f <= run; ++f) m /= f;
        run = 1;
      }
    }
    mult_.push_back(m);
    int k = degree - 1;
    while (k >= 0 && t[k] == dim - 1) --k;
    if (k < 0) break;
    ++t[k];
    for (int j = k + 1; j < degree; ++j) t[j] = t[k];
  }

  double full = 1.0;
  for (int k = 0; k < degree; ++k) full *= dim;
  if (full <= double(1 << 22)) {
    full_size_ = static_cast<std::size_t>(full);
    full_rank_.resize(full_size_);
    std::vector<int> idx(degree, 0);
    std::vector<int> sorted(degree);
    for (std::size_t f = 0; f < full_size_; ++f) {
      sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      full_rank_[f] = static_cast<std::uint32_t>(rank_sorted(sorted));
      for (int k = degree - 1; k >= 0; --k) {
        if (++idx[k] < dim) break;
        idx[k] = 0;
      }
    }
  }
}

std::size_t IndexTable::rank_sorted(std::span<const int> t) const {
  std::size_t r = 0;
  int lo = 0;
  for (int k = 0; k < degree_; ++k) {
    const int len = degree_ - k - 1;
    const int hi = t[k];
    // Tuples that agree before k and have a smaller entry at k (hockey-stick sum).
    r += binomial(dim_ - lo + len, len + 1) - binomial(dim_ - hi + len, len + 1);
    lo = hi;
  }
  return r;
}

std::size_t IndexTable::rank(std::span<const int> t) const {
  std::vector<int> s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  return rank_sorted(s);
}

namespace {

std::uint64_t key3(int n, int p, int q) {
  return (static_cast<std::uint64_t>(n) << 40) | (static_cast<std::uint64_t>(p) << 20) | static_cast<std::uint64_t>(q);
}

}  // namespace

std::shared_ptr<const IndexTable> IndexTable::get(int dim, int degree) {
  thread_local std::unordered_map<std::uint64_t, std::shared_ptr<const IndexTable>> local;
  const auto key = key3(dim, degree, 0);
  if (auto it = local.find(key); it != local.end()) return it->second;

  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const IndexTable>> shared;
  std::shared_ptr<const IndexTable> table;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = shared[key];
    if (!slot) slot = std::make_shared<const IndexTable>(dim, degree);
    table = slot;
  }
  local.emplace(key, table);
  return table;
}

const std::vector<std::uint32_t>& contract_plan(int n, int p) {
  thread_local std::unordered_map<std::uint64_t, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  auto& slot = cache[key3(n, p, 0)];
  if (!slot) {
    auto lower = IndexTable::get(n, p - 1);
    auto upper = IndexTable::get(n, p);
    slot = std::make_unique<std::vector<std::uint32_t>>(lower->size() * n);
    std::vector<int> t(p);
    for (std::size_t r = 0; r < lower->size(); ++r) {
      auto base = lower->tuple(r);
      for (int j = 0; j < n; ++j) {
        std::copy(base.begin(), base.end(), t.begin());
        t[p - 1] = j;
        std::sort(t.begin(), t.end());
        (*slot)[r * n + j] = static_cast<std::uint32_t>(upper->rank_sorted(t));
      }
    }
  }
  return *slot;
}

const std::vector<std::uint32_t>& remove_plan(int n, int p) {
  thread_local std::unordered_map<std::uint64_t, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  auto& slot = cache[key3(n, p, 0)];
  if (!slot) {
    auto upper = IndexTable::get(n, p);
    auto lower = IndexTable::get(n, p - 1);
    slot = std::make_unique<std::vector<std::uint32_t>>(upper->size() * p);
    std::vector<int> t(p - 1);
    for (std::size_t r = 0; r < upper->size(); ++r) {
      auto base = upper->tuple(r);
      for (int s = 0; s < p; ++s) {
        int w = 0;
        for (int k = 0; k < p; ++k)
          if (k != s) t[w++] = base[k];
        (*slot)[r * p + s] = static_cast<std::uint32_t>(lower->rank_sorted(t));
      }
    }
  }
  return *slot;
}

const ProductPlan& product_plan(int n, int p, int q) {
  thread_local std::unordered_map<std::uint64_t, std::unique_ptr<ProductPlan>> cache;
  auto& slot = cache[key3(n, p, q)];
  if (!slot) {
    if (p + q > 30) throw DegreeError("product degree too large");
    auto out = IndexTable::get(n, p + q);
    auto ta = IndexTable::get(n, p);
    auto tb = IndexTable::get(n, q);
    slot = std::make_unique<ProductPlan>();
    slot->terms_per_output = binomial(p + q, p);
    slot->left.reserve(out->size() * slot->terms_per_output);
    slot->right.reserve(out->size() * slot->terms_per_output);
    std::vector<int> a(p), b(q);
    const std::uint32_t full = (p + q == 32) ? ~0u : ((1u << (p + q)) - 1u);
    for (std::size_t r = 0; r < out->size(); ++r) {
      auto t = out->tuple(r);
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (std::popcount(mask) != p) continue;
        int ia = 0, ib = 0;
        for (int k = 0; k < p + q; ++k) {
          if (mask & (1u << k)) a[ia++] = t[k];
          else b[ib++] = t[k];
        }
        slot->left.push_back(static_cast<std::uint32_t>(ta->rank_sorted(a)));
        slot->right.push_back(static_cast<std::uint32_t>(tb->rank_sorted(b)));
        if (mask == full) break;
      }
    }
  }
  return *slot;
}

}  // namespace ktensor
