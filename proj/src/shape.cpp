#include "mel/shape.hpp"

#include <numeric>

#include "mel/field.hpp"

namespace mel {

Shape::Shape(int m, std::vector<int> n, int p) : m_(m), p_(p), n_(std::move(n)) {
  require(m >= 1, "O(m;n): m must be positive");
  require(is_prime(static_cast<std::uint64_t>(p)), "O(m;n): p must be prime");
  require(static_cast<int>(n_.size()) == m, "O(m;n): n must have m entries");
  tau_.resize(m);
  std::uint64_t dim = 1;
  for (int i = 0; i < m; ++i) {
    require(n_[i] >= 1, "O(m;n): n entries must be positive");
    std::uint64_t pe = 1;
    for (int j = 0; j < n_[i]; ++j) {
      pe *= static_cast<std::uint64_t>(p);
      require(pe <= (1u << 20), "O(m;n): p^{n_i} too large");
    }
    tau_[i] = static_cast<int>(pe - 1);
    dim *= pe;
    require(dim <= (1u << 26), "O(m;n): dimension too large");
  }
  dim_ = static_cast<std::uint32_t>(dim);
  radix_.resize(m);
  std::uint32_t w = 1;
  for (int i = m - 1; i >= 0; --i) {
    radix_[i] = w;
    w *= static_cast<std::uint32_t>(tau_[i] + 1);
  }
}

std::shared_ptr<const Shape> Shape::make(int m, std::vector<int> n, int p) {
  return std::shared_ptr<const Shape>(new Shape(m, std::move(n), p));
}

bool Shape::in_bounds(std::span<const int> a) const {
  if (static_cast<int>(a.size()) != m_) return false;
  for (int i = 0; i < m_; ++i)
    if (a[i] < 0 || a[i] > tau_[i]) return false;
  return true;
}

std::uint32_t Shape::rank(std::span<const int> a) const {
  require(in_bounds(a), "multi-index out of bounds for this shape");
  std::uint32_t r = 0;
  for (int i = 0; i < m_; ++i) r += static_cast<std::uint32_t>(a[i]) * radix_[i];
  return r;
}

std::vector<int> Shape::unrank(std::uint32_t r) const {
  require(r < dim_, "multi-index rank out of range");
  std::vector<int> a(m_);
  for (int i = 0; i < m_; ++i) {
    a[i] = static_cast<int>(r / radix_[i]);
    r %= radix_[i];
  }
  return a;
}

std::vector<std::vector<int>> Shape::basis() const {
  std::vector<std::vector<int>> out;
  out.reserve(dim_);
  for (std::uint32_t r = 0; r < dim_; ++r) out.push_back(unrank(r));
  return out;
}

int multi_degree(std::span<const int> a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

}  // namespace mel
