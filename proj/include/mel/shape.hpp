#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mel/util.hpp"

namespace mel {

/// Combinatorial frame of O(m;n) over characteristic p: exponent bounds
/// tau(n) = (p^{n_1}-1, ..., p^{n_m}-1) and the lexicographic order on the
/// bounded multi-indices (leftmost entry most significant). Every matrix in
/// the repository is written in this order.
class Shape {
 public:
  static std::shared_ptr<const Shape> make(int m, std::vector<int> n, int p);

  int m() const { return m_; }
  int p() const { return p_; }
  const std::vector<int>& n() const { return n_; }
  const std::vector<int>& tau() const { return tau_; }
  std::uint32_t dim() const { return dim_; }  // p^{n_1 + ... + n_m}

  bool in_bounds(std::span<const int> a) const;
  std::uint32_t rank(std::span<const int> a) const;  // lexicographic
  std::vector<int> unrank(std::uint32_t r) const;
  std::vector<std::vector<int>> basis() const;  // all indices, lex order

  bool operator==(const Shape& o) const {
    return m_ == o.m_ && p_ == o.p_ && n_ == o.n_;
  }

 private:
  Shape(int m, std::vector<int> n, int p);

  int m_, p_;
  std::vector<int> n_, tau_;
  std::vector<std::uint32_t> radix_;  // radix_[i] = weight of entry i in rank
  std::uint32_t dim_;
};

using ShapePtr = std::shared_ptr<const Shape>;

inline void require_same_shape(const Shape& a, const Shape& b) {
  require(a == b, "shape mismatch: operands live in different O(m;n)");
}

/// |a|, the component sum; the canonical degree of x^{(a)} in O.
int multi_degree(std::span<const int> a);

}  // namespace mel
