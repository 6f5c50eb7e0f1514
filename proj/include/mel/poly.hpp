#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "mel/field.hpp"
#include "mel/shape.hpp"

namespace mel {

/// Element of the divided power algebra O(m;n): a sparse combination of
/// monomials x^{(a)} with coefficients in GF(p^k). Terms are keyed by the
/// lexicographic rank of the exponent; zero coefficients are never stored,
/// so equality is map equality.
class Poly {
 public:
  Poly(ShapePtr shape, const Field& f);  // zero
  static Poly monomial(ShapePtr shape, const Field& f, std::span<const int> a,
                       std::uint32_t coeff_code = 1);
  static Poly one(ShapePtr shape, const Field& f);

  const ShapePtr& shape() const { return shape_; }
  const Field& field() const { return *field_; }
  const std::map<std::uint32_t, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  FieldElement coeff(std::span<const int> a) const;
  void set_coeff(std::span<const int> a, std::uint32_t code);
  void add_term(std::uint32_t rank, std::uint32_t code);  // accumulate

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;  // divided power multiplication
  Poly scaled(std::uint32_t code) const;
  Poly scaled_int(long long v) const { return scaled(field_->from_int(v)); }

  /// d/dx_axis in the divided power sense: x^{(a)} -> x^{(a - e_axis)};
  /// axis is 0-based.
  Poly partial(int axis) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_compatible(const Poly& o) const;

  ShapePtr shape_;
  const Field* field_;
  std::map<std::uint32_t, std::uint32_t> terms_;  // rank -> nonzero code
};

}  // namespace mel
