#pragma once

#include <array>
#include <vector>

#include "mel/poly.hpp"

namespace mel {

/// Special derivation sum f_1 d_1 + ... + f_m d_m of O(m;n); the elements of
/// the Witt algebra W(m;n).
class VectorField {
 public:
  VectorField(ShapePtr shape, const Field& f);  // zero
  static VectorField monomial(ShapePtr shape, const Field& f,
                              std::span<const int> a, int axis,
                              std::uint32_t coeff_code = 1);
  static VectorField from_components(std::vector<Poly> comps);

  const ShapePtr& shape() const { return shape_; }
  const Field& field() const { return *field_; }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& component(int axis) const { return comps_.at(axis); }
  bool is_zero() const;

  /// D(f) = sum_i f_i * d_i(f)
  Poly apply(const Poly& f) const;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField scaled(std::uint32_t code) const;
  /// componentwise product (g f_1) d_1 + ... used by the mixed bracket rules
  VectorField mul_left(const Poly& g) const;

  bool operator==(const VectorField& o) const { return comps_ == o.comps_; }
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  std::string str() const;

 private:
  ShapePtr shape_;
  const Field* field_;
  std::vector<Poly> comps_;
};

/// [D,E] = sum_j (D(g_j) - E(f_j)) d_j, the bilinear extension of
/// [f d_i, g d_j] = f (d_i g) d_j - g (d_j f) d_i.
VectorField witt_bracket(const VectorField& d, const VectorField& e);

/// d_1(f_1) + d_2(f_2); defined for m = 2 only.
Poly divergence(const VectorField& d);

/// deg_W(x^(a) d_i) = |a| - 1.
int witt_degree(std::span<const int> a);

/// The relabeled copy f_1 td_1 + f_2 td_2 of a two-variable vector field.
/// A distinct type on purpose: the Melikyan bracket treats W and its tilde
/// copy asymmetrically.
class TildeField {
 public:
  TildeField(ShapePtr shape, const Field& f);  // zero
  static TildeField monomial(ShapePtr shape, const Field& f,
                             std::span<const int> a, int axis,
                             std::uint32_t coeff_code = 1);
  static TildeField from_components(Poly c0, Poly c1);

  const ShapePtr& shape() const { return shape_; }
  const Field& field() const { return *field_; }
  const std::array<Poly, 2>& components() const { return comps_; }
  const Poly& component(int axis) const { return comps_.at(axis); }
  bool is_zero() const { return comps_[0].is_zero() && comps_[1].is_zero(); }

  TildeField operator+(const TildeField& o) const;
  TildeField operator-(const TildeField& o) const;
  TildeField operator-() const;
  TildeField scaled(std::uint32_t code) const;
  TildeField mul_left(const Poly& g) const;

  bool operator==(const TildeField& o) const { return comps_ == o.comps_; }
  bool operator!=(const TildeField& o) const { return !(*this == o); }

  std::string str() const;

 private:
  ShapePtr shape_;
  const Field* field_;
  std::array<Poly, 2> comps_;
};

TildeField tilde(const VectorField& d);    // m = 2 only
VectorField untilde(const TildeField& t);  // inverse relabeling

}  // namespace mel
