#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <vector>

#include "mel/linalg.hpp"
#include "mel/witt.hpp"

namespace mel {

/// Canonical basis blocks of M(2;n) = O + W + W~, in matrix order:
/// O first, then x^(a)d_1, x^(a)d_2, x^(a)td_1, x^(a)td_2, each lex in a.
enum class Block : std::uint8_t { O = 0, W1 = 1, W2 = 2, T1 = 3, T2 = 4 };

struct BasisIndex {
  Block block;
  std::uint32_t mono;  // lexicographic rank of the exponent

  bool operator==(const BasisIndex& o) const {
    return block == o.block && mono == o.mono;
  }
};

/// Element of the Melikyan algebra: a triple (polynomial, vector field,
/// tilde field) over a common shape and field stage.
class MelikyanElement {
 public:
  MelikyanElement(ShapePtr shape, const Field& f);  // zero
  MelikyanElement(Poly o, VectorField w, TildeField wt);

  const ShapePtr& shape() const { return shape_; }
  const Field& field() const { return *field_; }
  const Poly& o_part() const { return o_; }
  const VectorField& w_part() const { return w_; }
  const TildeField& wt_part() const { return wt_; }
  bool is_zero() const { return o_.is_zero() && w_.is_zero() && wt_.is_zero(); }

  static MelikyanElement from_o(Poly f);
  static MelikyanElement from_w(VectorField d);
  static MelikyanElement from_wt(TildeField t);

  MelikyanElement operator+(const MelikyanElement& z) const;
  MelikyanElement operator-(const MelikyanElement& z) const;
  MelikyanElement operator-() const;
  MelikyanElement scaled(std::uint32_t code) const;

  bool operator==(const MelikyanElement& z) const {
    return o_ == z.o_ && w_ == z.w_ && wt_ == z.wt_;
  }
  bool operator!=(const MelikyanElement& z) const { return !(*this == z); }

  std::string str() const;

 private:
  ShapePtr shape_;
  const Field* field_;
  Poly o_;
  VectorField w_;
  TildeField wt_;
};

/// The Melikyan bracket: bilinear extension of
///   [D, E~] = [D,E]~ + 2 div(D) E~
///   [D, f]  = D(f) - 2 div(D) f
///   [f, E~] = f E                                (lands in W)
///   [f, g]  = 2 (f d1(g) - g d1(f)) td_2 + 2 (g d2(f) - f d2(g)) td_1
///   [f1 td_1 + f2 td_2, g1 td_1 + g2 td_2] = f1 g2 - f2 g1
/// with W x W the Witt bracket and the remaining argument orders fixed by
/// anticommutativity. Defined only in characteristic 5.
MelikyanElement m_bracket(const MelikyanElement& y, const MelikyanElement& z);

/// M(2;n) for p = 5: canonical basis bookkeeping, the three degree maps,
/// and the structure constant table over the prime field. The table is
/// built once per algebra and is immutable afterwards.
class MelikyanAlgebra : public std::enable_shared_from_this<MelikyanAlgebra> {
 public:
  static std::shared_ptr<const MelikyanAlgebra> make(ShapePtr shape);
  static std::shared_ptr<const MelikyanAlgebra> make(int n1, int n2);

  const ShapePtr& shape() const { return shape_; }
  std::uint32_t dim() const { return dim_; }       // 5 * 5^{n1+n2}
  std::uint32_t o_dim() const { return shape_->dim(); }

  std::uint32_t flat(BasisIndex b) const;
  BasisIndex index(std::uint32_t flat) const;
  MelikyanElement basis_element(std::uint32_t flat, const Field& f) const;

  /// Degree in the Z^2-grading whose homogeneous spaces are spanned by
  /// single monomial blocks: x^(a)d_i -> 3(a - e_i), x^(a)td_i -> that + (1,1),
  /// x^(a) -> 3a - (1,1).
  std::array<int, 2> zz_degree(std::uint32_t flat) const;
  /// Degree in the standard Z^2-grading; the unique (i,j) with
  /// (3i + j, j) = zz_degree.
  std::array<int, 2> standard_degree(std::uint32_t flat) const;
  /// Canonical Z-degree: 3 deg_W on W, 3 deg_W + 2 on W~, 3 deg_O - 2 on O.
  int canonical_degree(std::uint32_t flat) const;

  int min_canonical_degree() const;
  int max_canonical_degree() const;
  /// basis elements of canonical degree >= i, ascending flat order
  std::vector<std::uint32_t> filtration_component(int i) const;

  struct Term {
    std::uint32_t idx;
    std::uint8_t c;  // structure constant mod 5
  };
  /// [b_i, b_j] as stored structure constants (prime-field table)
  std::span<const Term> bracket_table(std::uint32_t i, std::uint32_t j) const;

  /// coordinates in the canonical basis over the element's field stage
  std::vector<std::uint32_t> coords(const MelikyanElement& y) const;
  SparseVec sparse_coords(const MelikyanElement& y) const;
  MelikyanElement element_from_coords(std::span<const std::uint32_t> v,
                                      const Field& f) const;
  MelikyanElement element_from_sparse(const SparseVec& v, const Field& f) const;

  /// bracket in coordinates over any field stage of characteristic 5,
  /// computed through the structure constant table
  SparseVec bracket_coords(const SparseVec& y, const SparseVec& z,
                           const Field& f) const;

 private:
  explicit MelikyanAlgebra(ShapePtr shape);
  void ensure_table() const;

  ShapePtr shape_;
  std::uint32_t dim_;

  mutable std::once_flag table_once_;
  mutable std::vector<std::uint32_t> table_off_;  // dim*dim + 1 offsets
  mutable std::vector<Term> table_;
};

using AlgebraPtr = std::shared_ptr<const MelikyanAlgebra>;

}  // namespace mel
