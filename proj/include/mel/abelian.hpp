#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mel/field.hpp"
#include "mel/zmat.hpp"

namespace mel {

class GroupElement;

/// Finitely generated abelian group in invariant factor normal form:
/// Z^rank x Z/m_1 x ... x Z/m_s with m_1 | m_2 | ... and every m_j >= 2.
/// Generators are ordered free part first.
class AbelianGroup {
 public:
  AbelianGroup(int rank, std::vector<long long> torsion);
  static AbelianGroup trivial() { return AbelianGroup(0, {}); }
  static AbelianGroup z(int r) { return AbelianGroup(r, {}); }
  static AbelianGroup cyclic(long long m) { return AbelianGroup(0, {m}); }
  /// arbitrary diagonal presentation Z^rank x prod Z/moduli, normalized
  static AbelianGroup normalized(int rank, std::vector<long long> moduli);

  int rank() const { return rank_; }
  const std::vector<long long>& torsion() const { return torsion_; }
  int ngens() const { return rank_ + static_cast<int>(torsion_.size()); }
  bool is_finite() const { return rank_ == 0; }
  bool is_trivial() const { return ngens() == 0; }
  std::optional<unsigned long long> order() const;
  long long exponent() const;  // finite groups; 1 for the trivial group
  bool has_order5_elements() const;

  GroupElement element(std::vector<long long> free,
                       std::vector<long long> tors) const;
  GroupElement identity() const;
  GroupElement generator(int i) const;
  GroupElement from_lift(std::span<const long long> lift) const;
  std::vector<GroupElement> elements() const;  // finite groups only

  bool operator==(const AbelianGroup& o) const {
    return rank_ == o.rank_ && torsion_ == o.torsion_;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int rank_;
  std::vector<long long> torsion_;
};

/// Element with canonical coordinates: free part any integers, torsion part
/// reduced into [0, m_j).
class GroupElement {
 public:
  GroupElement(AbelianGroup group, std::vector<long long> free,
               std::vector<long long> tors);

  const AbelianGroup& group() const { return group_; }
  const std::vector<long long>& free_coords() const { return free_; }
  const std::vector<long long>& torsion_coords() const { return tors_; }
  std::vector<long long> lift() const;  // free ++ torsion, length ngens
  bool is_identity() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(long long k) const;

  bool operator==(const GroupElement& o) const {
    return group_ == o.group_ && free_ == o.free_ && tors_ == o.tors_;
  }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  bool operator<(const GroupElement& o) const;  // label ordering

  std::string str() const;

 private:
  AbelianGroup group_;
  std::vector<long long> free_, tors_;
};

/// Homomorphism given by generator images; construction checks
/// well-definedness (torsion orders map to zero).
class GroupHom {
 public:
  GroupHom(AbelianGroup domain, AbelianGroup codomain,
           std::vector<GroupElement> images);
  static GroupHom identity(const AbelianGroup& g);

  const AbelianGroup& domain() const { return dom_; }
  const AbelianGroup& codomain() const { return cod_; }
  const std::vector<GroupElement>& images() const { return images_; }

  GroupElement apply(const GroupElement& g) const;

  bool operator==(const GroupHom& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && images_ == o.images_;
  }

  std::string str() const;

 private:
  AbelianGroup dom_, cod_;
  std::vector<GroupElement> images_;
};

/// Subgroup of a finitely generated abelian group, canonicalized through the
/// Smith form of its generator lattice. Provides an exact membership test,
/// the abstract invariant-factor type, and the index in the parent.
class Subgroup {
 public:
  Subgroup(AbelianGroup parent, std::span<const GroupElement> gens);

  const AbelianGroup& parent() const { return parent_; }
  const AbelianGroup& abstract_type() const { return abstract_; }
  /// nullopt when infinite
  std::optional<unsigned long long> index_in_parent() const { return index_; }
  bool contains(const GroupElement& g) const;
  bool is_full() const { return index_ == 1ull; }

 private:
  AbelianGroup parent_;
  AbelianGroup abstract_;
  std::optional<unsigned long long> index_;
  ZMat u_;                        // Smith transform of the lattice generators
  std::vector<long long> diag_;   // Smith diagonal, length = parent ngens
};

Subgroup subgroup_generated(std::span<const GroupElement> gens,
                            const AbelianGroup& parent);

/// Character of a finite abelian group with values in GF(p^k): one root of
/// unity per torsion generator, of order dividing that generator's modulus.
class Character {
 public:
  Character(AbelianGroup group, const Field& f,
            std::vector<std::uint32_t> values);
  static Character trivial(const AbelianGroup& g, const Field& f);

  const AbelianGroup& group() const { return group_; }
  const Field& field() const { return *field_; }
  const std::vector<std::uint32_t>& values() const { return values_; }

  std::uint32_t eval(const GroupElement& g) const;
  bool is_trivial() const;
  Character operator*(const Character& o) const;  // pointwise product

  bool operator==(const Character& o) const {
    return group_ == o.group_ && field_ == o.field_ && values_ == o.values_;
  }

 private:
  AbelianGroup group_;
  const Field* field_;
  std::vector<std::uint32_t> values_;
};

/// All |G| characters of a finite group over GF(p^k), enumerated from fixed
/// primitive roots of unity in odometer order of the exponent tuples.
/// Errors: 5 | exponent(G) (no such roots in characteristic five), or the
/// field stage is too small (extend it first).
std::vector<Character> character_group(const AbelianGroup& g, const Field& f);

/// zeta = chi respecting phi: zeta(g) = chi(phi(g)); domain must be finite.
Character pullback_character(const Character& chi, const GroupHom& phi);

}  // namespace mel
