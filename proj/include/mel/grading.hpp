#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mel/abelian.hpp"
#include "mel/melikyan.hpp"

namespace mel {

/// One homogeneous component: a group label and a basis of the subspace,
/// stored as columns in the canonical basis of M(2;n). When every column is
/// a unit vector the coordinate support is kept for fast exact membership.
struct GradingComponent {
  GroupElement label;
  Mat basis;
  std::optional<std::vector<std::uint32_t>> unit_support;  // sorted flats

  std::uint32_t dim() const { return basis.cols(); }
};

/// Decomposition of M(2;n) indexed by elements of an abelian group.
/// Construction enforces the vector space axioms (independent components
/// covering the algebra, distinct labels); the bracket axiom
/// [A_g, A_h] <= A_{g+h} is checked by verify_grading.
class Grading {
 public:
  static Grading monomial(AlgebraPtr alg, const Field& f, AbelianGroup group,
                          std::vector<GroupElement> degrees);
  static Grading general(AlgebraPtr alg, const Field& f, AbelianGroup group,
                         std::vector<GradingComponent> components);
  static Grading trivial(AlgebraPtr alg, const Field& f, AbelianGroup group);

  const AlgebraPtr& alg() const { return alg_; }
  const Field& field() const { return *field_; }
  const AbelianGroup& group() const { return group_; }
  bool is_monomial() const { return degrees_.has_value(); }
  /// degree of a canonical basis element (monomial gradings only)
  const GroupElement& degree(std::uint32_t flat) const;
  const std::vector<GradingComponent>& components() const { return components_; }
  const GradingComponent* component(const GroupElement& label) const;

  std::vector<GroupElement> support() const;

  /// cached verdict of the last verify_grading run
  std::optional<bool> verified() const { return verified_; }

  std::string str() const;

 private:
  Grading(AlgebraPtr alg, const Field& f, AbelianGroup group)
      : alg_(std::move(alg)), field_(&f), group_(std::move(group)) {}
  void build_components_from_degrees();
  void validate_components() const;

  AlgebraPtr alg_;
  const Field* field_;
  AbelianGroup group_;
  std::optional<std::vector<GroupElement>> degrees_;  // per flat index
  std::vector<GradingComponent> components_;          // sorted by label
  mutable std::optional<bool> verified_;

  friend struct VerifyResult verify_grading(const Grading& g);
};

/// Failure evidence: bracket of (y, z) from the components labeled (g, h)
/// escapes the component labeled g + h.
struct GradingWitness {
  GroupElement g, h;
  std::vector<std::uint32_t> y, z, bracket;
  std::string note;

  std::string str() const;
};

struct VerifyResult {
  bool pass;
  std::optional<GradingWitness> witness;
};

/// Exhaustive bracket check over all unordered component pairs; exact
/// membership by row reduction (or coordinate support for monomial parts).
VerifyResult verify_grading(const Grading& g);

/// Standard grading induced by a homomorphism from Z^2: basis element b gets
/// degree phi(standard_degree(b)).
Grading standard_grading(const AlgebraPtr& alg, const Field& f,
                         const GroupHom& phi);

/// The three distinguished gradings.
Grading grading_by_standard_degree(const AlgebraPtr& alg, const Field& f);
Grading grading_by_zz_degree(const AlgebraPtr& alg, const Field& f);
Grading grading_by_canonical_degree(const AlgebraPtr& alg, const Field& f);
/// phi with (1,0) -> (3,0), (0,1) -> (1,1); relates the two Z^2-gradings
GroupHom zz_relabel_hom();

/// Components merged along the fibers of phi; phi.domain() must be the
/// grading group.
Grading coarsen(const Grading& g, const GroupHom& phi);

Subgroup support_subgroup(const Grading& g);

struct RecoverResult {
  bool ok = false;
  std::optional<GroupHom> hom;
  bool surjective = false;
  std::optional<GroupElement> witness_label;  // fine component not contained
  std::string message;
};

/// Finds the homomorphism phi with coarse = coarsen(fine, phi) whenever fine
/// refines coarse; phi is unique on the subgroup generated by the support of
/// fine and extended to the whole group when the lattice allows it.
RecoverResult recover_homomorphism(const Grading& fine, const Grading& coarse);

/// Components pushed through an invertible matrix; throws on singular input.
Grading apply_automorphism(const Grading& g, const Mat& psi);

/// label-preserving equality of components as subspaces
bool same_grading(const Grading& a, const Grading& b);

}  // namespace mel
