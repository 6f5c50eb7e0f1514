#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mel/grading.hpp"

namespace mel {

/// Linear endomorphism of M(2;n) in the canonical basis, with cached
/// verification flags. The bracket-preserving flag is set either by an
/// exhaustive check over all basis pairs or derived when composing maps
/// that already carry it.
class Endomorphism {
 public:
  Endomorphism(AlgebraPtr alg, const Field& f, Mat m);

  const AlgebraPtr& alg() const { return alg_; }
  const Field& field() const { return *f_; }
  const Mat& matrix() const { return mat_; }

  bool is_invertible() const;
  bool is_bracket_preserving() const;  // exhaustive over basis pairs, cached
  bool is_w_preserving() const;        // W-block columns stay in the W block
  /// throws with a diagnostic unless invertible and bracket-preserving
  void expect_automorphism() const;

  Endomorphism compose(const Endomorphism& o) const;  // this after o
  Endomorphism inverse() const;
  MelikyanElement apply(const MelikyanElement& y) const;

  bool operator==(const Endomorphism& o) const { return mat_ == o.mat_; }

 private:
  AlgebraPtr alg_;
  const Field* f_;
  Mat mat_;
  mutable std::optional<bool> invertible_, bracket_preserving_, w_preserving_;
};

/// Endomorphism of the Witt part W(2;n), basis x^(a)d_1 block then
/// x^(a)d_2 block, each lexicographic.
class WittEndo {
 public:
  WittEndo(AlgebraPtr alg, const Field& f, Mat m);

  const AlgebraPtr& alg() const { return alg_; }
  const Field& field() const { return *f_; }
  const Mat& matrix() const { return mat_; }  // 2N x 2N

  bool is_bracket_preserving() const;
  bool is_invertible() const;
  void expect_automorphism() const;

  bool operator==(const WittEndo& o) const { return mat_ == o.mat_; }

 private:
  AlgebraPtr alg_;
  const Field* f_;
  Mat mat_;
  mutable std::optional<bool> invertible_, bracket_preserving_;
};

/// Point of the two-parameter torus: a pair of nonzero scalars with
/// alpha = t1 t2.
struct TorusParameter {
  FieldElement t1, t2;

  TorusParameter(FieldElement a, FieldElement b) : t1(a), t2(b) {
    require(!t1.is_zero() && !t2.is_zero(), "torus parameter must be nonzero");
    require(&t1.field() == &t2.field(), "torus parameter: field mismatch");
  }
  FieldElement alpha() const { return t1 * t2; }
  std::string str() const { return "(" + t1.str() + "," + t2.str() + ")"; }
  bool operator==(const TorusParameter& o) const {
    return t1 == o.t1 && t2 == o.t2;
  }
};

/// Diagonal matrix of the torus action: basis element b is scaled by
/// t^(zz_degree(b)) = t1^u t2^v.
Mat lambda_matrix(const AlgebraPtr& alg, const Field& f, std::uint32_t t1,
                  std::uint32_t t2);
/// Verified automorphism wrapper around lambda_matrix.
Endomorphism lambda(const AlgebraPtr& alg, const Field& f,
                    const TorusParameter& t);

struct LambdaKernel {
  std::vector<TorusParameter> params;
  bool complete;  // false when the field lacks the cube roots of unity
};
/// {(t, t^-1) : t^3 = 1}; three points once the cube roots exist.
LambdaKernel kernel_of_lambda(const Field& f);

/// lambda(beta^2, beta^2) for the fixed primitive cube root beta; scales the
/// canonical-degree-i block by (beta^2)^i and restricts to the identity on W.
Endomorphism theta(const AlgebraPtr& alg, const Field& f);

/// Exponent swap x^(a1,a2) -> x^(a2,a1) on O; needs n1 = n2.
Mat upsilon_matrix(const AlgebraPtr& alg, const Field& f);
/// multiplicativity of an O-block matrix on all monomial pairs
bool is_o_algebra_map(const AlgebraPtr& alg, const Field& f, const Mat& m);

/// Conjugation of W by the exponent swap: x^(a)d_1 -> x^(abar)d_2 and
/// symmetrically; needs n1 = n2.
WittEndo sigma_w(const AlgebraPtr& alg, const Field& f);

/// Diagonal torus element of Aut W: x^(a)d_k -> s1^{a1} s2^{a2} s_k^{-1}.
Mat t_w_matrix(const AlgebraPtr& alg, const Field& f, std::uint32_t s1,
               std::uint32_t s2);

struct SigmaM {
  Endomorphism psi;
  FieldElement c_o, c_t;  // scalars on the O and tilde parts
};
/// Extension of sigma_w to the whole algebra: sigma on W, c_o * upsilon on O,
/// c_t * (swap compose upsilon) on the tilde part. The two scalars are solved
/// from the bracket compatibility equations c_t = -c_o^2, c_o = -c_t^2 and the
/// result is verified exhaustively; construction fails loudly otherwise.
SigmaM sigma_m(const AlgebraPtr& alg, const Field& f);

/// Restriction to the W block; requires the W-preserving flag.
WittEndo pi_restrict(const Endomorphism& psi);

/// Character action on a verified grading: the component labeled g is scaled
/// by chi(g). Verified automorphism.
Endomorphism eta(const Grading& g, const Character& chi);

/// Simultaneous eigenspace decomposition of commuting automorphisms whose
/// orders match the torsion generators of hint; labels are the joint
/// discrete logs. Errors on non-commuting input, order mismatch (including
/// unipotent parts), orders divisible by 5, or missing roots of unity.
Grading eigenspace_grading(std::span<const Endomorphism> q,
                           const AbelianGroup& hint);

/// ad y as a matrix in the canonical basis.
Mat ad_matrix(const AlgebraPtr& alg, const Field& f, const MelikyanElement& y);

/// I + ad y + (ad y)^2 / 2, defined when (ad y)^3 = 0; verified automorphism.
Endomorphism exp_ad(const AlgebraPtr& alg, const MelikyanElement& y);

struct InTorusResult {
  bool yes = false;
  std::optional<TorusParameter> param;    // over param_field
  const Field* param_field = nullptr;     // endo field or its cubic extension
  std::optional<FieldEmbedding> embedding;  // set when an extension was needed
  std::string obstruction;
};
/// Decides membership in the lambda family: diagonal, constant on every
/// zz-component, multiplicative along the labels; recovers a parameter,
/// extracting cube roots in a degree-3 extension when necessary.
InTorusResult in_torus(const AlgebraPtr& alg, const Field& f, const Mat& m);
InTorusResult in_torus(const Endomorphism& psi);

struct NormalizesResult {
  bool yes = false;
  enum class Induced { identity, swap, other } induced = Induced::other;
  std::vector<TorusParameter> failures;  // samples whose conjugate escapes
};
/// Conjugates lambda(t) by psi for every sample and checks the result stays
/// in the torus; reports the induced map on parameters.
NormalizesResult normalizes_torus(const Endomorphism& psi,
                                  std::span<const TorusParameter> samples);

/// All (q-1)^2 torus points over the given field, row-major in the codes.
std::vector<TorusParameter> all_torus_points(const Field& f);

}  // namespace mel
