#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mel/automorphism.hpp"
#include "mel/grading.hpp"
#include "test_common.hpp"

using namespace mel;
using mel::test::throws_containing;

namespace {

struct Fixture {
  const Field& f = make_field(5, 1);
  AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
  AbelianGroup z2 = AbelianGroup::z(2);
  AbelianGroup z1 = AbelianGroup::z(1);

  GroupHom augmentation() const {
    return GroupHom(z2, z1, {z1.element({1}, {}), z1.element({1}, {})});
  }
};

}  // namespace

TEST_CASE("the three distinguished gradings pass verification") {
  Fixture x;
  Grading zz = grading_by_zz_degree(x.alg, x.f);
  Grading std_g = grading_by_standard_degree(x.alg, x.f);
  Grading canon = grading_by_canonical_degree(x.alg, x.f);
  CHECK(verify_grading(zz).pass);
  CHECK(verify_grading(std_g).pass);
  CHECK(verify_grading(canon).pass);
  CHECK(verify_grading(Grading::trivial(x.alg, x.f, x.z2)).pass);

  // zz is the relabeling of the standard grading along (3,0),(1,1)
  GroupHom rel = zz_relabel_hom();
  for (std::uint32_t b = 0; b < x.alg->dim(); ++b)
    CHECK(zz.degree(b) == rel.apply(std_g.degree(b)));
}

TEST_CASE("a label swap is caught with a concrete witness") {
  Fixture x;
  Grading zz = grading_by_zz_degree(x.alg, x.f);
  // swap the labels of Span{d1} at (-3,0) and Span{1} at (-1,-1)
  GroupElement a = x.z2.element({-3, 0}, {}), b = x.z2.element({-1, -1}, {});
  std::vector<GroupElement> degrees;
  for (std::uint32_t i = 0; i < x.alg->dim(); ++i) {
    GroupElement d = zz.degree(i);
    degrees.push_back(d == a ? b : d == b ? a : d);
  }
  Grading bad = Grading::monomial(x.alg, x.f, x.z2, std::move(degrees));
  VerifyResult r = verify_grading(bad);
  CHECK(!r.pass);
  REQUIRE(r.witness.has_value());
  // the witness is a genuine counterexample: recompute its bracket
  SparseVec w = x.alg->bracket_coords(to_sparse(r.witness->y),
                                      to_sparse(r.witness->z), x.f);
  CHECK(to_dense(w, x.alg->dim()) == r.witness->bracket);
  CHECK(!w.empty());
}

TEST_CASE("standard gradings") {
  Fixture x;
  // identity gives the standard Z^2-grading itself
  Grading g = standard_grading(x.alg, x.f, GroupHom::identity(x.z2));
  for (std::uint32_t b = 0; b < x.alg->dim(); ++b) {
    auto [i, j] = x.alg->standard_degree(b);
    CHECK(g.degree(b) == x.z2.element({i, j}, {}));
  }

  // (i,j) -> 3i + 2j reproduces the canonical degree on every basis element
  GroupHom to_z(x.z2, x.z1, {x.z1.element({3}, {}), x.z1.element({2}, {})});
  Grading gz = standard_grading(x.alg, x.f, to_z);
  for (std::uint32_t b = 0; b < x.alg->dim(); ++b)
    CHECK(gz.degree(b) ==
          x.z1.element({x.alg->canonical_degree(b)}, {}));
  CHECK(same_grading(gz, grading_by_canonical_degree(x.alg, x.f)));

  // a Z/4 quotient passes the checker
  AbelianGroup c4 = AbelianGroup::cyclic(4);
  GroupHom phi(x.z2, c4, {c4.element({}, {1}), c4.element({}, {2})});
  CHECK(verify_grading(standard_grading(x.alg, x.f, phi)).pass);
}

TEST_CASE("coarsening") {
  Fixture x;
  Grading zz = grading_by_zz_degree(x.alg, x.f);

  // the canonical Z-grading is the coarsening along the coordinate sum
  Grading canon = coarsen(zz, x.augmentation());
  CHECK(same_grading(canon, grading_by_canonical_degree(x.alg, x.f)));
  for (std::uint32_t b = 0; b < x.alg->dim(); ++b)
    CHECK(canon.degree(b).free_coords()[0] == x.alg->canonical_degree(b));

  // identity coarsening is the grading itself
  CHECK(same_grading(coarsen(zz, GroupHom::identity(x.z2)), zz));

  // componentwise mod 3 reduction: at most 9 components, dims sum to 125
  AbelianGroup c33(0, {3, 3});
  GroupHom red(x.z2, c33, {c33.element({}, {1, 0}), c33.element({}, {0, 1})});
  Grading small = coarsen(zz, red);
  CHECK(small.components().size() <= 9);
  std::uint32_t total = 0;
  for (const auto& c : small.components()) total += c.dim();
  CHECK(total == 125);
  CHECK(verify_grading(small).pass);

  CHECK(throws_containing([&] { coarsen(small, x.augmentation()); },
                          "domain mismatch"));
}

TEST_CASE("support facts") {
  Fixture x;
  // zz support generates an index-3 subgroup; standard support generates Z^2
  Subgroup zz_sup = support_subgroup(grading_by_zz_degree(x.alg, x.f));
  CHECK(zz_sup.index_in_parent() == 3ull);
  CHECK(zz_sup.abstract_type() == AbelianGroup::z(2));

  Subgroup std_sup = support_subgroup(grading_by_standard_degree(x.alg, x.f));
  CHECK(std_sup.is_full());

  Grading triv = Grading::trivial(x.alg, x.f, x.z2);
  auto sup = triv.support();
  REQUIRE(sup.size() == 1);
  CHECK(sup[0].is_identity());
}

TEST_CASE("recover_homomorphism") {
  Fixture x;
  Grading zz = grading_by_zz_degree(x.alg, x.f);
  Grading canon = grading_by_canonical_degree(x.alg, x.f);

  // the canonical grading is recovered as the coordinate-sum map
  RecoverResult r = recover_homomorphism(zz, canon);
  REQUIRE(r.ok);
  CHECK(*r.hom == x.augmentation());
  CHECK(r.surjective);

  // identity round trip
  RecoverResult rid = recover_homomorphism(zz, zz);
  REQUIRE(rid.ok);
  CHECK(*rid.hom == GroupHom::identity(x.z2));

  // a verified grading that zz does not refine is rejected with a witness:
  // twist the canonical grading by a unipotent automorphism
  MelikyanElement top = MelikyanElement::from_wt(
      TildeField::monomial(x.alg->shape(), x.f, std::vector<int>{4, 4}, 0));
  Endomorphism psi = exp_ad(x.alg, top);
  Grading twisted = apply_automorphism(canon, psi.matrix());
  REQUIRE(verify_grading(twisted).pass);
  RecoverResult bad = recover_homomorphism(zz, twisted);
  CHECK(!bad.ok);
  CHECK(bad.witness_label.has_value());
}

TEST_CASE("coarsen-recover round trips, several quotients") {
  Fixture x;
  Grading std_g = grading_by_standard_degree(x.alg, x.f);
  AbelianGroup c6 = AbelianGroup::cyclic(6);
  AbelianGroup c2x2(0, {2, 2});

  std::vector<GroupHom> homs;
  homs.emplace_back(x.z2, c6, std::vector<GroupElement>{c6.element({}, {1}),
                                                        c6.element({}, {4})});
  homs.emplace_back(x.z2, c2x2, std::vector<GroupElement>{
                                     c2x2.element({}, {1, 0}),
                                     c2x2.element({}, {1, 1})});
  homs.push_back(x.augmentation());
  for (const auto& phi : homs) {
    Grading coarse = coarsen(std_g, phi);
    RecoverResult r = recover_homomorphism(std_g, coarse);
    REQUIRE(r.ok);
    // the standard support generates Z^2, so the hom is pinned everywhere
    CHECK(*r.hom == phi);
  }
}

TEST_CASE("apply_automorphism") {
  Fixture x;
  Grading zz = grading_by_zz_degree(x.alg, x.f);
  Mat id = Mat::identity(x.f, x.alg->dim());
  CHECK(same_grading(apply_automorphism(zz, id), zz));

  CHECK(throws_containing(
      [&] { apply_automorphism(zz, Mat(x.f, x.alg->dim(), x.alg->dim())); },
      "singular"));

  // a lambda twist fixes every component of the zz grading
  const Field& f25 = make_field(5, 2);
  AlgebraPtr alg = x.alg;
  Grading zz25 = grading_by_zz_degree(alg, f25);
  Mat lam = lambda_matrix(alg, f25, 7, 11);
  CHECK(same_grading(apply_automorphism(zz25, lam), zz25));
}

TEST_CASE("verify_grading over random standard quotients") {
  Fixture x;
  Rng rng(2024);
  std::vector<AbelianGroup> targets{
      AbelianGroup::z(1),        AbelianGroup::z(2),
      AbelianGroup::cyclic(2),   AbelianGroup::cyclic(3),
      AbelianGroup::cyclic(4),   AbelianGroup::cyclic(6),
      AbelianGroup(1, {2})};
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const AbelianGroup& g = targets[trial % targets.size()];
    auto rand_elem = [&] {
      std::vector<long long> fr(g.rank()), to(g.torsion().size());
      for (auto& v : fr) v = static_cast<long long>(rng.below(7)) - 3;
      for (std::size_t i = 0; i < to.size(); ++i)
        to[i] = static_cast<long long>(rng.below(g.torsion()[i]));
      return g.element(fr, to);
    };
    GroupHom phi(x.z2, g, {rand_elem(), rand_elem()});
    Grading gr = standard_grading(x.alg, x.f, phi);
    CHECK(verify_grading(gr).pass);
    ++checked;
  }
  CHECK(checked == 50);
}
