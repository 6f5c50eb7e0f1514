#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mel/serialize.hpp"
#include "mel/suites.hpp"
#include "test_common.hpp"

using namespace mel;

TEST_CASE("field element JSON round trip and shape") {
  const Field& f = make_field(5, 2);
  FieldElement e(f, f.root_of_unity(3));
  Json j = element_to_json(e);
  CHECK(j["p"] == 5);
  CHECK(j["k"] == 2);
  CHECK(j["coords"].is_array());
  CHECK(element_from_json(j) == e);
}

TEST_CASE("polynomial and field JSON round trips") {
  const Field& f = make_field(5, 1);
  auto s = Shape::make(2, {1, 1}, 5);
  Poly p = Poly::monomial(s, f, std::vector<int>{2, 1}, 3);
  p.add_term(s->rank(std::vector<int>{0, 4}), 1);
  Json j = poly_to_json(p);
  CHECK(j.is_array());
  CHECK(j[0].contains("a"));
  CHECK(poly_from_json(j, s, f) == p);

  VectorField d = VectorField::monomial(s, f, std::vector<int>{1, 0}, 0, 2);
  Json jd = vector_field_to_json(d);
  CHECK(jd["kind"] == "W");
  CHECK(vector_field_from_json(jd, s, f) == d);

  TildeField t = TildeField::monomial(s, f, std::vector<int>{0, 1}, 1, 4);
  Json jt = tilde_field_to_json(t);
  CHECK(jt["kind"] == "Wtilde");
  CHECK(tilde_field_from_json(jt, s, f) == t);
}

TEST_CASE("melikyan element three-part form") {
  const Field& f = make_field(5, 1);
  AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
  MelikyanElement y = alg->basis_element(7, f) + alg->basis_element(60, f) -
                      alg->basis_element(111, f);
  Json j = melikyan_to_json(y);
  CHECK(j.contains("o"));
  CHECK(j.contains("w"));
  CHECK(j.contains("wt"));
  CHECK(melikyan_from_json(j, alg, f) == y);

  Json ja = algebra_to_json(*alg);
  CHECK(ja["algebra"] == "melikyan");
  CHECK(ja["p"] == 5);
  CHECK(algebra_from_json(ja)->dim() == 125);
}

TEST_CASE("group, hom, character round trips") {
  AbelianGroup g(1, {2, 6});
  Json jg = group_to_json(g);
  CHECK(jg["rank"] == 1);
  CHECK(group_from_json(jg) == g);

  GroupElement e = g.element({-4}, {1, 5});
  CHECK(group_element_from_json(group_element_to_json(e), g) == e);

  AbelianGroup z2 = AbelianGroup::z(2);
  AbelianGroup c3 = AbelianGroup::cyclic(3);
  GroupHom phi(z2, c3, {c3.element({}, {1}), c3.element({}, {2})});
  GroupHom back = hom_from_json(hom_to_json(phi));
  CHECK(back == phi);

  const Field& f = make_field(5, 2);
  Character chi(c3, f, {f.root_of_unity(3)});
  CHECK(character_from_json(character_to_json(chi), f) == chi);
}

TEST_CASE("grading JSON: compact and component forms") {
  const Field& f = make_field(5, 1);
  AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
  Grading zz = grading_by_zz_degree(alg, f);
  Json j = grading_to_json(zz);
  CHECK(j["schema"] == "mel/grading/1");
  CHECK(j.contains("degrees"));  // monomial gradings use the compact form
  Grading back = grading_from_json(j);
  CHECK(same_grading(back, zz));
  for (std::uint32_t b = 0; b < alg->dim(); ++b)
    CHECK(back.degree(b) == zz.degree(b));

  // a twisted (general) grading round-trips through component bases
  MelikyanElement top = MelikyanElement::from_wt(
      TildeField::monomial(alg->shape(), f, std::vector<int>{4, 4}, 0));
  Grading tw = apply_automorphism(zz, exp_ad(alg, top).matrix());
  Json jt = grading_to_json(tw);
  CHECK(jt.contains("components"));
  CHECK(same_grading(grading_from_json(jt), tw));
}

TEST_CASE("endomorphism JSON") {
  const Field& f = make_field(5, 2);
  AlgebraPtr alg = MelikyanAlgebra::make(1, 1);
  Endomorphism th = theta(alg, f);
  Json j = endomorphism_to_json(th);
  CHECK(j["schema"] == "mel/endomorphism/1");
  Endomorphism back = endomorphism_from_json(j);
  CHECK(back.matrix() == th.matrix());
}

TEST_CASE("certificates carry schema, anchors and witnesses") {
  SuiteOptions opt;
  Certificate cert = run_suite("simplicity", opt);
  Json j = cert.to_json();
  CHECK(j["schema"] == "mel/certificate/1");
  CHECK(j["all_pass"] == true);
  CHECK(j["checks"].size() == 1);
  CHECK(j["checks"][0]["name"] == "bracket-closure-simplicity");
  CHECK(j["checks"][0].contains("anchor"));
  CHECK(j["checks"][0].contains("wall_ms"));
  // canonical form excludes timings
  CHECK(!cert.to_json(false)["checks"][0].contains("wall_ms"));
}
