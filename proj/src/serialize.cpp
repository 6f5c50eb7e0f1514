#include "mel/serialize.hpp"

namespace mel {

namespace {
std::vector<int> int_vec(const Json& j) {
  require(j.is_array(), "serialize: expected an array");
  return j.get<std::vector<int>>();
}
}  // namespace

Json field_to_json(const Field& f) {
  return Json{{"p", f.characteristic()}, {"k", f.degree()}};
}

const Field& field_from_json(const Json& j) {
  return make_field(j.at("p").get<int>(), j.at("k").get<int>());
}

Json element_to_json(const FieldElement& e) {
  Json j = field_to_json(e.field());
  j["coords"] = e.coords();
  return j;
}

FieldElement element_from_json(const Json& j) {
  const Field& f = field_from_json(j);
  auto coords = int_vec(j.at("coords"));
  return FieldElement(f, f.code_of(coords));
}

Json shape_to_json(const Shape& s) {
  return Json{{"m", s.m()}, {"n", s.n()}, {"p", s.p()}};
}

ShapePtr shape_from_json(const Json& j) {
  return Shape::make(j.at("m").get<int>(), int_vec(j.at("n")),
                     j.at("p").get<int>());
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (auto [r, c] : p.terms()) {
    Json t;
    t["a"] = p.shape()->unrank(r);
    t["coeff"] = element_to_json(FieldElement(p.field(), c));
    terms.push_back(std::move(t));
  }
  return terms;
}

Poly poly_from_json(const Json& j, ShapePtr shape, const Field& f) {
  Poly out(std::move(shape), f);
  require(j.is_array(), "poly: expected a term array");
  for (const auto& t : j) {
    FieldElement c = element_from_json(t.at("coeff"));
    require(&c.field() == &f, "poly: coefficient over wrong field");
    out.add_term(out.shape()->rank(int_vec(t.at("a"))), c.code());
  }
  return out;
}

Json vector_field_to_json(const VectorField& d) {
  Json comps = Json::array();
  for (const auto& c : d.components()) comps.push_back(poly_to_json(c));
  return Json{{"kind", "W"}, {"components", std::move(comps)}};
}

VectorField vector_field_from_json(const Json& j, ShapePtr shape,
                                   const Field& f) {
  require(j.at("kind") == "W", "vector field: kind must be W");
  std::vector<Poly> comps;
  for (const auto& c : j.at("components"))
    comps.push_back(poly_from_json(c, shape, f));
  return VectorField::from_components(std::move(comps));
}

Json tilde_field_to_json(const TildeField& t) {
  Json comps = Json::array();
  for (const auto& c : t.components()) comps.push_back(poly_to_json(c));
  return Json{{"kind", "Wtilde"}, {"components", std::move(comps)}};
}

TildeField tilde_field_from_json(const Json& j, ShapePtr shape, const Field& f) {
  require(j.at("kind") == "Wtilde", "tilde field: kind must be Wtilde");
  const auto& comps = j.at("components");
  require(comps.size() == 2, "tilde field: two components required");
  return TildeField::from_components(poly_from_json(comps[0], shape, f),
                                     poly_from_json(comps[1], shape, f));
}

Json algebra_to_json(const MelikyanAlgebra& a) {
  return Json{{"algebra", "melikyan"},
              {"p", a.shape()->p()},
              {"n", a.shape()->n()}};
}

AlgebraPtr algebra_from_json(const Json& j) {
  require(j.at("algebra") == "melikyan", "algebra: unknown kind");
  require(j.at("p").get<int>() == 5, "algebra: characteristic must be 5");
  auto n = int_vec(j.at("n"));
  require(n.size() == 2, "algebra: n must be a pair");
  return MelikyanAlgebra::make(n[0], n[1]);
}

Json melikyan_to_json(const MelikyanElement& y) {
  return Json{{"o", poly_to_json(y.o_part())},
              {"w", vector_field_to_json(y.w_part())},
              {"wt", tilde_field_to_json(y.wt_part())}};
}

MelikyanElement melikyan_from_json(const Json& j, const AlgebraPtr& alg,
                                   const Field& f) {
  return MelikyanElement(poly_from_json(j.at("o"), alg->shape(), f),
                         vector_field_from_json(j.at("w"), alg->shape(), f),
                         tilde_field_from_json(j.at("wt"), alg->shape(), f));
}

Json group_to_json(const AbelianGroup& g) {
  return Json{{"rank", g.rank()}, {"torsion", g.torsion()}};
}

AbelianGroup group_from_json(const Json& j) {
  return AbelianGroup(j.at("rank").get<int>(),
                      j.at("torsion").get<std::vector<long long>>());
}

Json group_element_to_json(const GroupElement& e) {
  return Json{{"free", e.free_coords()}, {"torsion", e.torsion_coords()}};
}

GroupElement group_element_from_json(const Json& j, const AbelianGroup& g) {
  return g.element(j.at("free").get<std::vector<long long>>(),
                   j.at("torsion").get<std::vector<long long>>());
}

Json hom_to_json(const GroupHom& h) {
  Json images = Json::array();
  for (const auto& im : h.images()) images.push_back(group_element_to_json(im));
  return Json{{"domain", group_to_json(h.domain())},
              {"codomain", group_to_json(h.codomain())},
              {"images", std::move(images)}};
}

GroupHom hom_from_json(const Json& j) {
  AbelianGroup dom = group_from_json(j.at("domain"));
  AbelianGroup cod = group_from_json(j.at("codomain"));
  std::vector<GroupElement> images;
  for (const auto& im : j.at("images"))
    images.push_back(group_element_from_json(im, cod));
  return GroupHom(std::move(dom), std::move(cod), std::move(images));
}

Json character_to_json(const Character& c) {
  Json values = Json::array();
  for (auto v : c.values())
    values.push_back(element_to_json(FieldElement(c.field(), v)));
  return Json{{"group", group_to_json(c.group())},
              {"field", field_to_json(c.field())},
              {"values", std::move(values)}};
}

Character character_from_json(const Json& j, const Field& f) {
  AbelianGroup g = group_from_json(j.at("group"));
  std::vector<std::uint32_t> values;
  for (const auto& v : j.at("values")) {
    FieldElement e = element_from_json(v);
    require(&e.field() == &f, "character: value over wrong field");
    values.push_back(e.code());
  }
  return Character(std::move(g), f, std::move(values));
}

namespace {

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::uint32_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::uint32_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j, const Field& f) {
  require(j.is_array() && !j.empty(), "matrix: expected rows");
  std::uint32_t rows = static_cast<std::uint32_t>(j.size());
  std::uint32_t cols = static_cast<std::uint32_t>(j[0].size());
  Mat m(f, rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    require(j[r].size() == cols, "matrix: ragged rows");
    for (std::uint32_t c = 0; c < cols; ++c) {
      std::uint32_t code = j[r][c].get<std::uint32_t>();
      require(code < f.order(), "matrix: entry code out of range");
      m.at(r, c) = code;
    }
  }
  return m;
}

}  // namespace

Json grading_to_json(const Grading& g) {
  Json j{{"schema", "mel/grading/1"},
         {"algebra", algebra_to_json(*g.alg())},
         {"field", field_to_json(g.field())},
         {"group", group_to_json(g.group())}};
  if (g.is_monomial()) {
    Json degrees = Json::array();
    for (std::uint32_t b = 0; b < g.alg()->dim(); ++b)
      degrees.push_back(group_element_to_json(g.degree(b)));
    j["degrees"] = std::move(degrees);
  } else {
    Json comps = Json::array();
    for (const auto& c : g.components()) {
      comps.push_back(Json{{"label", group_element_to_json(c.label)},
                           {"basis", mat_to_json(c.basis)}});
    }
    j["components"] = std::move(comps);
  }
  if (g.verified().has_value()) j["verified"] = *g.verified();
  return j;
}

Grading grading_from_json(const Json& j) {
  require(j.at("schema") == "mel/grading/1", "grading: unknown schema");
  AlgebraPtr alg = algebra_from_json(j.at("algebra"));
  const Field& f = field_from_json(j.at("field"));
  AbelianGroup group = group_from_json(j.at("group"));
  if (j.contains("degrees")) {
    std::vector<GroupElement> degrees;
    for (const auto& d : j.at("degrees"))
      degrees.push_back(group_element_from_json(d, group));
    return Grading::monomial(alg, f, std::move(group), std::move(degrees));
  }
  std::vector<GradingComponent> comps;
  for (const auto& c : j.at("components"))
    comps.push_back(GradingComponent{
        group_element_from_json(c.at("label"), group),
        mat_from_json(c.at("basis"), f), std::nullopt});
  return Grading::general(alg, f, std::move(group), std::move(comps));
}

Json endomorphism_to_json(const Endomorphism& e) {
  return Json{{"schema", "mel/endomorphism/1"},
              {"algebra", algebra_to_json(*e.alg())},
              {"field", field_to_json(e.field())},
              {"matrix", mat_to_json(e.matrix())}};
}

Endomorphism endomorphism_from_json(const Json& j) {
  require(j.at("schema") == "mel/endomorphism/1", "endomorphism: unknown schema");
  AlgebraPtr alg = algebra_from_json(j.at("algebra"));
  const Field& f = field_from_json(j.at("field"));
  return Endomorphism(alg, f, mat_from_json(j.at("matrix"), f));
}

}  // namespace mel
