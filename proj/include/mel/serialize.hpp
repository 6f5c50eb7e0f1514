#pragma once

#include <json.hpp>

#include "mel/automorphism.hpp"

namespace mel {

using Json = nlohmann::ordered_json;

// field layer
Json field_to_json(const Field& f);                       // {p, k}
const Field& field_from_json(const Json& j);
Json element_to_json(const FieldElement& e);              // {p, k, coords}
FieldElement element_from_json(const Json& j);

// divided power layer; monomials are {"a":[...]}, polynomials term lists
Json shape_to_json(const Shape& s);                       // {m, n, p}
ShapePtr shape_from_json(const Json& j);
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, ShapePtr shape, const Field& f);
Json vector_field_to_json(const VectorField& d);          // kind "W"
VectorField vector_field_from_json(const Json& j, ShapePtr shape, const Field& f);
Json tilde_field_to_json(const TildeField& t);            // kind "Wtilde"
TildeField tilde_field_from_json(const Json& j, ShapePtr shape, const Field& f);

// algebra layer
Json algebra_to_json(const MelikyanAlgebra& a);           // {algebra, p, n}
AlgebraPtr algebra_from_json(const Json& j);
Json melikyan_to_json(const MelikyanElement& y);          // three-part form
MelikyanElement melikyan_from_json(const Json& j, const AlgebraPtr& alg,
                                   const Field& f);

// groups and characters
Json group_to_json(const AbelianGroup& g);                // {rank, torsion}
AbelianGroup group_from_json(const Json& j);
Json group_element_to_json(const GroupElement& e);        // {free, torsion}
GroupElement group_element_from_json(const Json& j, const AbelianGroup& g);
Json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const Json& j);
Json character_to_json(const Character& c);
Character character_from_json(const Json& j, const Field& f);

// gradings; monomial gradings use the compact {"degrees":[...]} form,
// general ones carry explicit component bases. Matrix entries are element
// codes (code = sum coords[i] p^i).
Json grading_to_json(const Grading& g);
Grading grading_from_json(const Json& j);

// endomorphisms: dense code matrix plus the cached flags
Json endomorphism_to_json(const Endomorphism& e);
Endomorphism endomorphism_from_json(const Json& j);

}  // namespace mel
