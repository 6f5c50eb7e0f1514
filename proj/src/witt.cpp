#include "mel/witt.hpp"

#include <sstream>

namespace mel {

VectorField::VectorField(ShapePtr shape, const Field& f)
    : shape_(std::move(shape)), field_(&f) {
  comps_.assign(shape_->m(), Poly(shape_, f));
}

VectorField VectorField::monomial(ShapePtr shape, const Field& f,
                                  std::span<const int> a, int axis,
                                  std::uint32_t coeff_code) {
  VectorField out(shape, f);
  require(axis >= 0 && axis < out.shape_->m(), "vector field axis out of range");
  out.comps_[axis] = Poly::monomial(std::move(shape), f, a, coeff_code);
  return out;
}

VectorField VectorField::from_components(std::vector<Poly> comps) {
  require(!comps.empty(), "vector field needs at least one component");
  VectorField out(comps.front().shape(), comps.front().field());
  require(static_cast<int>(comps.size()) == out.shape_->m(),
          "vector field needs one component per variable");
  for (auto& c : comps) {
    require_same_shape(*c.shape(), *out.shape_);
    require(&c.field() == out.field_, "vector field: component field mismatch");
  }
  out.comps_ = std::move(comps);
  return out;
}

bool VectorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

Poly VectorField::apply(const Poly& f) const {
  require_same_shape(*shape_, *f.shape());
  Poly out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i)
    if (!comps_[i].is_zero()) out = out + comps_[i] * f.partial(i);
  return out;
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_shape(*shape_, *o.shape_);
  VectorField out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i) out.comps_[i] = comps_[i] + o.comps_[i];
  return out;
}

VectorField VectorField::operator-(const VectorField& o) const {
  require_same_shape(*shape_, *o.shape_);
  VectorField out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i) out.comps_[i] = comps_[i] - o.comps_[i];
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i) out.comps_[i] = -comps_[i];
  return out;
}

VectorField VectorField::scaled(std::uint32_t code) const {
  VectorField out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i) out.comps_[i] = comps_[i].scaled(code);
  return out;
}

VectorField VectorField::mul_left(const Poly& g) const {
  VectorField out(shape_, *field_);
  for (int i = 0; i < shape_->m(); ++i) out.comps_[i] = g * comps_[i];
  return out;
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < shape_->m(); ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[i].str() << ")d" << (i + 1);
  }
  return first ? "0" : os.str();
}

VectorField witt_bracket(const VectorField& d, const VectorField& e) {
  require_same_shape(*d.shape(), *e.shape());
  std::vector<Poly> comps;
  comps.reserve(d.shape()->m());
  for (int j = 0; j < d.shape()->m(); ++j)
    comps.push_back(d.apply(e.component(j)) - e.apply(d.component(j)));
  return VectorField::from_components(std::move(comps));
}

Poly divergence(const VectorField& d) {
  require(d.shape()->m() == 2, "divergence is defined for m = 2");
  return d.component(0).partial(0) + d.component(1).partial(1);
}

int witt_degree(std::span<const int> a) { return multi_degree(a) - 1; }

TildeField::TildeField(ShapePtr shape, const Field& f)
    : shape_(std::move(shape)),
      field_(&f),
      comps_{Poly(shape_, f), Poly(shape_, f)} {
  require(shape_->m() == 2, "tilde fields are defined for m = 2");
}

TildeField TildeField::monomial(ShapePtr shape, const Field& f,
                                std::span<const int> a, int axis,
                                std::uint32_t coeff_code) {
  TildeField out(shape, f);
  require(axis == 0 || axis == 1, "tilde field axis out of range");
  out.comps_[axis] = Poly::monomial(std::move(shape), f, a, coeff_code);
  return out;
}

TildeField TildeField::from_components(Poly c0, Poly c1) {
  require_same_shape(*c0.shape(), *c1.shape());
  require(&c0.field() == &c1.field(), "tilde field: component field mismatch");
  TildeField out(c0.shape(), c0.field());
  out.comps_ = {std::move(c0), std::move(c1)};
  return out;
}

TildeField TildeField::operator+(const TildeField& o) const {
  return from_components(comps_[0] + o.comps_[0], comps_[1] + o.comps_[1]);
}

TildeField TildeField::operator-(const TildeField& o) const {
  return from_components(comps_[0] - o.comps_[0], comps_[1] - o.comps_[1]);
}

TildeField TildeField::operator-() const {
  return from_components(-comps_[0], -comps_[1]);
}

TildeField TildeField::scaled(std::uint32_t code) const {
  return from_components(comps_[0].scaled(code), comps_[1].scaled(code));
}

TildeField TildeField::mul_left(const Poly& g) const {
  return from_components(g * comps_[0], g * comps_[1]);
}

std::string TildeField::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[i].str() << ")td" << (i + 1);
  }
  return first ? "0" : os.str();
}

TildeField tilde(const VectorField& d) {
  require(d.shape()->m() == 2, "tilde is defined for m = 2");
  return TildeField::from_components(d.component(0), d.component(1));
}

VectorField untilde(const TildeField& t) {
  return VectorField::from_components({t.component(0), t.component(1)});
}

}  // namespace mel
