#include "mel/poly.hpp"

#include <sstream>

namespace mel {

Poly::Poly(ShapePtr shape, const Field& f) : shape_(std::move(shape)), field_(&f) {
  require(shape_ != nullptr, "poly: null shape");
  require(f.characteristic() == shape_->p(),
          "poly: field characteristic disagrees with shape");
}

Poly Poly::monomial(ShapePtr shape, const Field& f, std::span<const int> a,
                    std::uint32_t coeff_code) {
  Poly out(std::move(shape), f);
  std::uint32_t r = out.shape_->rank(a);
  if (coeff_code != 0) out.terms_[r] = coeff_code;
  return out;
}

Poly Poly::one(ShapePtr shape, const Field& f) {
  std::vector<int> zero(shape->m(), 0);
  return monomial(std::move(shape), f, zero);
}

void Poly::check_compatible(const Poly& o) const {
  require_same_shape(*shape_, *o.shape_);
  require(field_ == o.field_, "poly: field mismatch");
}

FieldElement Poly::coeff(std::span<const int> a) const {
  auto it = terms_.find(shape_->rank(a));
  return FieldElement(*field_, it == terms_.end() ? 0 : it->second);
}

void Poly::set_coeff(std::span<const int> a, std::uint32_t code) {
  std::uint32_t r = shape_->rank(a);
  if (code == 0)
    terms_.erase(r);
  else
    terms_[r] = code;
}

void Poly::add_term(std::uint32_t rank, std::uint32_t code) {
  if (code == 0) return;
  auto [it, fresh] = terms_.emplace(rank, code);
  if (!fresh) {
    it->second = field_->add(it->second, code);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_compatible(o);
  Poly out = *this;
  for (auto [r, c] : o.terms_) out.add_term(r, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  check_compatible(o);
  Poly out = *this;
  for (auto [r, c] : o.terms_) out.add_term(r, field_->neg(c));
  return out;
}

Poly Poly::operator-() const {
  Poly out(shape_, *field_);
  for (auto [r, c] : terms_) out.terms_[r] = field_->neg(c);
  return out;
}

Poly Poly::scaled(std::uint32_t code) const {
  Poly out(shape_, *field_);
  if (code == 0) return out;
  for (auto [r, c] : terms_) out.terms_[r] = field_->mul(c, code);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  check_compatible(o);
  const Shape& s = *shape_;
  Poly out(shape_, *field_);
  for (auto [ra, ca] : terms_) {
    auto a = s.unrank(ra);
    for (auto [rb, cb] : o.terms_) {
      auto b = s.unrank(rb);
      std::vector<int> ab(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] + b[i];
      // exponent overflow: the Lucas coefficient vanishes mod p, drop the term
      if (!s.in_bounds(ab)) continue;
      int binom = multi_binom(a, b, s.p());
      if (binom == 0) continue;
      out.add_term(s.rank(ab),
                   field_->mul(field_->mul(ca, cb), field_->from_int(binom)));
    }
  }
  return out;
}

Poly Poly::partial(int axis) const {
  require(axis >= 0 && axis < shape_->m(), "partial: axis out of range");
  Poly out(shape_, *field_);
  for (auto [r, c] : terms_) {
    auto a = shape_->unrank(r);
    if (a[axis] == 0) continue;
    a[axis] -= 1;
    out.terms_[shape_->rank(a)] = c;
  }
  return out;
}

bool Poly::operator==(const Poly& o) const {
  return *shape_ == *o.shape_ && field_ == o.field_ && terms_ == o.terms_;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [r, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << field_->str(c) << "*x^(";
    auto a = shape_->unrank(r);
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
  }
  return os.str();
}

}  // namespace mel
