#include "mel/melikyan.hpp"

#include <algorithm>
#include <sstream>

namespace mel {

MelikyanElement::MelikyanElement(ShapePtr shape, const Field& f)
    : shape_(shape), field_(&f), o_(shape, f), w_(shape, f), wt_(shape, f) {
  require(shape_->m() == 2, "Melikyan elements need m = 2");
  require(shape_->p() == 5, "Melikyan elements need characteristic 5");
}

MelikyanElement::MelikyanElement(Poly o, VectorField w, TildeField wt)
    : shape_(o.shape()), field_(&o.field()), o_(std::move(o)), w_(std::move(w)),
      wt_(std::move(wt)) {
  require(shape_->m() == 2, "Melikyan elements need m = 2");
  require(shape_->p() == 5, "Melikyan elements need characteristic 5");
  require_same_shape(*shape_, *w_.shape());
  require_same_shape(*shape_, *wt_.shape());
  require(field_ == &w_.field() && field_ == &wt_.field(),
          "Melikyan element: part field mismatch");
}

MelikyanElement MelikyanElement::from_o(Poly f) {
  MelikyanElement out(f.shape(), f.field());
  out.o_ = std::move(f);
  return out;
}

MelikyanElement MelikyanElement::from_w(VectorField d) {
  MelikyanElement out(d.shape(), d.field());
  out.w_ = std::move(d);
  return out;
}

MelikyanElement MelikyanElement::from_wt(TildeField t) {
  MelikyanElement out(t.shape(), t.field());
  out.wt_ = std::move(t);
  return out;
}

MelikyanElement MelikyanElement::operator+(const MelikyanElement& z) const {
  return MelikyanElement(o_ + z.o_, w_ + z.w_, wt_ + z.wt_);
}

MelikyanElement MelikyanElement::operator-(const MelikyanElement& z) const {
  return MelikyanElement(o_ - z.o_, w_ - z.w_, wt_ - z.wt_);
}

MelikyanElement MelikyanElement::operator-() const {
  return MelikyanElement(-o_, -w_, -wt_);
}

MelikyanElement MelikyanElement::scaled(std::uint32_t code) const {
  return MelikyanElement(o_.scaled(code), w_.scaled(code), wt_.scaled(code));
}

std::string MelikyanElement::str() const {
  std::ostringstream os;
  os << "O[" << o_.str() << "] W[" << w_.str() << "] Wt[" << wt_.str() << "]";
  return os.str();
}

namespace {

// [D, f] = D(f) - 2 div(D) f
Poly bracket_w_o(const VectorField& d, const Poly& f) {
  return d.apply(f) - (divergence(d) * f).scaled_int(2);
}

// [f, E~] = f E, landing in W
VectorField bracket_o_wt(const Poly& f, const TildeField& t) {
  return untilde(t).mul_left(f);
}

// [S~, T~] = s1 t2 - s2 t1
Poly bracket_wt_wt(const TildeField& s, const TildeField& t) {
  return s.component(0) * t.component(1) - s.component(1) * t.component(0);
}

// [f, g] = 2 (f d1(g) - g d1(f)) td_2 + 2 (g d2(f) - f d2(g)) td_1
TildeField bracket_o_o(const Poly& f, const Poly& g) {
  Poly c1 = (g * f.partial(1) - f * g.partial(1)).scaled_int(2);
  Poly c2 = (f * g.partial(0) - g * f.partial(0)).scaled_int(2);
  return TildeField::from_components(std::move(c1), std::move(c2));
}

// [D, E~] = [D,E]~ + 2 div(D) E~
TildeField bracket_w_wt(const VectorField& d, const TildeField& t) {
  return tilde(witt_bracket(d, untilde(t))) +
         t.mul_left(divergence(d).scaled_int(2));
}

}  // namespace

MelikyanElement m_bracket(const MelikyanElement& y, const MelikyanElement& z) {
  require_same_shape(*y.shape(), *z.shape());
  require(&y.field() == &z.field(), "m_bracket: field mismatch");
  const Poly &f = y.o_part(), &g = z.o_part();
  const VectorField &d = y.w_part(), &e = z.w_part();
  const TildeField &s = y.wt_part(), &t = z.wt_part();

  // O part: [D,g] - [E,f] + [S~,T~]
  Poly o = bracket_w_o(d, g) - bracket_w_o(e, f) + bracket_wt_wt(s, t);
  // W part: [D,E] + [f,T~] - [g,S~]
  VectorField w = witt_bracket(d, e) + bracket_o_wt(f, t) - bracket_o_wt(g, s);
  // W~ part: [f,g] + [D,T~] - [E,S~]
  TildeField wt = bracket_o_o(f, g) + bracket_w_wt(d, t) - bracket_w_wt(e, s);

  return MelikyanElement(std::move(o), std::move(w), std::move(wt));
}

MelikyanAlgebra::MelikyanAlgebra(ShapePtr shape) : shape_(std::move(shape)) {
  require(shape_ != nullptr, "M(2;n): null shape");
  require(shape_->m() == 2, "M(2;n): m must be 2");
  require(shape_->p() == 5, "M(2;n): characteristic must be 5");
  dim_ = 5 * shape_->dim();
}

std::shared_ptr<const MelikyanAlgebra> MelikyanAlgebra::make(ShapePtr shape) {
  return std::shared_ptr<const MelikyanAlgebra>(new MelikyanAlgebra(std::move(shape)));
}

std::shared_ptr<const MelikyanAlgebra> MelikyanAlgebra::make(int n1, int n2) {
  return make(Shape::make(2, {n1, n2}, 5));
}

std::uint32_t MelikyanAlgebra::flat(BasisIndex b) const {
  require(b.mono < shape_->dim(), "basis index: monomial rank out of range");
  return static_cast<std::uint32_t>(b.block) * shape_->dim() + b.mono;
}

BasisIndex MelikyanAlgebra::index(std::uint32_t flat) const {
  require(flat < dim_, "basis index out of range");
  return BasisIndex{static_cast<Block>(flat / shape_->dim()), flat % shape_->dim()};
}

MelikyanElement MelikyanAlgebra::basis_element(std::uint32_t f, const Field& fld) const {
  BasisIndex b = index(f);
  auto a = shape_->unrank(b.mono);
  switch (b.block) {
    case Block::O:
      return MelikyanElement::from_o(Poly::monomial(shape_, fld, a));
    case Block::W1:
      return MelikyanElement::from_w(VectorField::monomial(shape_, fld, a, 0));
    case Block::W2:
      return MelikyanElement::from_w(VectorField::monomial(shape_, fld, a, 1));
    case Block::T1:
      return MelikyanElement::from_wt(TildeField::monomial(shape_, fld, a, 0));
    case Block::T2:
      return MelikyanElement::from_wt(TildeField::monomial(shape_, fld, a, 1));
  }
  fail("basis_element: bad block");
}

std::array<int, 2> MelikyanAlgebra::zz_degree(std::uint32_t f) const {
  BasisIndex b = index(f);
  auto a = shape_->unrank(b.mono);
  switch (b.block) {
    case Block::O:
      return {3 * a[0] - 1, 3 * a[1] - 1};
    case Block::W1:
      return {3 * (a[0] - 1), 3 * a[1]};
    case Block::W2:
      return {3 * a[0], 3 * (a[1] - 1)};
    case Block::T1:
      return {3 * (a[0] - 1) + 1, 3 * a[1] + 1};
    case Block::T2:
      return {3 * a[0] + 1, 3 * (a[1] - 1) + 1};
  }
  fail("zz_degree: bad block");
}

std::array<int, 2> MelikyanAlgebra::standard_degree(std::uint32_t f) const {
  auto [u, v] = zz_degree(f);
  // invert (i, j) -> (3i + j, j)
  require((u - v) % 3 == 0, "standard_degree: zz degree off the image lattice");
  return {(u - v) / 3, v};
}

int MelikyanAlgebra::canonical_degree(std::uint32_t f) const {
  auto [u, v] = zz_degree(f);
  return u + v;
}

int MelikyanAlgebra::min_canonical_degree() const { return -3; }

int MelikyanAlgebra::max_canonical_degree() const {
  int top = multi_degree(shape_->tau());
  return 3 * (top - 1) + 2;  // top tilde block
}

std::vector<std::uint32_t> MelikyanAlgebra::filtration_component(int i) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t f = 0; f < dim_; ++f)
    if (canonical_degree(f) >= i) out.push_back(f);
  return out;
}

void MelikyanAlgebra::ensure_table() const {
  std::call_once(table_once_, [this] {
    const Field& f5 = make_field(5, 1);
    std::size_t nn = static_cast<std::size_t>(dim_) * dim_;
    std::vector<std::vector<Term>> rows(nn);
    for (std::uint32_t i = 0; i < dim_; ++i) {
      MelikyanElement yi = basis_element(i, f5);
      for (std::uint32_t j = i + 1; j < dim_; ++j) {
        MelikyanElement b = m_bracket(yi, basis_element(j, f5));
        if (b.is_zero()) continue;
        SparseVec v = sparse_coords(b);
        auto& fw = rows[static_cast<std::size_t>(i) * dim_ + j];
        auto& bw = rows[static_cast<std::size_t>(j) * dim_ + i];
        fw.reserve(v.size());
        bw.reserve(v.size());
        for (auto [idx, c] : v) {
          fw.push_back(Term{idx, static_cast<std::uint8_t>(c)});
          bw.push_back(Term{idx, static_cast<std::uint8_t>((5 - c) % 5)});
        }
      }
    }
    table_off_.assign(nn + 1, 0);
    std::size_t total = 0;
    for (std::size_t k = 0; k < nn; ++k) {
      table_off_[k] = static_cast<std::uint32_t>(total);
      total += rows[k].size();
    }
    table_off_[nn] = static_cast<std::uint32_t>(total);
    table_.reserve(total);
    for (auto& r : rows) table_.insert(table_.end(), r.begin(), r.end());
  });
}

std::span<const MelikyanAlgebra::Term> MelikyanAlgebra::bracket_table(
    std::uint32_t i, std::uint32_t j) const {
  ensure_table();
  std::size_t k = static_cast<std::size_t>(i) * dim_ + j;
  return {table_.data() + table_off_[k], table_off_[k + 1] - table_off_[k]};
}

std::vector<std::uint32_t> MelikyanAlgebra::coords(const MelikyanElement& y) const {
  require_same_shape(*shape_, *y.shape());
  std::vector<std::uint32_t> v(dim_, 0);
  std::uint32_t n = shape_->dim();
  for (auto [r, c] : y.o_part().terms()) v[r] = c;
  for (auto [r, c] : y.w_part().component(0).terms()) v[n + r] = c;
  for (auto [r, c] : y.w_part().component(1).terms()) v[2 * n + r] = c;
  for (auto [r, c] : y.wt_part().component(0).terms()) v[3 * n + r] = c;
  for (auto [r, c] : y.wt_part().component(1).terms()) v[4 * n + r] = c;
  return v;
}

SparseVec MelikyanAlgebra::sparse_coords(const MelikyanElement& y) const {
  return to_sparse(coords(y));
}

MelikyanElement MelikyanAlgebra::element_from_coords(
    std::span<const std::uint32_t> v, const Field& f) const {
  require(v.size() == dim_, "element_from_coords: wrong length");
  return element_from_sparse(to_sparse(v), f);
}

MelikyanElement MelikyanAlgebra::element_from_sparse(const SparseVec& v,
                                                     const Field& f) const {
  MelikyanElement out(shape_, f);
  Poly o(shape_, f);
  Poly w1(shape_, f), w2(shape_, f), t1(shape_, f), t2(shape_, f);
  std::uint32_t n = shape_->dim();
  for (auto [idx, c] : v) {
    require(idx < dim_, "element_from_sparse: index out of range");
    require(c < f.order(), "element_from_sparse: bad coefficient code");
    std::uint32_t r = idx % n;
    switch (static_cast<Block>(idx / n)) {
      case Block::O: o.add_term(r, c); break;
      case Block::W1: w1.add_term(r, c); break;
      case Block::W2: w2.add_term(r, c); break;
      case Block::T1: t1.add_term(r, c); break;
      case Block::T2: t2.add_term(r, c); break;
    }
  }
  return MelikyanElement(
      std::move(o), VectorField::from_components({std::move(w1), std::move(w2)}),
      TildeField::from_components(std::move(t1), std::move(t2)));
}

SparseVec MelikyanAlgebra::bracket_coords(const SparseVec& y, const SparseVec& z,
                                          const Field& f) const {
  require(f.characteristic() == 5, "bracket_coords: characteristic 5 required");
  ensure_table();
  std::vector<std::uint32_t> acc(dim_, 0);
  std::vector<std::uint32_t> touched;
  touched.reserve(64);
  for (auto [i, a] : y)
    for (auto [j, b] : z) {
      std::uint32_t ab = f.mul(a, b);
      if (ab == 0) continue;
      for (const Term& t : bracket_table(i, j)) {
        if (acc[t.idx] == 0 && t.c != 0) touched.push_back(t.idx);
        acc[t.idx] = f.add(acc[t.idx], f.mul(ab, t.c));
      }
    }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  SparseVec out;
  for (auto idx : touched)
    if (acc[idx] != 0) out.emplace_back(idx, acc[idx]);
  return out;
}

}  // namespace mel
