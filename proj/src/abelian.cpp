#include "mel/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace mel {

AbelianGroup::AbelianGroup(int rank, std::vector<long long> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  require(rank >= 0, "abelian group: negative rank");
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    require(torsion_[j] >= 2, "abelian group: invariant factors must be >= 2");
    if (j > 0)
      require(torsion_[j] % torsion_[j - 1] == 0,
              "abelian group: invariant factors must form a divisibility chain");
  }
}

AbelianGroup AbelianGroup::normalized(int rank, std::vector<long long> moduli) {
  // Smith form of the diagonal relation matrix gives the invariant factors
  int s = static_cast<int>(moduli.size());
  ZMat rel(s, std::vector<long long>(s, 0));
  for (int i = 0; i < s; ++i) {
    require(moduli[i] >= 1, "abelian group: moduli must be positive");
    rel[i][i] = moduli[i];
  }
  Snf snf = smith_normal_form(std::move(rel));
  std::vector<long long> tors;
  for (long long d : snf.diag)
    if (d >= 2) tors.push_back(d);
  return AbelianGroup(rank, std::move(tors));
}

std::optional<unsigned long long> AbelianGroup::order() const {
  if (rank_ > 0) return std::nullopt;
  unsigned long long n = 1;
  for (long long m : torsion_) n *= static_cast<unsigned long long>(m);
  return n;
}

long long AbelianGroup::exponent() const {
  require(is_finite(), "exponent: group is infinite");
  return torsion_.empty() ? 1 : torsion_.back();
}

bool AbelianGroup::has_order5_elements() const {
  return !torsion_.empty() && torsion_.back() % 5 == 0;
}

GroupElement AbelianGroup::element(std::vector<long long> free,
                                   std::vector<long long> tors) const {
  return GroupElement(*this, std::move(free), std::move(tors));
}

GroupElement AbelianGroup::identity() const {
  return GroupElement(*this, std::vector<long long>(rank_, 0),
                      std::vector<long long>(torsion_.size(), 0));
}

GroupElement AbelianGroup::generator(int i) const {
  require(i >= 0 && i < ngens(), "generator index out of range");
  std::vector<long long> free(rank_, 0), tors(torsion_.size(), 0);
  if (i < rank_)
    free[i] = 1;
  else
    tors[i - rank_] = 1;
  return GroupElement(*this, std::move(free), std::move(tors));
}

GroupElement AbelianGroup::from_lift(std::span<const long long> lift) const {
  require(static_cast<int>(lift.size()) == ngens(), "lift has wrong length");
  return GroupElement(*this,
                      std::vector<long long>(lift.begin(), lift.begin() + rank_),
                      std::vector<long long>(lift.begin() + rank_, lift.end()));
}

std::vector<GroupElement> AbelianGroup::elements() const {
  auto n = order();
  require(n.has_value(), "elements: group is infinite");
  require(*n <= 1u << 20, "elements: group too large to enumerate");
  std::vector<GroupElement> out;
  out.reserve(*n);
  std::vector<long long> tors(torsion_.size(), 0);
  for (unsigned long long c = 0; c < *n; ++c) {
    out.push_back(element({}, tors));
    for (std::size_t j = torsion_.size(); j-- > 0;) {
      if (++tors[j] < torsion_[j]) break;
      tors[j] = 0;
    }
  }
  return out;
}

std::string AbelianGroup::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < rank_; ++i) {
    os << (first ? "" : " x ") << "Z";
    first = false;
  }
  for (long long m : torsion_) {
    os << (first ? "" : " x ") << "Z/" << m;
    first = false;
  }
  return first ? "0" : os.str();
}

GroupElement::GroupElement(AbelianGroup group, std::vector<long long> free,
                           std::vector<long long> tors)
    : group_(std::move(group)), free_(std::move(free)), tors_(std::move(tors)) {
  require(static_cast<int>(free_.size()) == group_.rank(),
          "group element: free part has wrong length");
  require(tors_.size() == group_.torsion().size(),
          "group element: torsion part has wrong length");
  for (std::size_t j = 0; j < tors_.size(); ++j) {
    long long m = group_.torsion()[j];
    tors_[j] = ((tors_[j] % m) + m) % m;
  }
}

std::vector<long long> GroupElement::lift() const {
  std::vector<long long> v = free_;
  v.insert(v.end(), tors_.begin(), tors_.end());
  return v;
}

bool GroupElement::is_identity() const {
  auto zero = [](long long v) { return v == 0; };
  return std::all_of(free_.begin(), free_.end(), zero) &&
         std::all_of(tors_.begin(), tors_.end(), zero);
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  require(group_ == o.group_, "group element: group mismatch");
  std::vector<long long> f(free_), t(tors_);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += o.free_[i];
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += o.tors_[i];
  return GroupElement(group_, std::move(f), std::move(t));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  return *this + (-o);
}

GroupElement GroupElement::operator-() const { return scaled(-1); }

GroupElement GroupElement::scaled(long long k) const {
  std::vector<long long> f(free_), t(tors_);
  for (auto& v : f) v *= k;
  for (auto& v : t) v *= k;
  return GroupElement(group_, std::move(f), std::move(t));
}

bool GroupElement::operator<(const GroupElement& o) const {
  if (free_ != o.free_) return free_ < o.free_;
  return tors_ < o.tors_;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (long long v : free_) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  for (long long v : tors_) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << ")";
  return os.str();
}

GroupHom::GroupHom(AbelianGroup domain, AbelianGroup codomain,
                   std::vector<GroupElement> images)
    : dom_(std::move(domain)), cod_(std::move(codomain)), images_(std::move(images)) {
  require(static_cast<int>(images_.size()) == dom_.ngens(),
          "hom: one image per domain generator required");
  for (const auto& im : images_)
    require(im.group() == cod_, "hom: image lies in the wrong group");
  // well-definedness: the order of each torsion generator must kill its image
  for (std::size_t j = 0; j < dom_.torsion().size(); ++j) {
    const GroupElement& im = images_[dom_.rank() + j];
    require(im.scaled(dom_.torsion()[j]).is_identity(),
            "hom: torsion generator image violates its order");
  }
}

GroupHom GroupHom::identity(const AbelianGroup& g) {
  std::vector<GroupElement> images;
  for (int i = 0; i < g.ngens(); ++i) images.push_back(g.generator(i));
  return GroupHom(g, g, std::move(images));
}

GroupElement GroupHom::apply(const GroupElement& g) const {
  require(g.group() == dom_, "hom: argument lies in the wrong group");
  GroupElement acc = cod_.identity();
  auto lift = g.lift();
  for (std::size_t i = 0; i < lift.size(); ++i)
    if (lift[i] != 0) acc = acc + images_[i].scaled(lift[i]);
  return acc;
}

std::string GroupHom::str() const {
  std::ostringstream os;
  os << dom_.str() << " -> " << cod_.str() << " : ";
  for (std::size_t i = 0; i < images_.size(); ++i)
    os << (i ? ", " : "") << "g" << i << " |-> " << images_[i].str();
  return os.str();
}

Subgroup::Subgroup(AbelianGroup parent, std::span<const GroupElement> gens)
    : parent_(std::move(parent)), abstract_(AbelianGroup::trivial()) {
  int d = parent_.ngens();
  int r = parent_.rank();
  int s = static_cast<int>(parent_.torsion().size());

  // lattice L in Z^d spanned by the generator lifts plus the relation
  // lattice (m_j on the torsion coordinates); the subgroup is L modulo
  // the relations
  int ncols_gens = static_cast<int>(gens.size());
  ZMat lat(d, std::vector<long long>(ncols_gens + s, 0));
  for (int c = 0; c < ncols_gens; ++c) {
    require(gens[c].group() == parent_, "subgroup: generator in wrong group");
    auto lift = gens[c].lift();
    for (int i = 0; i < d; ++i) lat[i][c] = lift[i];
  }
  for (int j = 0; j < s; ++j) lat[r + j][ncols_gens + j] = parent_.torsion()[j];

  Snf snf = smith_normal_form(lat);
  u_ = std::move(snf.u);
  diag_.assign(d, 0);
  for (int i = 0; i < std::min<int>(d, static_cast<int>(snf.diag.size())); ++i)
    diag_[i] = snf.diag[i];
  int rank_l = snf.rank;

  // index of L in Z^d equals the parent-group index of the subgroup
  if (rank_l < d) {
    index_ = std::nullopt;
  } else {
    unsigned long long idx = 1;
    for (int i = 0; i < d; ++i) idx *= static_cast<unsigned long long>(diag_[i]);
    index_ = idx;
  }

  // abstract type of L / relations: express each relation generator in the
  // Smith basis of L and take the Smith form of that coordinate matrix
  ZMat rel_coords(rank_l, std::vector<long long>(s, 0));
  for (int j = 0; j < s; ++j) {
    std::vector<long long> lam(d, 0);
    lam[r + j] = parent_.torsion()[j];
    auto w = zmat_apply(u_, lam);
    for (int i = 0; i < d; ++i) {
      if (i < rank_l) {
        require(w[i] % diag_[i] == 0, "subgroup: relation outside lattice");
        rel_coords[i][j] = w[i] / diag_[i];
      } else {
        require(w[i] == 0, "subgroup: relation outside lattice");
      }
    }
  }
  Snf q = smith_normal_form(std::move(rel_coords));
  std::vector<long long> tors;
  int zero_cols = rank_l - q.rank;
  for (long long e : q.diag)
    if (e >= 2) tors.push_back(e);
  abstract_ = AbelianGroup(zero_cols, std::move(tors));
}

bool Subgroup::contains(const GroupElement& g) const {
  require(g.group() == parent_, "subgroup: element in wrong group");
  auto w = zmat_apply(u_, g.lift());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (diag_[i] == 0) {
      if (w[i] != 0) return false;
    } else if (w[i] % diag_[i] != 0) {
      return false;
    }
  }
  return true;
}

Subgroup subgroup_generated(std::span<const GroupElement> gens,
                            const AbelianGroup& parent) {
  return Subgroup(parent, gens);
}

Character::Character(AbelianGroup group, const Field& f,
                     std::vector<std::uint32_t> values)
    : group_(std::move(group)), field_(&f), values_(std::move(values)) {
  require(group_.is_finite(), "character: group must be finite");
  require(values_.size() == group_.torsion().size(),
          "character: one value per torsion generator required");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    require(values_[j] != 0 && values_[j] < f.order(), "character: bad value");
    require(f.pow(values_[j], group_.torsion()[j]) == 1,
            "character: value order does not divide the generator order");
  }
}

Character Character::trivial(const AbelianGroup& g, const Field& f) {
  return Character(g, f, std::vector<std::uint32_t>(g.torsion().size(), 1));
}

std::uint32_t Character::eval(const GroupElement& g) const {
  require(g.group() == group_, "character: element in wrong group");
  std::uint32_t acc = 1;
  for (std::size_t j = 0; j < values_.size(); ++j)
    acc = field_->mul(acc, field_->pow(values_[j], g.torsion_coords()[j]));
  return acc;
}

bool Character::is_trivial() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](std::uint32_t v) { return v == 1; });
}

Character Character::operator*(const Character& o) const {
  require(group_ == o.group_ && field_ == o.field_, "character: mismatch");
  std::vector<std::uint32_t> vals(values_.size());
  for (std::size_t j = 0; j < vals.size(); ++j)
    vals[j] = field_->mul(values_[j], o.values_[j]);
  return Character(group_, *field_, std::move(vals));
}

std::vector<Character> character_group(const AbelianGroup& g, const Field& f) {
  require(g.is_finite(), "character_group: group must be finite");
  long long e = g.exponent();
  require(e % f.characteristic() != 0,
          "character_group: exponent divisible by the characteristic; no "
          "faithful characters exist");
  require(f.group_order() % static_cast<std::uint32_t>(e) == 0,
          "character_group: field stage lacks the required roots of unity; "
          "extend the field");

  const auto& tors = g.torsion();
  std::vector<std::uint32_t> zeta(tors.size());
  for (std::size_t j = 0; j < tors.size(); ++j)
    zeta[j] = f.root_of_unity(static_cast<std::uint64_t>(tors[j]));

  std::vector<Character> out;
  std::vector<long long> exps(tors.size(), 0);
  auto total = g.order();
  out.reserve(*total);
  for (unsigned long long c = 0; c < *total; ++c) {
    std::vector<std::uint32_t> vals(tors.size());
    for (std::size_t j = 0; j < tors.size(); ++j)
      vals[j] = f.pow(zeta[j], exps[j]);
    out.emplace_back(g, f, std::move(vals));
    for (std::size_t j = tors.size(); j-- > 0;) {
      if (++exps[j] < tors[j]) break;
      exps[j] = 0;
    }
  }
  return out;
}

Character pullback_character(const Character& chi, const GroupHom& phi) {
  require(phi.codomain() == chi.group(),
          "pullback: hom codomain must be the character's group");
  require(phi.domain().is_finite(), "pullback: domain must be finite");
  const AbelianGroup& dom = phi.domain();
  std::vector<std::uint32_t> vals;
  for (std::size_t j = 0; j < dom.torsion().size(); ++j)
    vals.push_back(chi.eval(phi.apply(dom.generator(dom.rank() + j))));
  return Character(dom, chi.field(), std::move(vals));
}

}  // namespace mel
