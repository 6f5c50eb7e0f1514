#include "mel/grading.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>

namespace mel {

namespace {

bool is_unit_column(const Mat& m, std::uint32_t c, std::uint32_t* where) {
  std::uint32_t cnt = 0;
  for (std::uint32_t r = 0; r < m.rows(); ++r)
    if (m.at(r, c) != 0) {
      if (m.at(r, c) != 1) return false;
      *where = r;
      ++cnt;
    }
  return cnt == 1;
}

void attach_unit_support(GradingComponent& comp) {
  std::vector<std::uint32_t> flats;
  for (std::uint32_t c = 0; c < comp.basis.cols(); ++c) {
    std::uint32_t r = 0;
    if (!is_unit_column(comp.basis, c, &r)) return;
    flats.push_back(r);
  }
  std::sort(flats.begin(), flats.end());
  comp.unit_support = std::move(flats);
}

}  // namespace

Grading Grading::monomial(AlgebraPtr alg, const Field& f, AbelianGroup group,
                          std::vector<GroupElement> degrees) {
  require(alg != nullptr, "grading: null algebra");
  require(degrees.size() == alg->dim(), "grading: one degree per basis element");
  for (const auto& d : degrees)
    require(d.group() == group, "grading: degree label in wrong group");
  Grading g(std::move(alg), f, std::move(group));
  g.degrees_ = std::move(degrees);
  g.build_components_from_degrees();
  return g;
}

Grading Grading::general(AlgebraPtr alg, const Field& f, AbelianGroup group,
                         std::vector<GradingComponent> components) {
  require(alg != nullptr, "grading: null algebra");
  Grading g(std::move(alg), f, std::move(group));
  for (auto& c : components) {
    require(c.label.group() == g.group_, "grading: component label in wrong group");
    require(&c.basis.field() == g.field_, "grading: component over wrong field");
    require(c.basis.rows() == g.alg_->dim(), "grading: component has wrong height");
    require(c.basis.cols() > 0, "grading: empty component stored");
    if (!c.unit_support) attach_unit_support(c);
  }
  std::sort(components.begin(), components.end(),
            [](const GradingComponent& a, const GradingComponent& b) {
              return a.label < b.label;
            });
  g.components_ = std::move(components);
  g.validate_components();
  return g;
}

Grading Grading::trivial(AlgebraPtr alg, const Field& f, AbelianGroup group) {
  std::vector<GroupElement> degrees(alg->dim(), group.identity());
  return monomial(std::move(alg), f, std::move(group), std::move(degrees));
}

void Grading::build_components_from_degrees() {
  std::map<GroupElement, std::vector<std::uint32_t>> by_label;
  for (std::uint32_t b = 0; b < alg_->dim(); ++b)
    by_label[(*degrees_)[b]].push_back(b);
  components_.clear();
  for (auto& [label, flats] : by_label) {
    Mat basis(*field_, alg_->dim(), static_cast<std::uint32_t>(flats.size()));
    for (std::uint32_t c = 0; c < flats.size(); ++c) basis.at(flats[c], c) = 1;
    components_.push_back(GradingComponent{label, std::move(basis), flats});
  }
}

void Grading::validate_components() const {
  // distinct labels, independence, and full coverage
  std::uint64_t total = 0;
  RowSpace all(*field_, alg_->dim());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0)
      require(components_[i - 1].label < components_[i].label,
              "grading: duplicate component label");
    const Mat& b = components_[i].basis;
    total += b.cols();
    for (std::uint32_t c = 0; c < b.cols(); ++c)
      require(all.add(b.col(c)), "grading: component vectors are dependent");
  }
  require(total == alg_->dim() && all.dim() == alg_->dim(),
          "grading: components do not decompose the algebra");
}

const GroupElement& Grading::degree(std::uint32_t flat) const {
  require(degrees_.has_value(), "grading: degree map available for monomial gradings only");
  return (*degrees_)[flat];
}

const GradingComponent* Grading::component(const GroupElement& label) const {
  auto it = std::lower_bound(components_.begin(), components_.end(), label,
                             [](const GradingComponent& c, const GroupElement& l) {
                               return c.label < l;
                             });
  if (it == components_.end() || !(it->label == label)) return nullptr;
  return &*it;
}

std::vector<GroupElement> Grading::support() const {
  std::vector<GroupElement> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.label);
  return out;
}

std::string Grading::str() const {
  std::ostringstream os;
  os << group_.str() << "-grading with " << components_.size() << " components";
  return os.str();
}

std::string GradingWitness::str() const {
  std::ostringstream os;
  os << "bracket of components " << g.str() << ", " << h.str()
     << " escapes the target component";
  if (!note.empty()) os << " (" << note << ")";
  return os.str();
}

VerifyResult verify_grading(const Grading& g) {
  const auto& comps = g.components();
  const MelikyanAlgebra& alg = *g.alg();
  const Field& f = g.field();

  // membership testers per component (row reduction for non-monomial parts)
  std::vector<std::optional<RowSpace>> testers(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!comps[i].unit_support) {
      RowSpace rs(f, alg.dim());
      for (std::uint32_t c = 0; c < comps[i].basis.cols(); ++c)
        rs.add(comps[i].basis.col(c));
      testers[i] = std::move(rs);
    }

  auto component_pos = [&](const GroupElement& label) -> std::ptrdiff_t {
    const GradingComponent* c = g.component(label);
    return c ? c - comps.data() : -1;
  };
  auto member = [&](std::size_t pos, const SparseVec& w) {
    if (comps[pos].unit_support) {
      const auto& sup = *comps[pos].unit_support;
      for (auto [idx, c] : w) {
        (void)c;
        if (!std::binary_search(sup.begin(), sup.end(), idx)) return false;
      }
      return true;
    }
    return testers[pos]->contains(w);
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < comps.size(); ++i)
    for (std::uint32_t j = i; j < comps.size(); ++j) pairs.emplace_back(i, j);

  std::atomic<std::size_t> first_bad{pairs.size()};
  parallel_for(pairs.size(), [&](std::size_t b, std::size_t e) {
    std::vector<SparseVec> cols_i, cols_j;
    for (std::size_t k = b; k < e; ++k) {
      if (k >= first_bad.load(std::memory_order_relaxed)) return;
      auto [i, j] = pairs[k];
      GroupElement target = comps[i].label + comps[j].label;
      std::ptrdiff_t tpos = component_pos(target);
      for (std::uint32_t ci = 0; ci < comps[i].basis.cols(); ++ci) {
        SparseVec u = comps[i].basis.col_sparse(ci);
        for (std::uint32_t cj = 0; cj < comps[j].basis.cols(); ++cj) {
          SparseVec v = comps[j].basis.col_sparse(cj);
          SparseVec w = alg.bracket_coords(u, v, f);
          bool ok = w.empty() || (tpos >= 0 && member(tpos, w));
          if (!ok) {
            std::size_t cur = first_bad.load();
            while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
            }
            return;
          }
        }
      }
    }
  });

  if (first_bad.load() == pairs.size()) {
    g.verified_ = true;
    return VerifyResult{true, std::nullopt};
  }
  // reconstruct the witness for the first failing pair
  auto [i, j] = pairs[first_bad.load()];
  GroupElement target = comps[i].label + comps[j].label;
  std::ptrdiff_t tpos = component_pos(target);
  for (std::uint32_t ci = 0; ci < comps[i].basis.cols(); ++ci)
    for (std::uint32_t cj = 0; cj < comps[j].basis.cols(); ++cj) {
      SparseVec u = comps[i].basis.col_sparse(ci);
      SparseVec v = comps[j].basis.col_sparse(cj);
      SparseVec w = alg.bracket_coords(u, v, f);
      bool ok = w.empty() || (tpos >= 0 && member(tpos, w));
      if (!ok) {
        GradingWitness wit{comps[i].label, comps[j].label,
                           to_dense(u, alg.dim()), to_dense(v, alg.dim()),
                           to_dense(w, alg.dim()),
                           tpos < 0 ? "no component carries the product label"
                                    : "membership failed by row reduction"};
        g.verified_ = false;
        return VerifyResult{false, std::move(wit)};
      }
    }
  fail("verify_grading: lost the witness");
}

Grading standard_grading(const AlgebraPtr& alg, const Field& f,
                         const GroupHom& phi) {
  require(phi.domain() == AbelianGroup::z(2),
          "standard grading: hom must start at Z^2");
  AbelianGroup z2 = AbelianGroup::z(2);
  std::vector<GroupElement> degrees;
  degrees.reserve(alg->dim());
  for (std::uint32_t b = 0; b < alg->dim(); ++b) {
    auto [i, j] = alg->standard_degree(b);
    degrees.push_back(phi.apply(z2.element({i, j}, {})));
  }
  return Grading::monomial(alg, f, phi.codomain(), std::move(degrees));
}

GroupHom zz_relabel_hom() {
  AbelianGroup z2 = AbelianGroup::z(2);
  return GroupHom(z2, z2, {z2.element({3, 0}, {}), z2.element({1, 1}, {})});
}

Grading grading_by_standard_degree(const AlgebraPtr& alg, const Field& f) {
  return standard_grading(alg, f, GroupHom::identity(AbelianGroup::z(2)));
}

Grading grading_by_zz_degree(const AlgebraPtr& alg, const Field& f) {
  return standard_grading(alg, f, zz_relabel_hom());
}

Grading grading_by_canonical_degree(const AlgebraPtr& alg, const Field& f) {
  AbelianGroup z1 = AbelianGroup::z(1);
  std::vector<GroupElement> degrees;
  degrees.reserve(alg->dim());
  for (std::uint32_t b = 0; b < alg->dim(); ++b)
    degrees.push_back(z1.element({alg->canonical_degree(b)}, {}));
  return Grading::monomial(alg, f, z1, std::move(degrees));
}

Grading coarsen(const Grading& g, const GroupHom& phi) {
  require(phi.domain() == g.group(), "coarsen: hom domain mismatch");
  if (g.is_monomial()) {
    std::vector<GroupElement> degrees;
    degrees.reserve(g.alg()->dim());
    for (std::uint32_t b = 0; b < g.alg()->dim(); ++b)
      degrees.push_back(phi.apply(g.degree(b)));
    return Grading::monomial(g.alg(), g.field(), phi.codomain(), std::move(degrees));
  }
  std::map<GroupElement, std::vector<const Mat*>> merged;
  for (const auto& c : g.components()) merged[phi.apply(c.label)].push_back(&c.basis);
  std::vector<GradingComponent> comps;
  for (auto& [label, mats] : merged) {
    std::uint32_t cols = 0;
    for (const Mat* m : mats) cols += m->cols();
    Mat basis(g.field(), g.alg()->dim(), cols);
    std::uint32_t at = 0;
    for (const Mat* m : mats)
      for (std::uint32_t c = 0; c < m->cols(); ++c) basis.set_col(at++, m->col(c));
    comps.push_back(GradingComponent{label, std::move(basis), std::nullopt});
  }
  return Grading::general(g.alg(), g.field(), phi.codomain(), std::move(comps));
}

Subgroup support_subgroup(const Grading& g) {
  auto sup = g.support();
  return subgroup_generated(sup, g.group());
}

RecoverResult recover_homomorphism(const Grading& fine, const Grading& coarse) {
  RecoverResult res;
  require(fine.alg()->dim() == coarse.alg()->dim() &&
              &fine.field() == &coarse.field(),
          "recover: gradings live on different algebras");
  if (!fine.verified().has_value()) verify_grading(fine);
  if (!coarse.verified().has_value()) verify_grading(coarse);
  require(fine.verified() == true && coarse.verified() == true,
          "recover: both gradings must pass verification");

  // step 1: locate each fine component inside a coarse component
  std::vector<RowSpace> coarse_spaces;
  coarse_spaces.reserve(coarse.components().size());
  for (const auto& c : coarse.components()) {
    RowSpace rs(coarse.field(), coarse.alg()->dim());
    for (std::uint32_t k = 0; k < c.basis.cols(); ++k) rs.add(c.basis.col(k));
    coarse_spaces.push_back(std::move(rs));
  }
  std::vector<GroupElement> sup;         // fine support
  std::vector<GroupElement> images;      // phi_0 on the support
  for (const auto& c : fine.components()) {
    std::ptrdiff_t found = -1;
    for (std::size_t j = 0; j < coarse.components().size(); ++j) {
      bool inside = true;
      for (std::uint32_t k = 0; k < c.basis.cols() && inside; ++k)
        inside = coarse_spaces[j].contains(c.basis.col(k));
      if (inside) {
        found = static_cast<std::ptrdiff_t>(j);
        break;
      }
    }
    if (found < 0) {
      res.witness_label = c.label;
      res.message = "component " + c.label.str() +
                    " is not contained in any coarse component; not a refinement";
      return res;
    }
    sup.push_back(c.label);
    images.push_back(coarse.components()[found].label);
  }

  // step 2: solve for generator images, one codomain coordinate at a time
  const AbelianGroup& G = fine.group();
  const AbelianGroup& H = coarse.group();
  int dg = G.ngens();
  int sg = static_cast<int>(G.torsion().size());
  int rows = static_cast<int>(sup.size()) + sg;
  ZMat a(rows, std::vector<long long>(dg, 0));
  for (std::size_t r = 0; r < sup.size(); ++r) {
    auto lift = sup[r].lift();
    for (int c = 0; c < dg; ++c) a[r][c] = lift[c];
  }
  for (int j = 0; j < sg; ++j)
    a[sup.size() + j][G.rank() + j] = G.torsion()[j];

  ZMat x(dg, std::vector<long long>(H.ngens(), 0));
  for (int hc = 0; hc < H.ngens(); ++hc) {
    std::vector<long long> rhs(rows, 0);
    for (std::size_t r = 0; r < sup.size(); ++r) rhs[r] = images[r].lift()[hc];
    std::optional<std::vector<long long>> sol;
    if (hc < H.rank())
      sol = solve_z(a, rhs);
    else
      sol = solve_mod(a, rhs, H.torsion()[hc - H.rank()]);
    if (!sol) {
      res.message =
          "the map on the support does not extend to the full group; restrict "
          "the grading group to the support-generated subgroup";
      return res;
    }
    for (int c = 0; c < dg; ++c) x[c][hc] = (*sol)[c];
  }

  std::vector<GroupElement> gen_images;
  for (int c = 0; c < dg; ++c) gen_images.push_back(H.from_lift(x[c]));
  GroupHom phi(G, H, std::move(gen_images));

  // step 3: the recovered map must actually produce the coarse grading
  if (!same_grading(coarsen(fine, phi), coarse)) {
    res.message = "support labels are inconsistent: coarsening by the solved "
                  "map does not reproduce the coarse grading";
    return res;
  }

  res.ok = true;
  res.surjective = subgroup_generated(phi.images(), H).is_full();
  res.hom = std::move(phi);
  return res;
}

Grading apply_automorphism(const Grading& g, const Mat& psi) {
  require(psi.rows() == g.alg()->dim() && psi.cols() == g.alg()->dim(),
          "apply_automorphism: matrix has wrong shape");
  require(&psi.field() == &g.field(), "apply_automorphism: field mismatch");
  require(psi.inverse_opt().has_value(), "apply_automorphism: singular matrix");
  std::vector<GradingComponent> comps;
  comps.reserve(g.components().size());
  for (const auto& c : g.components())
    comps.push_back(GradingComponent{c.label, psi * c.basis, std::nullopt});
  return Grading::general(g.alg(), g.field(), g.group(), std::move(comps));
}

bool same_grading(const Grading& a, const Grading& b) {
  if (!(a.group() == b.group()) || &a.field() != &b.field() ||
      a.alg()->dim() != b.alg()->dim())
    return false;
  if (a.components().size() != b.components().size()) return false;
  for (const auto& c : a.components()) {
    const GradingComponent* d = b.component(c.label);
    if (!d || d->dim() != c.dim()) return false;
    if (!same_column_space(c.basis, d->basis)) return false;
  }
  return true;
}

}  // namespace mel
