#include "mel/automorphism.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace mel {

namespace {

std::vector<std::uint32_t> mat_vec(const Mat& m, const SparseVec& v) {
  std::vector<std::uint32_t> out(m.rows(), 0);
  const Field& f = m.field();
  for (auto [j, c] : v)
    for (std::uint32_t r = 0; r < m.rows(); ++r) {
      std::uint32_t a = m.at(r, j);
      if (a != 0) out[r] = f.add(out[r], f.mul(a, c));
    }
  return out;
}

// exhaustive check of psi([b_i, b_j]) = [psi b_i, psi b_j] over basis pairs
bool bracket_preserving_on(const MelikyanAlgebra& alg, const Field& f,
                           const Mat& m) {
  const std::uint32_t dim = alg.dim();
  std::vector<SparseVec> cols(dim);
  for (std::uint32_t c = 0; c < dim; ++c) cols[c] = m.col_sparse(c);

  std::atomic<bool> ok{true};
  parallel_for(dim, [&](std::size_t b, std::size_t e) {
    std::vector<std::uint32_t> lhs(dim);
    for (std::size_t i = b; i < e && ok.load(std::memory_order_relaxed); ++i) {
      for (std::uint32_t j = 0; j < dim; ++j) {
        if (j <= i) continue;  // antisymmetry covers the rest
        std::fill(lhs.begin(), lhs.end(), 0);
        for (const auto& t :
             alg.bracket_table(static_cast<std::uint32_t>(i), j))
          for (auto [r, c] : cols[t.idx])
            lhs[r] = f.add(lhs[r], f.mul(c, t.c));
        SparseVec rhs = alg.bracket_coords(cols[i], cols[j], f);
        auto rd = to_dense(rhs, dim);
        if (rd != lhs) {
          ok.store(false);
          return;
        }
      }
    }
  });
  return ok.load();
}

}  // namespace

Endomorphism::Endomorphism(AlgebraPtr alg, const Field& f, Mat m)
    : alg_(std::move(alg)), f_(&f), mat_(std::move(m)) {
  require(&mat_.field() == f_, "endomorphism: matrix over wrong field");
  require(mat_.rows() == alg_->dim() && mat_.cols() == alg_->dim(),
          "endomorphism: matrix shape mismatch");
}

bool Endomorphism::is_invertible() const {
  if (!invertible_) invertible_ = mat_.inverse_opt().has_value();
  return *invertible_;
}

bool Endomorphism::is_bracket_preserving() const {
  if (!bracket_preserving_)
    bracket_preserving_ = bracket_preserving_on(*alg_, *f_, mat_);
  return *bracket_preserving_;
}

bool Endomorphism::is_w_preserving() const {
  if (!w_preserving_) {
    std::uint32_t n = alg_->o_dim();
    bool ok = true;
    for (std::uint32_t c = n; c < 3 * n && ok; ++c)
      for (std::uint32_t r = 0; r < alg_->dim() && ok; ++r)
        if (mat_.at(r, c) != 0 && (r < n || r >= 3 * n)) ok = false;
    w_preserving_ = ok;
  }
  return *w_preserving_;
}

void Endomorphism::expect_automorphism() const {
  require(is_invertible(), "endomorphism is singular");
  require(is_bracket_preserving(),
          "endomorphism does not preserve the bracket on some basis pair");
}

Endomorphism Endomorphism::compose(const Endomorphism& o) const {
  require(alg_ == o.alg_ && f_ == o.f_, "compose: algebra or field mismatch");
  Endomorphism out(alg_, *f_, mat_ * o.mat_);
  // verified properties are closed under composition
  if (invertible_ == true && o.invertible_ == true) out.invertible_ = true;
  if (invertible_ == true && o.invertible_ == true &&
      bracket_preserving_ == true && o.bracket_preserving_ == true)
    out.bracket_preserving_ = true;
  if (w_preserving_ == true && o.w_preserving_ == true) out.w_preserving_ = true;
  return out;
}

Endomorphism Endomorphism::inverse() const {
  Endomorphism out(alg_, *f_, mat_.inverse());
  out.invertible_ = true;
  if (bracket_preserving_ == true) out.bracket_preserving_ = true;
  if (w_preserving_ == true) out.w_preserving_ = true;
  return out;
}

MelikyanElement Endomorphism::apply(const MelikyanElement& y) const {
  auto v = mat_vec(mat_, alg_->sparse_coords(y));
  return alg_->element_from_coords(v, *f_);
}

WittEndo::WittEndo(AlgebraPtr alg, const Field& f, Mat m)
    : alg_(std::move(alg)), f_(&f), mat_(std::move(m)) {
  require(mat_.rows() == 2 * alg_->o_dim() && mat_.cols() == 2 * alg_->o_dim(),
          "witt endomorphism: matrix shape mismatch");
}

bool WittEndo::is_invertible() const {
  if (!invertible_) invertible_ = mat_.inverse_opt().has_value();
  return *invertible_;
}

bool WittEndo::is_bracket_preserving() const {
  if (bracket_preserving_) return *bracket_preserving_;
  const std::uint32_t n = alg_->o_dim();
  const std::uint32_t wdim = 2 * n;
  std::vector<SparseVec> cols(wdim);
  for (std::uint32_t c = 0; c < wdim; ++c) cols[c] = mat_.col_sparse(c);

  // W x W brackets stay inside the W block of the full structure table
  auto w_bracket = [&](const SparseVec& u, const SparseVec& v) {
    std::vector<std::uint32_t> acc(wdim, 0);
    for (auto [i, a] : u)
      for (auto [j, b] : v) {
        std::uint32_t ab = f_->mul(a, b);
        if (ab == 0) continue;
        for (const auto& t : alg_->bracket_table(n + i, n + j)) {
          require(t.idx >= n && t.idx < 3 * n, "witt bracket left the W block");
          acc[t.idx - n] = f_->add(acc[t.idx - n], f_->mul(ab, t.c));
        }
      }
    return acc;
  };

  bool ok = true;
  std::vector<std::uint32_t> lhs(wdim);
  for (std::uint32_t i = 0; i < wdim && ok; ++i)
    for (std::uint32_t j = i + 1; j < wdim && ok; ++j) {
      std::fill(lhs.begin(), lhs.end(), 0);
      for (const auto& t : alg_->bracket_table(n + i, n + j)) {
        require(t.idx >= n && t.idx < 3 * n, "witt bracket left the W block");
        for (auto [r, c] : cols[t.idx - n])
          lhs[r] = f_->add(lhs[r], f_->mul(c, t.c));
      }
      ok = lhs == w_bracket(cols[i], cols[j]);
    }
  bracket_preserving_ = ok;
  return ok;
}

void WittEndo::expect_automorphism() const {
  require(is_invertible(), "witt endomorphism is singular");
  require(is_bracket_preserving(),
          "witt endomorphism does not preserve the bracket");
}

Mat lambda_matrix(const AlgebraPtr& alg, const Field& f, std::uint32_t t1,
                  std::uint32_t t2) {
  require(t1 != 0 && t2 != 0, "lambda: torus parameter must be nonzero");
  std::vector<std::uint32_t> diag(alg->dim());
  for (std::uint32_t b = 0; b < alg->dim(); ++b) {
    auto [u, v] = alg->zz_degree(b);
    diag[b] = f.mul(f.pow(t1, u), f.pow(t2, v));
  }
  return Mat::diagonal(f, diag);
}

Endomorphism lambda(const AlgebraPtr& alg, const Field& f,
                    const TorusParameter& t) {
  require(&t.t1.field() == &f, "lambda: parameter over wrong field");
  Endomorphism psi(alg, f, lambda_matrix(alg, f, t.t1.code(), t.t2.code()));
  psi.expect_automorphism();
  return psi;
}

LambdaKernel kernel_of_lambda(const Field& f) {
  LambdaKernel out;
  if (f.group_order() % 3 == 0) {
    std::uint32_t w = f.root_of_unity(3);
    out.complete = true;
    std::uint32_t c = 1;
    for (int i = 0; i < 3; ++i) {
      out.params.push_back(
          TorusParameter(FieldElement(f, c), FieldElement(f, f.inv(c))));
      c = f.mul(c, w);
    }
  } else {
    out.complete = false;  // only the trivial point is visible at this stage
    out.params.push_back(
        TorusParameter(FieldElement(f, 1), FieldElement(f, 1)));
  }
  return out;
}

Endomorphism theta(const AlgebraPtr& alg, const Field& f) {
  require(f.group_order() % 3 == 0,
          "theta: field stage lacks a primitive cube root of unity");
  std::uint32_t beta = f.root_of_unity(3);
  std::uint32_t beta2 = f.mul(beta, beta);
  return lambda(alg, f, TorusParameter(FieldElement(f, beta2), FieldElement(f, beta2)));
}

namespace {

void require_symmetric_shape(const Shape& s, const char* what) {
  require(s.n()[0] == s.n()[1],
          std::string(what) + ": defined only for n1 = n2 (the torus "
          "normalizer has no swap otherwise)");
}

std::uint32_t swapped_rank(const Shape& s, std::uint32_t r) {
  auto a = s.unrank(r);
  std::swap(a[0], a[1]);
  return s.rank(a);
}

}  // namespace

Mat upsilon_matrix(const AlgebraPtr& alg, const Field& f) {
  const Shape& s = *alg->shape();
  require_symmetric_shape(s, "upsilon");
  Mat m(f, s.dim(), s.dim());
  for (std::uint32_t r = 0; r < s.dim(); ++r) m.at(swapped_rank(s, r), r) = 1;
  return m;
}

bool is_o_algebra_map(const AlgebraPtr& alg, const Field& f, const Mat& m) {
  const Shape& s = *alg->shape();
  ShapePtr sp = alg->shape();
  auto image = [&](const Poly& p) {
    Poly out(sp, f);
    for (auto [r, c] : p.terms())
      for (std::uint32_t i = 0; i < s.dim(); ++i)
        if (m.at(i, r) != 0) out.add_term(i, f.mul(c, m.at(i, r)));
    return out;
  };
  for (std::uint32_t i = 0; i < s.dim(); ++i) {
    Poly pi = Poly::monomial(sp, f, s.unrank(i));
    for (std::uint32_t j = i; j < s.dim(); ++j) {
      Poly pj = Poly::monomial(sp, f, s.unrank(j));
      if (image(pi * pj) != image(pi) * image(pj)) return false;
    }
  }
  return true;
}

WittEndo sigma_w(const AlgebraPtr& alg, const Field& f) {
  const Shape& s = *alg->shape();
  require_symmetric_shape(s, "sigma");
  std::uint32_t n = s.dim();
  Mat m(f, 2 * n, 2 * n);
  for (std::uint32_t r = 0; r < n; ++r) {
    m.at(n + swapped_rank(s, r), r) = 1;  // x^(a) d1 -> x^(abar) d2
    m.at(swapped_rank(s, r), n + r) = 1;  // x^(a) d2 -> x^(abar) d1
  }
  WittEndo psi(alg, f, std::move(m));
  psi.expect_automorphism();
  return psi;
}

Mat t_w_matrix(const AlgebraPtr& alg, const Field& f, std::uint32_t s1,
               std::uint32_t s2) {
  require(s1 != 0 && s2 != 0, "t_w: parameters must be nonzero");
  const Shape& s = *alg->shape();
  std::uint32_t n = s.dim();
  std::vector<std::uint32_t> diag(2 * n);
  for (std::uint32_t r = 0; r < n; ++r) {
    auto a = s.unrank(r);
    std::uint32_t base = f.mul(f.pow(s1, a[0]), f.pow(s2, a[1]));
    diag[r] = f.div(base, s1);
    diag[n + r] = f.div(base, s2);
  }
  return Mat::diagonal(f, diag);
}

SigmaM sigma_m(const AlgebraPtr& alg, const Field& f) {
  const Shape& s = *alg->shape();
  require_symmetric_shape(s, "sigma_m");

  // the compatibility system: c_t = -c_o^2 from the O x O rule and
  // c_o = -c_t^2 from the tilde x tilde rule; smallest solution by code
  std::uint32_t c_o = 0;
  bool found = false;
  for (std::uint32_t cand = 1; cand < f.order(); ++cand) {
    std::uint32_t ct = f.neg(f.mul(cand, cand));
    if (f.neg(f.mul(ct, ct)) == cand) {
      c_o = cand;
      found = true;
      break;
    }
  }
  require(found, "sigma_m: compatibility system has no solution in this field");
  std::uint32_t c_t = f.neg(f.mul(c_o, c_o));

  std::uint32_t n = s.dim();
  Mat m(f, alg->dim(), alg->dim());
  for (std::uint32_t r = 0; r < n; ++r) {
    std::uint32_t rs = swapped_rank(s, r);
    m.at(rs, r) = c_o;                  // O: f -> c_o upsilon(f)
    m.at(2 * n + rs, n + r) = 1;        // W: x^(a) d1 -> x^(abar) d2
    m.at(n + rs, 2 * n + r) = 1;        // W: x^(a) d2 -> x^(abar) d1
    m.at(4 * n + rs, 3 * n + r) = c_t;  // W~: td1-component -> c_t (...) td2
    m.at(3 * n + rs, 4 * n + r) = c_t;  // W~: td2-component -> c_t (...) td1
  }
  Endomorphism psi(alg, f, std::move(m));
  psi.expect_automorphism();
  return SigmaM{std::move(psi), FieldElement(f, c_o), FieldElement(f, c_t)};
}

WittEndo pi_restrict(const Endomorphism& psi) {
  require(psi.is_w_preserving(),
          "pi: endomorphism does not preserve the W part");
  std::uint32_t n = psi.alg()->o_dim();
  Mat sub(psi.field(), 2 * n, 2 * n);
  for (std::uint32_t r = 0; r < 2 * n; ++r)
    for (std::uint32_t c = 0; c < 2 * n; ++c)
      sub.at(r, c) = psi.matrix().at(n + r, n + c);
  return WittEndo(psi.alg(), psi.field(), std::move(sub));
}

Endomorphism eta(const Grading& g, const Character& chi) {
  require(chi.group() == g.group(), "eta: character group mismatch");
  require(&chi.field() == &g.field(), "eta: character over wrong field stage");
  if (!g.verified().has_value()) verify_grading(g);
  require(g.verified() == true, "eta: grading failed verification");

  const std::uint32_t dim = g.alg()->dim();
  const Field& f = g.field();
  Mat psi(f, dim, dim);
  if (g.is_monomial()) {
    for (std::uint32_t b = 0; b < dim; ++b)
      psi.at(b, b) = chi.eval(g.degree(b));
  } else {
    Mat basis(f, dim, dim);
    std::vector<std::uint32_t> scalars(dim);
    std::uint32_t at = 0;
    for (const auto& comp : g.components()) {
      std::uint32_t value = chi.eval(comp.label);
      for (std::uint32_t c = 0; c < comp.basis.cols(); ++c) {
        basis.set_col(at, comp.basis.col(c));
        scalars[at++] = value;
      }
    }
    require(at == dim, "eta: components do not fill the algebra");
    psi = basis * Mat::diagonal(f, scalars) * basis.inverse();
  }
  Endomorphism out(g.alg(), f, std::move(psi));
  out.expect_automorphism();
  return out;
}

Grading eigenspace_grading(std::span<const Endomorphism> q,
                           const AbelianGroup& hint) {
  require(hint.is_finite(), "eigenspace grading: hint group must be finite");
  require(q.size() == hint.torsion().size(),
          "eigenspace grading: one generator per torsion factor of the hint");
  if (q.empty())
    require(hint.is_trivial(),
            "eigenspace grading: nontrivial hint needs generators");

  AlgebraPtr alg;
  const Field* f = nullptr;
  if (!q.empty()) {
    alg = q[0].alg();
    f = &q[0].field();
  }
  for (const auto& psi : q) {
    require(psi.alg() == alg && &psi.field() == f,
            "eigenspace grading: mixed algebras or fields");
  }
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a + 1; b < q.size(); ++b)
      require(q[a].matrix() * q[b].matrix() == q[b].matrix() * q[a].matrix(),
              "eigenspace grading: generators do not commute");

  if (q.empty()) {
    // no generators: the decomposition is trivial; need an algebra to label.
    fail("eigenspace grading: empty generator list is only meaningful with "
         "an algebra; pass at least the identity");
  }

  const std::uint32_t dim = alg->dim();
  for (std::size_t j = 0; j < q.size(); ++j) {
    long long m = hint.torsion()[j];
    require(m % f->characteristic() != 0,
            "eigenspace grading: generator order divisible by the "
            "characteristic");
    require(f->group_order() % static_cast<std::uint32_t>(m) == 0,
            "eigenspace grading: field stage lacks the needed roots of unity");
    require(q[j].matrix().pow(static_cast<std::uint64_t>(m)).is_identity(),
            "eigenspace grading: generator is not diagonalizable at the "
            "declared order (its minimal polynomial has repeated or foreign "
            "roots)");
  }

  struct Piece {
    Mat basis;
    std::vector<long long> logs;
  };
  std::vector<Piece> pieces{Piece{Mat::identity(*f, dim), {}}};
  for (std::size_t j = 0; j < q.size(); ++j) {
    long long m = hint.torsion()[j];
    std::uint32_t zeta = f->root_of_unity(static_cast<std::uint64_t>(m));
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      std::uint32_t found = 0;
      for (long long t = 0; t < m; ++t) {
        std::uint32_t mu = f->pow(zeta, t);
        Mat shifted = q[j].matrix() * piece.basis - piece.basis.scaled(mu);
        Mat k = shifted.kernel();
        if (k.cols() == 0) continue;
        Piece p{piece.basis * k, piece.logs};
        p.logs.push_back(t);
        found += k.cols();
        next.push_back(std::move(p));
      }
      require(found == piece.basis.cols(),
              "eigenspace grading: eigenspaces do not fill the space");
    }
    pieces = std::move(next);
  }

  std::vector<GradingComponent> comps;
  comps.reserve(pieces.size());
  for (auto& p : pieces)
    comps.push_back(GradingComponent{hint.element({}, p.logs),
                                     std::move(p.basis), std::nullopt});
  Grading out = Grading::general(alg, *f, hint, std::move(comps));
  VerifyResult vr = verify_grading(out);
  require(vr.pass, "eigenspace grading: decomposition fails the bracket check");
  return out;
}

Mat ad_matrix(const AlgebraPtr& alg, const Field& f, const MelikyanElement& y) {
  SparseVec yc = alg->sparse_coords(y);
  Mat m(f, alg->dim(), alg->dim());
  for (std::uint32_t j = 0; j < alg->dim(); ++j) {
    SparseVec col = alg->bracket_coords(yc, SparseVec{{j, 1}}, f);
    for (auto [r, c] : col) m.at(r, j) = c;
  }
  return m;
}

Endomorphism exp_ad(const AlgebraPtr& alg, const MelikyanElement& y) {
  const Field& f = y.field();
  Mat a = ad_matrix(alg, f, y);
  Mat a2 = a * a;
  require((a2 * a).is_zero(),
          "exp_ad: (ad y)^3 != 0; the truncated exponential in characteristic "
          "5 stops at degree (p-1)/2 = 2");
  std::uint32_t half = f.inv(f.from_int(2));
  Mat psi = Mat::identity(f, alg->dim()) + a + a2.scaled(half);
  Endomorphism out(alg, f, std::move(psi));
  out.expect_automorphism();
  return out;
}

InTorusResult in_torus(const AlgebraPtr& alg, const Field& f, const Mat& m) {
  InTorusResult res;
  if (auto od = m.off_diagonal_entry()) {
    std::ostringstream os;
    os << "not diagonal in the canonical basis: entry (" << od->first << ","
       << od->second << ") is nonzero";
    res.obstruction = os.str();
    return res;
  }
  auto diag = m.diagonal();
  for (auto d : diag)
    if (d == 0) {
      res.obstruction = "diagonal entry is zero; not invertible";
      return res;
    }

  // values must be constant on every zz component ...
  std::map<std::array<int, 2>, std::uint32_t> value;
  for (std::uint32_t b = 0; b < alg->dim(); ++b) {
    auto key = alg->zz_degree(b);
    auto [it, fresh] = value.emplace(key, diag[b]);
    if (!fresh && it->second != diag[b]) {
      res.obstruction = "diagonal is not constant on a zz component";
      return res;
    }
  }
  // ... and multiplicative along the labels: value(u,v) = s1^i alpha^j with
  // (u,v) = (3i+j, j)
  std::uint32_t s1 = f.inv(value.at({-3, 0}));
  std::uint32_t alpha = f.inv(value.at({-1, -1}));
  for (const auto& [key, val] : value) {
    auto [u, v] = key;
    long long j = v, i = (u - v) / 3;
    std::uint32_t expect = f.mul(f.pow(s1, i), f.pow(alpha, j));
    if (expect != val) {
      res.obstruction = "diagonal is not multiplicative along the zz labels";
      return res;
    }
  }

  // recover t1 as a cube root of s1, extending the stage when needed
  const Field* pf = &f;
  std::uint32_t s1p = s1, alphap = alpha;
  auto root = f.cube_root(s1);
  if (!root) {
    const Field& ext = Field::get(f.characteristic(), 3 * f.degree());
    res.embedding = embed_field(f, ext);
    pf = &ext;
    s1p = res.embedding->map(s1);
    alphap = res.embedding->map(alpha);
    root = ext.cube_root(s1p);
    require(root.has_value(),
            "in_torus: cube root missing even after a degree-3 extension");
  }
  std::uint32_t t1 = *root;
  std::uint32_t t2 = pf->div(alphap, t1);
  res.yes = true;
  res.param = TorusParameter(FieldElement(*pf, t1), FieldElement(*pf, t2));
  res.param_field = pf;
  return res;
}

InTorusResult in_torus(const Endomorphism& psi) {
  return in_torus(psi.alg(), psi.field(), psi.matrix());
}

NormalizesResult normalizes_torus(const Endomorphism& psi,
                                  std::span<const TorusParameter> samples) {
  psi.expect_automorphism();
  const AlgebraPtr& alg = psi.alg();
  const Field& f = psi.field();
  Mat inv = psi.matrix().inverse();

  NormalizesResult res;
  bool all_identity = true, all_swap = true;
  for (const auto& t : samples) {
    require(&t.t1.field() == &f, "normalizes_torus: sample over wrong field");
    Mat lam = lambda_matrix(alg, f, t.t1.code(), t.t2.code());
    Mat conj = psi.matrix() * lam * inv;
    InTorusResult r = in_torus(alg, f, conj);
    if (!r.yes) {
      res.failures.push_back(t);
      continue;
    }
    if (!(conj == lam)) all_identity = false;
    if (!(conj == lambda_matrix(alg, f, t.t2.code(), t.t1.code())))
      all_swap = false;
  }
  res.yes = res.failures.empty();
  res.induced = all_identity  ? NormalizesResult::Induced::identity
              : all_swap      ? NormalizesResult::Induced::swap
                              : NormalizesResult::Induced::other;
  return res;
}

std::vector<TorusParameter> all_torus_points(const Field& f) {
  std::vector<TorusParameter> out;
  out.reserve(static_cast<std::size_t>(f.group_order()) * f.group_order());
  for (std::uint32_t a = 1; a < f.order(); ++a)
    for (std::uint32_t b = 1; b < f.order(); ++b)
      out.push_back(TorusParameter(FieldElement(f, a), FieldElement(f, b)));
  return out;
}

}  // namespace mel
