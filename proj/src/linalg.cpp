#include "mel/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace mel {

SparseVec to_sparse(std::span<const std::uint32_t> dense) {
  SparseVec v;
  for (std::uint32_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.emplace_back(i, dense[i]);
  return v;
}

std::vector<std::uint32_t> to_dense(const SparseVec& v, std::uint32_t dim) {
  std::vector<std::uint32_t> out(dim, 0);
  for (auto [i, c] : v) out.at(i) = c;
  return out;
}

Mat Mat::identity(const Field& f, std::uint32_t n) {
  Mat m(f, n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::diagonal(const Field& f, std::span<const std::uint32_t> d) {
  Mat m(f, static_cast<std::uint32_t>(d.size()), static_cast<std::uint32_t>(d.size()));
  for (std::uint32_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

std::vector<std::uint32_t> Mat::col(std::uint32_t c) const {
  std::vector<std::uint32_t> v(rows_);
  for (std::uint32_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

SparseVec Mat::col_sparse(std::uint32_t c) const {
  SparseVec v;
  for (std::uint32_t r = 0; r < rows_; ++r)
    if (at(r, c) != 0) v.emplace_back(r, at(r, c));
  return v;
}

void Mat::set_col(std::uint32_t c, std::span<const std::uint32_t> v) {
  require(v.size() == rows_, "set_col: wrong length");
  for (std::uint32_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

Mat Mat::operator*(const Mat& o) const {
  require(f_ == o.f_, "matrix product: field mismatch");
  require(cols_ == o.rows_, "matrix product: inner dimension mismatch");
  Mat out(*f_, rows_, o.cols_);
  for (std::uint32_t i = 0; i < rows_; ++i) {
    auto out_row = out.row(i);
    for (std::uint32_t k = 0; k < cols_; ++k) {
      std::uint32_t aik = at(i, k);
      if (aik == 0) continue;
      auto brow = o.row(k);
      for (std::uint32_t j = 0; j < o.cols_; ++j)
        if (brow[j] != 0)
          out_row[j] = f_->add(out_row[j], f_->mul(aik, brow[j]));
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  require(f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix sum: shape mismatch");
  Mat out(*f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->add(a_[i], o.a_[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  require(f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix difference: shape mismatch");
  Mat out(*f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->sub(a_[i], o.a_[i]);
  return out;
}

Mat Mat::scaled(std::uint32_t code) const {
  Mat out(*f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->mul(a_[i], code);
  return out;
}

Mat Mat::transpose() const {
  Mat out(*f_, cols_, rows_);
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::uint32_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

Mat Mat::pow(std::uint64_t e) const {
  require(rows_ == cols_, "matrix power: square matrix required");
  Mat acc = identity(*f_, rows_);
  Mat base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint32_t v) { return v == 0; });
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::uint32_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

bool Mat::is_diagonal() const { return !off_diagonal_entry().has_value(); }

std::optional<std::pair<std::uint32_t, std::uint32_t>> Mat::off_diagonal_entry() const {
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::uint32_t c = 0; c < cols_; ++c)
      if (r != c && at(r, c) != 0) return std::make_pair(r, c);
  return std::nullopt;
}

std::vector<std::uint32_t> Mat::diagonal() const {
  std::vector<std::uint32_t> d(std::min(rows_, cols_));
  for (std::uint32_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

Mat Mat::rref(std::vector<std::uint32_t>* pivots) const {
  Mat m = *this;
  std::uint32_t lead = 0;
  for (std::uint32_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::uint32_t piv = lead;
    while (piv < rows_ && m.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != lead)
      for (std::uint32_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(lead, j));
    std::uint32_t inv = f_->inv(m.at(lead, c));
    for (std::uint32_t j = 0; j < cols_; ++j) m.at(lead, j) = f_->mul(m.at(lead, j), inv);
    for (std::uint32_t r = 0; r < rows_; ++r) {
      if (r == lead) continue;
      std::uint32_t v = m.at(r, c);
      if (v == 0) continue;
      for (std::uint32_t j = 0; j < cols_; ++j)
        m.at(r, j) = f_->sub(m.at(r, j), f_->mul(v, m.at(lead, j)));
    }
    if (pivots) pivots->push_back(c);
    ++lead;
  }
  return m;
}

std::uint32_t Mat::rank() const {
  std::vector<std::uint32_t> piv;
  rref(&piv);
  return static_cast<std::uint32_t>(piv.size());
}

std::optional<Mat> Mat::inverse_opt() const {
  require(rows_ == cols_, "inverse: square matrix required");
  // Gauss-Jordan on [A | I]
  Mat aug(*f_, rows_, 2 * cols_);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    for (std::uint32_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = 1;
  }
  std::vector<std::uint32_t> piv;
  Mat red = aug.rref(&piv);
  if (piv.size() != rows_) return std::nullopt;
  for (std::uint32_t i = 0; i < piv.size(); ++i)
    if (piv[i] != i) return std::nullopt;
  Mat inv(*f_, rows_, cols_);
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::uint32_t c = 0; c < cols_; ++c) inv.at(r, c) = red.at(r, cols_ + c);
  return inv;
}

Mat Mat::inverse() const {
  auto inv = inverse_opt();
  require(inv.has_value(), "inverse: matrix is singular");
  return *inv;
}

Mat Mat::kernel() const {
  std::vector<std::uint32_t> piv;
  Mat red = rref(&piv);
  std::vector<bool> is_piv(cols_, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t c = 0; c < cols_; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  Mat k(*f_, cols_, static_cast<std::uint32_t>(free_cols.size()));
  for (std::uint32_t j = 0; j < free_cols.size(); ++j) {
    std::uint32_t fc = free_cols[j];
    k.at(fc, j) = 1;
    for (std::uint32_t i = 0; i < piv.size(); ++i)
      k.at(piv[i], j) = f_->neg(red.at(i, fc));
  }
  return k;
}

Mat Mat::mapped(const FieldEmbedding& e) const {
  require(e.src == f_, "mapped: embedding source mismatch");
  Mat out(*e.dst, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = e.map(a_[i]);
  return out;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (std::uint32_t r = 0; r < rows_; ++r) {
    for (std::uint32_t c = 0; c < cols_; ++c) os << (c ? " " : "") << f_->str(at(r, c));
    os << "\n";
  }
  return os.str();
}

RowSpace::RowSpace(const Field& f, std::uint32_t width) : f_(&f), width_(width) {}

std::vector<std::uint32_t> RowSpace::reduce(std::span<const std::uint32_t> v) const {
  require(v.size() == width_, "row space: wrong vector length");
  std::vector<std::uint32_t> w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint32_t c = w[pivots_[i]];
    if (c == 0) continue;
    const auto& row = rows_[i];
    for (std::uint32_t j = pivots_[i]; j < width_; ++j)
      if (row[j] != 0) w[j] = f_->sub(w[j], f_->mul(c, row[j]));
  }
  return w;
}

bool RowSpace::add(std::span<const std::uint32_t> v) {
  auto w = reduce(v);
  std::uint32_t piv = width_;
  for (std::uint32_t j = 0; j < width_; ++j)
    if (w[j] != 0) {
      piv = j;
      break;
    }
  if (piv == width_) return false;
  std::uint32_t inv = f_->inv(w[piv]);
  for (std::uint32_t j = piv; j < width_; ++j) w[j] = f_->mul(w[j], inv);
  // keep rows fully reduced against the new row
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint32_t c = rows_[i][piv];
    if (c == 0) continue;
    for (std::uint32_t j = piv; j < width_; ++j)
      rows_[i][j] = f_->sub(rows_[i][j], f_->mul(c, w[j]));
  }
  // insert sorted by pivot for canonical form
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(w));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

void RowSpace::add_rows(const Mat& m) {
  for (std::uint32_t r = 0; r < m.rows(); ++r) add(m.row(r));
}

bool RowSpace::contains(std::span<const std::uint32_t> v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

bool RowSpace::contains(const SparseVec& v) const {
  return contains(to_dense(v, width_));
}

RowSpace column_space(const Mat& m) {
  RowSpace s(m.field(), m.rows());
  for (std::uint32_t c = 0; c < m.cols(); ++c) s.add(m.col(c));
  return s;
}

bool same_column_space(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows(), "same_column_space: height mismatch");
  return column_space(a) == column_space(b);
}

}  // namespace mel
