#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mel/field.hpp"

namespace mel {

/// Sparse coordinate vector over a field: (index, nonzero code) pairs,
/// strictly increasing indices.
using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

SparseVec to_sparse(std::span<const std::uint32_t> dense);
std::vector<std::uint32_t> to_dense(const SparseVec& v, std::uint32_t dim);

/// Dense row-major matrix over an interned field. Everything is exact;
/// a nonzero residual anywhere is a hard failure, never a tolerance.
class Mat {
 public:
  Mat() : f_(nullptr), rows_(0), cols_(0) {}
  Mat(const Field& f, std::uint32_t rows, std::uint32_t cols)
      : f_(&f), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, 0) {}

  static Mat identity(const Field& f, std::uint32_t n);
  static Mat diagonal(const Field& f, std::span<const std::uint32_t> d);

  const Field& field() const { return *f_; }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  std::uint32_t& at(std::uint32_t r, std::uint32_t c) {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::uint32_t at(std::uint32_t r, std::uint32_t c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::span<const std::uint32_t> row(std::uint32_t r) const {
    return {a_.data() + static_cast<std::size_t>(r) * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::uint32_t r) {
    return {a_.data() + static_cast<std::size_t>(r) * cols_, cols_};
  }

  std::vector<std::uint32_t> col(std::uint32_t c) const;
  SparseVec col_sparse(std::uint32_t c) const;
  void set_col(std::uint32_t c, std::span<const std::uint32_t> v);

  Mat operator*(const Mat& o) const;  // skips zero entries of *this
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(std::uint32_t code) const;
  Mat transpose() const;
  Mat pow(std::uint64_t e) const;

  bool operator==(const Mat& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  /// first nonzero off-diagonal position, if any
  std::optional<std::pair<std::uint32_t, std::uint32_t>> off_diagonal_entry() const;
  std::vector<std::uint32_t> diagonal() const;

  std::uint32_t rank() const;
  Mat inverse() const;  // throws on singular
  std::optional<Mat> inverse_opt() const;

  /// reduced row echelon form; pivot columns appended to *pivots
  Mat rref(std::vector<std::uint32_t>* pivots = nullptr) const;
  /// columns spanning the right kernel
  Mat kernel() const;

  /// embed entries into a larger field stage
  Mat mapped(const FieldEmbedding& e) const;

  std::string str() const;

 private:
  const Field* f_;
  std::uint32_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

/// Row space of a set of vectors in canonical (RREF) form; exact membership
/// tests by reduction.
class RowSpace {
 public:
  RowSpace(const Field& f, std::uint32_t width);

  /// returns true when v was independent of the current rows
  bool add(std::span<const std::uint32_t> v);
  void add_rows(const Mat& m);  // each row of m

  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  std::uint32_t width() const { return width_; }
  bool contains(std::span<const std::uint32_t> v) const;
  bool contains(const SparseVec& v) const;
  /// v reduced by the stored rows (residual); empty support iff contained
  std::vector<std::uint32_t> reduce(std::span<const std::uint32_t> v) const;

  bool operator==(const RowSpace& o) const {
    return width_ == o.width_ && rows_ == o.rows_ && pivots_ == o.pivots_;
  }

 private:
  const Field* f_;
  std::uint32_t width_;
  std::vector<std::vector<std::uint32_t>> rows_;  // normalized, pivot = 1
  std::vector<std::uint32_t> pivots_;             // pivot column per row
};

/// column space of a matrix, as a RowSpace of its transpose
RowSpace column_space(const Mat& m);
bool same_column_space(const Mat& a, const Mat& b);

}  // namespace mel
