#pragma once

#include "dualpair/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualpair {

/// Nonzero entry located by row and column.
struct Triplet {
  std::size_t row;
  std::size_t col;
  Scalar value;
};

/// Exact sparse matrix, column-compressed, rows sorted within each column.
///
/// No zero is ever stored: every constructor and operation drops entries that
/// cancel, so a matrix is zero iff nnz() == 0 and equality is entrywise.
class SparseMatrix {
public:
  struct Entry {
    std::uint32_t row;
    Scalar value;
  };

  SparseMatrix() : col_start_(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_start_(cols + 1, 0) {}

  static SparseMatrix identity(std::size_t n, const Scalar& c = Scalar(1)) {
    SparseMatrix m(n, n);
    if (c.is_zero()) return m;
    m.entries_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      m.entries_.push_back({static_cast<std::uint32_t>(j), c});
      m.col_start_[j + 1] = j + 1;
    }
    return m;
  }

  /// Duplicate positions are summed; resulting zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> ts) {
    for (const auto& t : ts)
      if (t.row >= rows || t.col >= cols)
        throw std::out_of_range("SparseMatrix: triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    SparseMatrix m(rows, cols);
    m.entries_.reserve(ts.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      while (k < ts.size() && ts[k].col == j) {
        std::size_t r = ts[k].row;
        Scalar v = std::move(ts[k].value);
        for (++k; k < ts.size() && ts[k].col == j && ts[k].row == r; ++k) v += ts[k].value;
        if (!v.is_zero()) m.entries_.push_back({static_cast<std::uint32_t>(r), std::move(v)});
      }
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  /// Row-major dense literal, e.g. {{0, i}, {i, 0}}.
  static SparseMatrix dense(std::initializer_list<std::initializer_list<Scalar>> rows) {
    std::vector<Triplet> ts;
    std::size_t r = 0, ncols = 0;
    for (const auto& row : rows) {
      std::size_t c = 0;
      for (const auto& v : row) {
        if (!v.is_zero()) ts.push_back({r, c, v});
        ++c;
      }
      if (r == 0) ncols = c;
      else if (c != ncols) throw std::invalid_argument("SparseMatrix::dense: ragged rows");
      ++r;
    }
    return from_triplets(r, ncols, std::move(ts));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  std::span<const Entry> column(std::size_t c) const {
    return {entries_.data() + col_start_[c], entries_.data() + col_start_[c + 1]};
  }

  Scalar at(std::size_t r, std::size_t c) const {
    auto col = column(c);
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t row) { return e.row < row; });
    if (it != col.end() && it->row == r) return it->value;
    return {};
  }

  /// First nonzero in column-major order.
  std::optional<Triplet> first_nonzero() const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (col_start_[j] != col_start_[j + 1]) {
        const Entry& e = entries_[col_start_[j]];
        return Triplet{e.row, j, e.value};
      }
    return std::nullopt;
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> ts;
    ts.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : column(j)) ts.push_back({e.row, j, e.value});
    return ts;
  }

  SparseMatrix scaled(const Scalar& c) const {
    if (c.is_zero()) return SparseMatrix(rows_, cols_);
    SparseMatrix m(rows_, cols_);
    m.entries_.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j) {
      for (const auto& e : column(j)) m.entries_.push_back({e.row, e.value * c});
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  SparseMatrix adjoint() const {
    std::vector<Triplet> ts;
    ts.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : column(j)) ts.push_back({j, e.row, e.value.conj()});
    return from_triplets(cols_, rows_, std::move(ts));
  }

  /// Drops every entry in columns whose mask byte is zero.
  SparseMatrix masked_columns(const std::vector<char>& keep) const {
    SparseMatrix m(rows_, cols_);
    m.entries_.reserve(nnz());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (keep[j])
        for (const auto& e : column(j)) m.entries_.push_back(e);
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }
  SparseMatrix operator-() const { return scaled(Scalar(-1)); }

  /// a*b; columns of b with a zero byte in `mask` are left empty.
  static SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const std::vector<char>* mask = nullptr) {
    if (a.cols_ != b.rows_)
      throw std::logic_error("SparseMatrix: dimension mismatch in product (" + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + ") * (" + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_) + ")");
    SparseMatrix m(a.rows_, b.cols_);
    std::vector<Scalar> acc(a.rows_);
    std::vector<char> seen(a.rows_, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (!mask || (*mask)[j]) {
        for (const auto& eb : b.column(j))
          for (const auto& ea : a.column(eb.row)) {
            if (!seen[ea.row]) {
              seen[ea.row] = 1;
              touched.push_back(ea.row);
            }
            acc[ea.row].add_product(ea.value, eb.value);
          }
        std::sort(touched.begin(), touched.end());
        for (auto r : touched) {
          if (!acc[r].is_zero()) m.entries_.push_back({r, std::move(acc[r])});
          acc[r] = Scalar();
          seen[r] = 0;
        }
        touched.clear();
      }
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) { return multiply(a, b); }

  /// Kronecker product; index of (i, k) in the result is i*b.rows() + k.
  friend SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    m.entries_.reserve(a.nnz() * b.nnz());
    for (std::size_t ja = 0; ja < a.cols_; ++ja)
      for (std::size_t jb = 0; jb < b.cols_; ++jb) {
        for (const auto& ea : a.column(ja))
          for (const auto& eb : b.column(jb))
            m.entries_.push_back({static_cast<std::uint32_t>(ea.row * b.rows_ + eb.row), ea.value * eb.value});
        m.col_start_[ja * b.cols_ + jb + 1] = m.entries_.size();
      }
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.col_start_ != b.col_start_) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (a.entries_[k].row != b.entries_[k].row || !(a.entries_[k].value == b.entries_[k].value)) return false;
    return true;
  }

private:
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::logic_error("SparseMatrix: dimension mismatch in sum (" + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + ") vs (" + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_) + ")");
    SparseMatrix m(a.rows_, a.cols_);
    m.entries_.reserve(a.nnz() + b.nnz());
    for (std::size_t j = 0; j < a.cols_; ++j) {
      auto ca = a.column(j), cb = b.column(j);
      std::size_t p = 0, q = 0;
      while (p < ca.size() || q < cb.size()) {
        if (q == cb.size() || (p < ca.size() && ca[p].row < cb[q].row)) {
          m.entries_.push_back(ca[p++]);
        } else if (p == ca.size() || cb[q].row < ca[p].row) {
          m.entries_.push_back({cb[q].row, subtract ? -cb[q].value : cb[q].value});
          ++q;
        } else {
          Scalar v = subtract ? ca[p].value - cb[q].value : ca[p].value + cb[q].value;
          if (!v.is_zero()) m.entries_.push_back({ca[p].row, std::move(v)});
          ++p;
          ++q;
        }
      }
      m.col_start_[j + 1] = m.entries_.size();
    }
    return m;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_start_;
  std::vector<Entry> entries_;
};

} // namespace dualpair
