#pragma once

// Exact dense matrices and an incremental sparse echelon basis.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dext/exactnum.hpp"

namespace dext {

class SingularMatrix : public std::domain_error {
 public:
  SingularMatrix() : std::domain_error("matrix is singular") {}
};

class Matrix {
 public:
  Matrix() : field_(&FieldSpec::rationals()) {}
  Matrix(const FieldSpec& f, int rows, int cols)
      : field_(&f), rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, f.zero()) {}

  static Matrix identity(const FieldSpec& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  static Matrix from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_ints(const FieldSpec& f, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& r : rows) {
      s.emplace_back();
      for (long v : r) s.back().push_back(f.from_int(v));
    }
    return from_rows(f, s);
  }

  const FieldSpec& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<Scalar> row(int i) const {
    return std::vector<Scalar>(data_.begin() + static_cast<long>(i) * cols_,
                               data_.begin() + static_cast<long>(i + 1) * cols_);
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix m(*field_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const Scalar& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(*field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix scaled(const Scalar& s) const {
    Matrix m(*this);
    for (Scalar& x : m.data_) x *= s;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix m(*a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int p = -1;
      for (int i = r; i < rows_; ++i)
        if (!(*this)(i, c).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      Scalar inv = (*this)(r, c).inv();
      for (int j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        Scalar f = (*this)(i, c);
        for (int j = c; j < cols_; ++j)
          if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Matrix m(*this);
    return static_cast<int>(m.rref().size());
  }

  // Basis of {v : M v = 0}, one vector per row, in canonical form
  // (identity on the free columns).
  Matrix kernel() const {
    Matrix m(*this);
    std::vector<int> piv = m.rref();
    std::vector<bool> is_piv(cols_, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
      if (!is_piv[c]) free_cols.push_back(c);
    Matrix k(*field_, static_cast<int>(free_cols.size()), cols_);
    for (size_t t = 0; t < free_cols.size(); ++t) {
      int fc = free_cols[t];
      k(static_cast<int>(t), fc) = field_->one();
      for (size_t r = 0; r < piv.size(); ++r) k(static_cast<int>(t), piv[r]) = -m(static_cast<int>(r), fc);
    }
    return k;
  }

  // Basis of {v : v M = 0}.
  Matrix left_kernel() const { return transpose().kernel(); }

  Scalar det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m(*this);
    Scalar d = field_->one();
    for (int c = 0; c < cols_; ++c) {
      int p = -1;
      for (int i = c; i < rows_; ++i)
        if (!m(i, c).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return field_->zero();
      if (p != c) {
        for (int j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      Scalar inv = m(c, c).inv();
      for (int i = c + 1; i < rows_; ++i) {
        if (m(i, c).is_zero()) continue;
        Scalar f = m(i, c) * inv;
        for (int j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    int n = rows_;
    Matrix aug(*field_, n, 2 * n);
    aug.set_block(0, 0, *this);
    aug.set_block(0, n, identity(*field_, n));
    std::vector<int> piv = aug.rref();
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw SingularMatrix();
    return aug.block(0, n, n, n);
  }

  // Solves x M = b for a row vector x; nullopt when inconsistent.
  std::optional<std::vector<Scalar>> solve_left(const std::vector<Scalar>& b) const {
    // x M = b  <=>  M^T x^T = b^T
    Matrix aug(*field_, cols_, rows_ + 1);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) aug(j, i) = (*this)(i, j);
    for (int j = 0; j < cols_; ++j) aug(j, rows_) = b[j];
    std::vector<int> piv = aug.rref();
    std::vector<Scalar> x(rows_, field_->zero());
    for (size_t r = 0; r < piv.size(); ++r) {
      if (piv[r] == rows_) return std::nullopt;
      x[piv[r]] = aug(static_cast<int>(r), rows_);
    }
    return x;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_plain_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  const FieldSpec* field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

// Block diagonal diag(b, b).
inline Matrix block_diag2(const Matrix& b) {
  Matrix m(b.field(), 2 * b.rows(), 2 * b.cols());
  m.set_block(0, 0, b);
  m.set_block(b.rows(), b.cols(), b);
  return m;
}

// Row-echelon basis of sparse vectors keyed by 64-bit column ids. Pivots are
// the largest keys; every stored row is reduced against all other pivots.
class SparseEchelon {
 public:
  using Row = std::map<uint64_t, Scalar>;

  explicit SparseEchelon(const FieldSpec& f) : field_(&f) {}

  // Reduces v against the basis; returns the residual.
  Row reduce(Row v) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) continue;
      Scalar c = it->second;
      uint64_t key = it->first;
      for (const auto& [k, x] : p->second) {
        if (k == key) continue;
        auto [jt, inserted] = v.try_emplace(k, field_->zero());
        jt->second -= c * x;
        if (jt->second.is_zero()) v.erase(jt);
      }
      it = v.erase(v.find(key));
    }
    return v;
  }

  // Adds v; returns false when v is already in the span.
  bool insert(Row v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    uint64_t lead = std::prev(v.end())->first;
    Scalar inv = std::prev(v.end())->second.inv();
    for (auto& [k, x] : v) x *= inv;
    for (auto& [pk, row] : pivots_) {
      auto jt = row.find(lead);
      if (jt == row.end()) continue;
      Scalar c = jt->second;
      for (const auto& [k, x] : v) {
        auto [kt, inserted] = row.try_emplace(k, field_->zero());
        kt->second -= c * x;
        if (kt->second.is_zero()) row.erase(kt);
      }
    }
    pivots_.emplace(lead, std::move(v));
    return true;
  }

  bool contains(const Row& v) const { return reduce(v).empty(); }
  size_t rank() const { return pivots_.size(); }
  const std::map<uint64_t, Row>& rows() const { return pivots_; }

 private:
  const FieldSpec* field_;
  std::map<uint64_t, Row> pivots_;
};

}  // namespace dext
