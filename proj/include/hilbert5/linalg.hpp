// Dense exact linear algebra over Q.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace hilbert5 {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  QMatrix transpose() const;
  /// A - c*I (square matrices).
  QMatrix minus_scalar(const mpq_class& c) const;

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Columns form a basis of the right kernel.
  QMatrix kernel() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> data_;
};

/// For T with T*B inside the column span of B (B of full column rank), returns X
/// with T*B = B*X.
QMatrix restrict_to(const QMatrix& t, const QMatrix& basis);

}  // namespace hilbert5
