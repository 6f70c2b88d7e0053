#include "hilbert5/linalg.hpp"

#include <stdexcept>

namespace hilbert5 {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpq_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) out(i, j) += a * o(k, j);
    }
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

QMatrix QMatrix::minus_scalar(const mpq_class& c) const {
  QMatrix out = *this;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out(i, i) -= c;
  return out;
}

std::vector<std::size_t> QMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
    const mpq_class inv = 1 / (*this)(r, c);
    for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      const mpq_class f = (*this)(i, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix m = *this;
  return m.rref().size();
}

QMatrix QMatrix::kernel() const {
  QMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  QMatrix k(cols_, cols_ - pivots.size());
  std::size_t col = 0;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    k(f, col) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], col) = -m(i, f);
    ++col;
  }
  return k;
}

QMatrix restrict_to(const QMatrix& t, const QMatrix& basis) {
  const QMatrix tb = t * basis;
  const std::size_t n = basis.rows(), d = basis.cols();
  // Solve basis * X = tb via the echelon form of [basis | tb].
  QMatrix aug(n, d + d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      aug(i, j) = basis(i, j);
      aug(i, d + j) = tb(i, j);
    }
  const auto pivots = aug.rref();
  if (pivots.size() != d || (d > 0 && pivots.back() >= d))
    throw std::invalid_argument("subspace is not invariant");
  QMatrix x(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = aug(i, d + j);
  return x;
}

}  // namespace hilbert5
