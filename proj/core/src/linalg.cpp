#include "etnet/linalg.hpp"

#include <cmath>

namespace etnet {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Vec Matrix::operator*(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix*Vec: dimension mismatch");
  Vec out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * v[j];
    out[i] = s;
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::symmetrized() const {
  if (rows_ != cols_) throw std::invalid_argument("symmetrized: matrix not square");
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Vec-Vec: dimension mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const Matrix mt = m.transposed();
  const bool symmetric = mt == m;

  // For symmetric input iterate on M itself; otherwise on M^T M and
  // take the square root of the dominant eigenvalue.
  const std::size_t n = m.cols();
  Vec v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double prev = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Vec w = symmetric ? m * v : mt * (m * v);
    const double wn = norm2(w);
    if (wn == 0.0) return 0.0;
    for (auto& c : w) c /= wn;
    double rq = std::abs(dot(w, symmetric ? m * w : mt * (m * w)));
    if (std::abs(rq - prev) <= 1e-10 * std::max(1.0, rq)) {
      return symmetric ? rq : std::sqrt(rq);
    }
    prev = rq;
    v = std::move(w);
  }
  return symmetric ? prev : std::sqrt(prev);
}

}  // namespace etnet
