#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace etnet {

using Vec = std::vector<double>;

/// Dense row-major matrix, just large enough for the small coupling
/// matrices this library works with.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  Vec operator*(const Vec& v) const;
  Matrix transposed() const;
  /// (A + A^T)/2; requires a square matrix.
  Matrix symmetrized() const;

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double norm_inf(const Vec& v);
Vec operator-(const Vec& a, const Vec& b);

/// Spectral norm by power iteration: tolerance 1e-10 on the Rayleigh
/// quotient, at most 10000 iterations, deterministic all-ones start.
double spectral_norm(const Matrix& m);

}  // namespace etnet
