#include "etnet/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace etnet {

double inverse_sigmoid_integral(double y) {
  if (y < 0.0 || y > 1.0) throw std::domain_error("inverse_sigmoid_integral: y outside [0,1]");
  if (y == 0.0 || y == 1.0) return 0.0;
  return y * std::log(y) + (1.0 - y) * std::log1p(-y);
}

CostFunction::CostFunction(double c4, double c3, Matrix coupling, Vec linear)
    : c4_(c4), c3_(c3), coupling_(std::move(coupling)), linear_(std::move(linear)) {
  const std::size_t n = linear_.size();
  if (coupling_.rows() != n || coupling_.cols() != n)
    throw std::invalid_argument("CostFunction: coupling must be n-by-n");
  sym_ = coupling_.symmetrized();
}

double CostFunction::value(const Vec& y) const {
  if (y.size() != dimension()) throw std::invalid_argument("CostFunction::value: dimension mismatch");
  double v = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double y2 = y[i] * y[i];
    v += c4_ * y2 * y2 + c3_ * y2 * y[i] + linear_[i] * y[i];
  }
  v -= 0.5 * dot(y, coupling_ * y);
  return v;
}

Vec CostFunction::gradient(const Vec& y) const {
  if (y.size() != dimension()) throw std::invalid_argument("CostFunction::gradient: dimension mismatch");
  Vec g = sym_ * y;
  for (std::size_t i = 0; i < y.size(); ++i)
    g[i] = 4.0 * c4_ * y[i] * y[i] * y[i] + 3.0 * c3_ * y[i] * y[i] - g[i] + linear_[i];
  return g;
}

Matrix CostFunction::hessian(const Vec& y) const {
  if (y.size() != dimension()) throw std::invalid_argument("CostFunction::hessian: dimension mismatch");
  const std::size_t n = dimension();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = -sym_(i, j);
    h(i, i) += 12.0 * c4_ * y[i] * y[i] + 6.0 * c3_ * y[i];
  }
  return h;
}

namespace {

// max over y in [0,1] of |12 c4 y^2 + 6 c3 y|: endpoints plus the
// interior stationary point of the quadratic, if any.
double diagonal_extremum(double c4, double c3) {
  auto term = [&](double y) { return std::abs(12.0 * c4 * y * y + 6.0 * c3 * y); };
  double m = std::max(term(0.0), term(1.0));
  if (c4 != 0.0) {
    const double ys = -c3 / (4.0 * c4);
    if (ys > 0.0 && ys < 1.0) m = std::max(m, term(ys));
  }
  return m;
}

}  // namespace

double CostFunction::hessian_sup_bound() const {
  return spectral_norm(sym_) + diagonal_extremum(c4_, c3_);
}

Vec CostFunction::gradient_component_bounds() const {
  const std::size_t n = dimension();
  // |4 c4 y^3 + 3 c3 y^2| maximized on [0,1]: endpoints or where
  // 12 c4 y^2 + 6 c3 y = 0, i.e. y = -c3/(2 c4).
  auto poly = [&](double y) { return std::abs(4.0 * c4_ * y * y * y + 3.0 * c3_ * y * y); };
  double pmax = std::max(poly(0.0), poly(1.0));
  if (c4_ != 0.0) {
    const double ys = -c3_ / (2.0 * c4_);
    if (ys > 0.0 && ys < 1.0) pmax = std::max(pmax, poly(ys));
  }
  Vec bound(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(sym_(i, j));
    bound[i] = pmax + row + std::abs(linear_[i]);
  }
  return bound;
}

NetworkModel::NetworkModel(Vec d_, Vec lambda_, Vec theta_, CostFunction cost_)
    : d(std::move(d_)), lambda(std::move(lambda_)), theta(std::move(theta_)), cost(std::move(cost_)) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("NetworkModel: empty network");
  if (lambda.size() != n || theta.size() != n || cost.dimension() != n)
    throw std::invalid_argument("NetworkModel: inconsistent dimensions");
  for (double di : d)
    if (!(di > 0.0)) throw std::invalid_argument("NetworkModel: all d_i must be positive");
  for (double li : lambda)
    if (!(li > 0.0)) throw std::invalid_argument("NetworkModel: all lambda_i must be positive");
}

double NetworkModel::d_max() const { return *std::max_element(d.begin(), d.end()); }

double NetworkModel::lambda_max() const { return *std::max_element(lambda.begin(), lambda.end()); }

Vec NetworkModel::output(const Vec& x) const {
  if (x.size() != size()) throw std::invalid_argument("NetworkModel::output: dimension mismatch");
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = sigmoid(lambda[i] * x[i]);
  return y;
}

}  // namespace etnet
