#pragma once

#include <cmath>

#include "etnet/linalg.hpp"

namespace etnet {

/// Logistic activation 1/(1+e^-u), overflow-safe for any finite u.
inline double sigmoid(double u) {
  if (u >= 0.0) {
    return 1.0 / (1.0 + std::exp(-u));
  }
  const double e = std::exp(u);
  return e / (1.0 + e);
}

/// g'(u) = g(u)(1-g(u)); peaks at 1/4, underflows cleanly to 0.
inline double sigmoid_derivative(double u) {
  const double g = sigmoid(u);
  return g * (1.0 - g);
}

/// Closed form of the inverse-activation integral
///   int_0^y ln(s/(1-s)) ds = y ln y + (1-y) ln(1-y),
/// extended by its limits (= 0) at y -> 0+ and y -> 1-.
/// Throws std::domain_error outside [0, 1].
double inverse_sigmoid_integral(double y);

/// Quartic/cubic/quadratic/linear cost family
///   f(y) = sum_i (c4 y_i^4 + c3 y_i^3) - 1/2 y^T W y + sum_i b_i y_i.
/// The coupling may be nonsymmetric; calculus goes through the
/// symmetrization S = (W + W^T)/2, the gradient of the quadratic form.
class CostFunction {
public:
  CostFunction(double c4, double c3, Matrix coupling, Vec linear);

  std::size_t dimension() const { return linear_.size(); }
  double quartic_coefficient() const { return c4_; }
  double cubic_coefficient() const { return c3_; }
  const Matrix& coupling() const { return coupling_; }
  const Matrix& coupling_symmetrized() const { return sym_; }
  const Vec& linear_term() const { return linear_; }

  double value(const Vec& y) const;

  /// [grad f]_i = 4 c4 y_i^3 + 3 c3 y_i^2 - (S y)_i + b_i.
  Vec gradient(const Vec& y) const;

  /// diag(12 c4 y_i^2 + 6 c3 y_i) - S.
  Matrix hessian(const Vec& y) const;

  /// Upper bound on sup_{y in [0,1]^n} ||hessian(y)||_2:
  /// ||S||_2 plus the extremum of |12 c4 y^2 + 6 c3 y| on [0,1].
  double hessian_sup_bound() const;

  /// Componentwise bound on |[grad f]_i| over y in [0,1]^n.
  Vec gradient_component_bounds() const;

private:
  double c4_ = 0.0;
  double c3_ = 0.0;
  Matrix coupling_;
  Matrix sym_;
  Vec linear_;
};

/// Network parameters for x' = -D x - grad f(y(t_k)) + theta, y = g(Lambda x).
struct NetworkModel {
  Vec d;        ///< self-inhibition diagonal, all > 0
  Vec lambda;   ///< activation slopes, all > 0
  Vec theta;    ///< constant input
  CostFunction cost;

  NetworkModel(Vec d_, Vec lambda_, Vec theta_, CostFunction cost_);

  std::size_t size() const { return d.size(); }
  double d_max() const;
  double lambda_max() const;

  /// y = g(Lambda x).
  Vec output(const Vec& x) const;
};

}  // namespace etnet
