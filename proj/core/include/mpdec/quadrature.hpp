#pragma once

#include <span>
#include <vector>

namespace mpdec {

/// Quadrature rule on a reference interval. Weights sum to the interval length.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1/2, 1/2] (weights sum to 1), nodes ascending.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Lobatto nodes on [0, 1], including both endpoints, ascending.
std::vector<double> gauss_lobatto_nodes(int n);

/// Dense univariate polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// Lagrange basis polynomial for node k of `nodes`.
  static Polynomial lagrange_basis(std::span<const double> nodes, std::size_t k);

  double operator()(double x) const;
  Polynomial derivative() const;
  Polynomial antiderivative() const;
  double integrate(double a, double b) const;

  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

}  // namespace mpdec
