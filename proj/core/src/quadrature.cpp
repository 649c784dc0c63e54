#include "mpdec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace mpdec {
namespace {

// Legendre P_n and P_{n-1} at x by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

constexpr int kNewtonIterations = 100;

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Roots on [-1, 1], descending initial guesses.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < kNewtonIterations; ++it) {
      const auto [p, p1] = legendre_pair(n, x);
      dp = n * (x * p - p1) / (x * x - 1.0);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    {
      const auto [p, p1] = legendre_pair(n, x);
      dp = n * (x * p - p1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map to [-1/2, 1/2]; store ascending.
    rule.nodes[n - 1 - i] = 0.5 * x;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  // Symmetrize against rounding in the Newton solve.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<double> gauss_lobatto_nodes(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_nodes: need at least two points");
  const int order = n - 1;  // interior nodes are roots of P'_order
  std::vector<double> x(n);
  x.front() = -1.0;
  x.back() = 1.0;
  for (int k = 1; k < order; ++k) {
    double t = -std::cos(std::numbers::pi * k / order);
    for (int it = 0; it < kNewtonIterations; ++it) {
      const auto [p, p1] = legendre_pair(order, t);
      const double dp = order * (t * p - p1) / (t * t - 1.0);
      const double d2p = (2.0 * t * dp - order * (order + 1.0) * p) / (1.0 - t * t);
      const double step = dp / d2p;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[k] = t;
  }
  for (int k = 0; k < n / 2; ++k) {
    const double s = 0.5 * (x[n - 1 - k] - x[k]);
    x[k] = -s;
    x[n - 1 - k] = s;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  std::vector<double> nodes(n);
  std::transform(x.begin(), x.end(), nodes.begin(), [](double t) { return 0.5 * (t + 1.0); });
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  return nodes;
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::lagrange_basis(std::span<const double> nodes, std::size_t k) {
  Polynomial result = constant(1.0);
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    if (l == k) continue;
    const double denom = nodes[k] - nodes[l];
    result = result * Polynomial({-nodes[l] / denom, 1.0 / denom});
  }
  return result;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return constant(0.0);
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

double Polynomial::integrate(double a, double b) const {
  const Polynomial prim = antiderivative();
  return prim(b) - prim(a);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c = p.coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

}  // namespace mpdec
