#pragma once

namespace mpdec {

/// Regularized quotient n / d for non-negative denominators that may approach zero.
///
/// Returns 0 when d < eps, n / d when d * d >= eps, and 2 d n / (d^2 + eps) in between,
/// which tends smoothly to zero with d.
constexpr double patankar_division(double n, double d, double eps) {
  if (d < eps) return 0.0;
  const double d2 = d * d;
  if (d2 >= eps) return n / d;
  return 2.0 * d * n / (d2 + eps);
}

}  // namespace mpdec
