#pragma once

#include <vector>

namespace dmt {

/// Eigenvalue decay exponents of a Gram matrix at a given SNR: the j-th
/// eigenvalue is SNR^(-alpha_j). Components are sorted nonincreasing; a
/// zero eigenvalue is represented by +infinity.
struct ExponentVector {
  std::vector<double> alphas;  // nonincreasing, length min(m, n)
  int m = 0;                   // matrix shape the exponents describe
  int n = 0;

  ExponentVector() = default;
  ExponentVector(std::vector<double> alphas, int m, int n);
};

/// Degrees-of-freedom functional: sum_j max(0, 1 - alpha_j).
double s_value(const ExponentVector& alpha);

/// Probability exponent of an exponent configuration: sum_j w_j * alpha_j
/// with w_j = 2j - 1 + |m - n| (j = 1-based), smallest weight paired with
/// the largest alpha.
double exponent_weight(const ExponentVector& alpha);

}  // namespace dmt
