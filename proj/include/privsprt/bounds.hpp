#pragma once

#include <map>
#include <string>

#include "privsprt/models.hpp"

namespace privsprt {

struct BoundResult {
  double value;
  int k_star;
  double c_star;
  // Named breakdown at (k_star, c_star); entries sum to value exactly.
  std::map<std::string, double> components;
  bool exceeds_one = false;  // meaningful for error bounds only
};

enum class SampleSizeSide { H0Side, H1Side };
enum class ErrorSide { Type1, Type2 };

// Expected-sample-size bound, minimized over k in {1..64} and a c grid:
//   1 + min_{k,c} [ thr/((1-c)mu) + thr/(2(k+1)(1-c)mu) + (k+1)/rho
//                   + 3 sqrt(2(sigma1^2+sigma2^2))/(4(1-c)mu) ],
// rho = 1 - exp(-(1-c) mu^2/(2A^2)). Pass (a, mu0) for the H0 side and
// (b, mu1) for the H1 side.
BoundResult sample_size_bound(double threshold, double mu, const TruncationSpec& trunc,
                              double sigma1, double sigma2,
                              SampleSizeSide side = SampleSizeSide::H1Side);

// The interpretation display with k=1, c=1/2 (which keeps a single rho^-1
// where the full form at k=1 carries (k+1) = 2 of them):
//   1 + 1/rho + 5 thr/(2 mu) + 3 sqrt(2(sigma1^2+sigma2^2))/(2 mu).
double fixed_choice_sample_size_bound(double threshold, double mu, const TruncationSpec& trunc,
                                      double sigma1, double sigma2);

// Error bound, minimized over the same grids:
//   min_{k,c} [ 2/rho * exp(-2 thr (1-c) mu / A^2) * (1 + k e^{1/(8k)} + k e^{1/(4k+3)})
//               + sqrt(2(sigma1^2+sigma2^2))/(4(1-c)mu) ].
// Pass (b, mu0) for Type I and (a, mu1) for Type II. Values above 1 are
// reported as-is with exceeds_one set.
BoundResult error_rate_bound(double threshold, double mu, const TruncationSpec& trunc,
                             double sigma1, double sigma2, ErrorSide side = ErrorSide::Type1);

// The same error display pinned at k=1, c=1/2.
double fixed_choice_error_rate_bound(double threshold, double mu, const TruncationSpec& trunc,
                                     double sigma1, double sigma2);

}  // namespace privsprt
