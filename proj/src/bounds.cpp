#include "privsprt/bounds.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace privsprt {

namespace {

constexpr int kMaxK = 64;

// 199 uniform points in (0.005, 0.995), plus the suggested candidate
// c = 1 - A^2/(2 mu) when it lands inside (0, 1).
std::vector<double> c_grid(double mu, double A) {
  std::vector<double> cs;
  cs.reserve(200);
  for (int i = 0; i < 199; ++i) cs.push_back(0.005 + i * (0.995 - 0.005) / 198.0);
  double suggested = 1.0 - A * A / (2.0 * mu);
  if (suggested > 0.0 && suggested < 1.0) cs.push_back(suggested);
  return cs;
}

double rho_of(double c, double mu, double A) {
  return 1.0 - std::exp(-(1.0 - c) * mu * mu / (2.0 * A * A));
}

void validate(double threshold, double mu, double sigma1, double sigma2) {
  if (!(threshold > 0)) throw std::invalid_argument("bound: threshold must be > 0");
  if (!(mu > 0)) throw std::invalid_argument("bound: mu must be > 0");
  if (!(sigma1 >= 0) || !(sigma2 >= 0))
    throw std::invalid_argument("bound: noise scales must be >= 0");
}

}  // namespace

BoundResult sample_size_bound(double threshold, double mu, const TruncationSpec& trunc,
                              double sigma1, double sigma2, SampleSizeSide) {
  validate(threshold, mu, sigma1, sigma2);
  const double A = trunc.a_trunc;
  const double noise_num = 3.0 * std::sqrt(2.0 * (sigma1 * sigma1 + sigma2 * sigma2));
  BoundResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (double c : c_grid(mu, A)) {
    double rho = rho_of(c, mu, A);
    double main = threshold / ((1.0 - c) * mu);
    double noise = noise_num / (4.0 * (1.0 - c) * mu);
    for (int k = 1; k <= kMaxK; ++k) {
      double partition = main / (2.0 * (k + 1)) + (k + 1) / rho;
      double value = 1.0 + main + partition + noise;
      if (value < best.value) {
        best.value = value;
        best.k_star = k;
        best.c_star = c;
        best.components = {{"one", 1.0}, {"main", main}, {"partition", partition}, {"noise", noise}};
      }
    }
  }
  return best;
}

double fixed_choice_sample_size_bound(double threshold, double mu, const TruncationSpec& trunc,
                                      double sigma1, double sigma2) {
  validate(threshold, mu, sigma1, sigma2);
  double rho = rho_of(0.5, mu, trunc.a_trunc);
  return 1.0 + 1.0 / rho + 5.0 * threshold / (2.0 * mu) +
         3.0 * std::sqrt(2.0 * (sigma1 * sigma1 + sigma2 * sigma2)) / (2.0 * mu);
}

BoundResult error_rate_bound(double threshold, double mu, const TruncationSpec& trunc,
                             double sigma1, double sigma2, ErrorSide) {
  validate(threshold, mu, sigma1, sigma2);
  const double A = trunc.a_trunc;
  const double noise_num = std::sqrt(2.0 * (sigma1 * sigma1 + sigma2 * sigma2));
  BoundResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (double c : c_grid(mu, A)) {
    double rho = rho_of(c, mu, A);
    double expo = std::exp(-2.0 * threshold * (1.0 - c) * mu / (A * A));
    double noise = noise_num / (4.0 * (1.0 - c) * mu);
    for (int k = 1; k <= kMaxK; ++k) {
      // Multiplier grouping per the final appendix display; the statement's
      // unbalanced Q1/Q2 parentheses are resolved as
      // (1 + k e^{1/(8k)} + k e^{1/(4k+3)}).
      double main = 2.0 / rho * expo;
      double partition = main * (k * std::exp(1.0 / (8.0 * k)) + k * std::exp(1.0 / (4.0 * k + 3.0)));
      double value = main + partition + noise;
      if (value < best.value) {
        best.value = value;
        best.k_star = k;
        best.c_star = c;
        best.components = {{"main", main}, {"partition", partition}, {"noise", noise}};
      }
    }
  }
  best.exceeds_one = best.value > 1.0;
  return best;
}

double fixed_choice_error_rate_bound(double threshold, double mu, const TruncationSpec& trunc,
                                     double sigma1, double sigma2) {
  validate(threshold, mu, sigma1, sigma2);
  const double A = trunc.a_trunc;
  double rho = rho_of(0.5, mu, A);
  double expo = std::exp(-threshold * mu / (A * A));  // (1-c) = 1/2
  double mult = 1.0 + std::exp(1.0 / 8.0) + std::exp(1.0 / 7.0);
  return 2.0 / rho * expo * mult +
         std::sqrt(2.0 * (sigma1 * sigma1 + sigma2 * sigma2)) / (2.0 * mu);
}

}  // namespace privsprt
