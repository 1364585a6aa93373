#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "privsprt/models.hpp"

namespace privsprt {

struct SprtThresholds {
  double a;  // lower boundary is -a
  double b;  // upper boundary
  SprtThresholds(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("SprtThresholds: a and b must be finite and > 0");
  }
};

enum class Decision { AcceptH0, RejectH0, Censored };

struct TrialOutcome {
  Decision decision = Decision::Censored;
  uint64_t t = 0;
  // Raw (untruncated) cumulative llr at the stopping time; importance weights
  // are derived from it in log space.
  double final_llr = 0.0;
  std::optional<std::vector<double>> trajectory;

  // Product of f0(x_i)/f1(x_i) over the observed samples.
  double importance_weight() const { return std::exp(-final_llr); }
};

constexpr uint64_t kDefaultTMax = 1'000'000;

// Classic SPRT: accumulate raw llr, stop when it leaves (-a, b). Reject iff
// the upper boundary was hit.
TrialOutcome run_sprt(const HypothesisPair& pair, const SprtThresholds& thr, Hypothesis hyp,
                      RngStream& rng, uint64_t t_max = kDefaultTMax,
                      bool record_trajectory = false);

struct WaldErrors {
  double type1;
  double type2;
};

struct WaldExpected {
  double e0;
  double e1;
};

// Boundary-crossing error approximations that ignore overshoot:
// type1 = (1-e^-a)/(e^b-e^-a), type2 = e^-a(e^b-1)/(e^b-e^-a).
WaldErrors wald_error_approx(const SprtThresholds& thr);

// Expected stopping times from the same approximation:
// e0 = (a(1-type1) - b*type1)/KL(f0||f1), e1 = (b(1-type2) - a*type2)/KL(f1||f0).
// Throws std::domain_error when either KL divergence is not strictly positive.
WaldExpected wald_expected_t(const SprtThresholds& thr, const HypothesisPair& pair);

}  // namespace privsprt
