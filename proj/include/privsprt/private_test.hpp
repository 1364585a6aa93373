#pragma once

#include <optional>

#include "privsprt/mechanisms.hpp"
#include "privsprt/sprt.hpp"

namespace privsprt {

enum class TestMode { NonPrivate, GaussianPrivSprt, LaplaceAboveThresh };

struct PrivTestConfig {
  SprtThresholds thresholds{1.0, 1.0};
  double trunc_a = std::numeric_limits<double>::infinity();  // infinity = no truncation
  double scale1 = 0.0;  // threshold noise (sigma1 or Laplace b1)
  double scale2 = 0.0;  // query noise (sigma2 or Laplace b2)
  uint64_t t_max = 0;   // 0 = derive via default_t_max
  TestMode mode = TestMode::NonPrivate;
};

// Default censoring horizon: 50x the larger Wald expected sample size, at
// least 1000. Uses the untruncated Wald values, which upper-bound the private
// test's scale for every configuration in scope.
uint64_t default_t_max(const PrivTestConfig& cfg, const HypothesisPair& pair);

struct AboveThreshResult {
  std::optional<uint64_t> stop_index;  // empty = t_max exhausted without a top
  std::vector<bool> answers;           // false = bottom, true = top (final entry)
};

// Generalized above-noisy-threshold: draw H_hat = m1(threshold) once, then per
// query q_t compare m2(q_t) > H_hat; halt on the first top.
AboveThreshResult gen_above_thresh(const std::function<double(uint64_t)>& query_stream,
                                   double threshold, const NoiseMechanism& m1,
                                   const NoiseMechanism& m2, RngStream& rng, uint64_t t_max);

// Two parallel above-threshold tests on the truncated llr statistic:
// b_hat and -a_hat are drawn once with threshold noise, each step perturbs
// l_t(A) twice independently with query noise, rejects when the b-branch
// fires, else accepts when the a-branch fires. Ties go to reject (the
// branches are evaluated in that order). The rng serves observation and noise
// draws for the whole trial.
TrialOutcome run_private_test(const HypothesisPair& pair, const PrivTestConfig& cfg,
                              Hypothesis hyp, RngStream& rng, bool record_trajectory = false);

// Mode-checked wrappers.
TrialOutcome run_privsprt(const HypothesisPair& pair, const PrivTestConfig& cfg, Hypothesis hyp,
                          RngStream& rng, bool record_trajectory = false);
TrialOutcome run_laplace_abovethresh_test(const HypothesisPair& pair, const PrivTestConfig& cfg,
                                          Hypothesis hyp, RngStream& rng,
                                          bool record_trajectory = false);

}  // namespace privsprt
