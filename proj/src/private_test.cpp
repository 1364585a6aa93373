#include "privsprt/private_test.hpp"

#include <algorithm>
#include <cmath>

namespace privsprt {

namespace {

NoiseMechanism branch_mechanism(const PrivTestConfig& cfg, double scale) {
  switch (cfg.mode) {
    case TestMode::GaussianPrivSprt:
      return NoiseMechanism::gaussian(scale);
    case TestMode::LaplaceAboveThresh:
      return NoiseMechanism::laplace(scale);
    case TestMode::NonPrivate:
      return NoiseMechanism::none();
  }
  return NoiseMechanism::none();
}

}  // namespace

uint64_t default_t_max(const PrivTestConfig& cfg, const HypothesisPair& pair) {
  WaldExpected w = wald_expected_t(cfg.thresholds, pair);
  double horizon = 50.0 * std::max({w.e0, w.e1, 1.0});
  return std::max<uint64_t>(1000, static_cast<uint64_t>(std::ceil(horizon)));
}

AboveThreshResult gen_above_thresh(const std::function<double(uint64_t)>& query_stream,
                                   double threshold, const NoiseMechanism& m1,
                                   const NoiseMechanism& m2, RngStream& rng, uint64_t t_max) {
  if (t_max < 1) throw std::invalid_argument("gen_above_thresh: t_max must be >= 1");
  AboveThreshResult res;
  double h_hat = perturb(m1, threshold, rng);
  for (uint64_t t = 1; t <= t_max; ++t) {
    double q_hat = perturb(m2, query_stream(t), rng);
    if (q_hat > h_hat) {
      res.answers.push_back(true);
      res.stop_index = t;
      return res;
    }
    res.answers.push_back(false);
  }
  return res;
}

TrialOutcome run_private_test(const HypothesisPair& pair, const PrivTestConfig& cfg,
                              Hypothesis hyp, RngStream& rng, bool record_trajectory) {
  const uint64_t t_max = cfg.t_max ? cfg.t_max : default_t_max(cfg, pair);
  const bool truncate = std::isfinite(cfg.trunc_a);
  const NoiseMechanism m1 = branch_mechanism(cfg, cfg.scale1);
  const NoiseMechanism m2 = branch_mechanism(cfg, cfg.scale2);

  TrialOutcome out;
  if (record_trajectory) out.trajectory.emplace();

  // One threshold draw per branch, then two independent query draws per step.
  const double b_hat = perturb(m1, cfg.thresholds.b, rng);
  const double neg_a_hat = perturb(m1, -cfg.thresholds.a, rng);

  double ell_trunc = 0.0;  // decision statistic l_t(A)
  double ell_raw = 0.0;    // untruncated llr, kept for importance weights
  for (uint64_t t = 1; t <= t_max; ++t) {
    double x = sample(pair, hyp, rng);
    double step = llr(pair, x);
    ell_raw += step;
    ell_trunc += truncate ? std::clamp(step, -cfg.trunc_a, cfg.trunc_a) : step;
    if (record_trajectory) out.trajectory->push_back(ell_trunc);

    double ell_b = perturb(m2, ell_trunc, rng);
    double ell_a = perturb(m2, ell_trunc, rng);
    if (ell_b > b_hat) {
      out.decision = Decision::RejectH0;
      out.t = t;
      out.final_llr = ell_raw;
      return out;
    }
    if (ell_a < neg_a_hat) {
      out.decision = Decision::AcceptH0;
      out.t = t;
      out.final_llr = ell_raw;
      return out;
    }
  }
  out.decision = Decision::Censored;
  out.t = t_max;
  out.final_llr = ell_raw;
  return out;
}

TrialOutcome run_privsprt(const HypothesisPair& pair, const PrivTestConfig& cfg, Hypothesis hyp,
                          RngStream& rng, bool record_trajectory) {
  if (cfg.mode != TestMode::GaussianPrivSprt)
    throw std::invalid_argument("run_privsprt: config mode must be GaussianPrivSprt");
  return run_private_test(pair, cfg, hyp, rng, record_trajectory);
}

TrialOutcome run_laplace_abovethresh_test(const HypothesisPair& pair, const PrivTestConfig& cfg,
                                          Hypothesis hyp, RngStream& rng,
                                          bool record_trajectory) {
  if (cfg.mode != TestMode::LaplaceAboveThresh)
    throw std::invalid_argument("run_laplace_abovethresh_test: config mode must be LaplaceAboveThresh");
  return run_private_test(pair, cfg, hyp, rng, record_trajectory);
}

}  // namespace privsprt
