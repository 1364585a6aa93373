#include "privsprt/sprt.hpp"

#include <cmath>

namespace privsprt {

TrialOutcome run_sprt(const HypothesisPair& pair, const SprtThresholds& thr, Hypothesis hyp,
                      RngStream& rng, uint64_t t_max, bool record_trajectory) {
  if (t_max < 1) throw std::invalid_argument("run_sprt: t_max must be >= 1");
  TrialOutcome out;
  if (record_trajectory) out.trajectory.emplace();
  double ell = 0.0;
  for (uint64_t t = 1; t <= t_max; ++t) {
    ell += llr(pair, sample(pair, hyp, rng));
    if (record_trajectory) out.trajectory->push_back(ell);
    if (ell >= thr.b || ell <= -thr.a) {
      out.decision = ell >= thr.b ? Decision::RejectH0 : Decision::AcceptH0;
      out.t = t;
      out.final_llr = ell;
      return out;
    }
  }
  out.decision = Decision::Censored;
  out.t = t_max;
  out.final_llr = ell;
  return out;
}

WaldErrors wald_error_approx(const SprtThresholds& thr) {
  double eb = std::exp(thr.b);
  double ema = std::exp(-thr.a);
  double denom = eb - ema;
  return {(1.0 - ema) / denom, ema * (eb - 1.0) / denom};
}

WaldExpected wald_expected_t(const SprtThresholds& thr, const HypothesisPair& pair) {
  double kl_reverse = kl_divergence(pair, KlDirection::Reverse);  // KL(f0||f1)
  double kl_forward = kl_divergence(pair, KlDirection::Forward);  // KL(f1||f0)
  if (!(kl_reverse > 0) || !(kl_forward > 0))
    throw std::domain_error("wald_expected_t: degenerate pair (non-positive KL divergence)");
  WaldErrors err = wald_error_approx(thr);
  double e0 = (thr.a * (1.0 - err.type1) - thr.b * err.type1) / kl_reverse;
  double e1 = (thr.b * (1.0 - err.type2) - thr.a * err.type2) / kl_forward;
  return {e0, e1};
}

}  // namespace privsprt
