#pragma once

#include <vector>

#include "privsprt/private_test.hpp"
#include "privsprt/rdp.hpp"

namespace privsprt {

// Placeholder until the shipped default is pinned; overridable everywhere.
inline constexpr uint64_t kDefaultMasterSeed = 20260822ull;

enum class EstimatorKind { Naive, Importance };
enum class ErrorKind { Type1, Type2 };

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  uint64_t n_trials = 0;
  EstimatorKind estimator = EstimatorKind::Naive;
  uint64_t censored_count = 0;
};

struct ExperimentConfig {
  HypothesisPair pair;
  NoiseSource noise;
  SprtThresholds thresholds{1.0, 1.0};
  double trunc_a = std::numeric_limits<double>::infinity();
  uint64_t t_max = 0;  // 0 = default_t_max policy
  uint64_t n_trials = 10000;
  uint64_t master_seed = kDefaultMasterSeed;
  bool record_trajectories = false;
  // Distinct contexts give independent trial streams for otherwise identical
  // configs; sweeps share a context so trials pair up across grid points.
  uint64_t stream_context = 0;

  PrivTestConfig resolve_test() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);

// Trials are addressed by (master_seed, stream_context, hypothesis, index):
// results are bit-identical for any worker count, and two configs differing
// only in noise scales or thresholds consume identical observation sequences.
std::vector<TrialOutcome> run_batch(const ExperimentConfig& cfg, Hypothesis hyp, int threads = 1);

McEstimate estimate_expected_t(const ExperimentConfig& cfg, Hypothesis hyp, int threads = 1);

// Naive Type I samples H0 and counts rejections; importance Type I samples H1
// and weights rejections by exp(-llr). Type II mirrors both. Censored trials
// contribute zero to the indicator and are reported in censored_count.
McEstimate estimate_error(const ExperimentConfig& cfg, ErrorKind which, EstimatorKind estimator,
                          int threads = 1);

struct CalibrationResult {
  SprtThresholds thresholds{1.0, 1.0};
  double est_type1 = 0.0;
  double est_type2 = 0.0;
  int probes_used = 0;
  bool converged = false;
};

// Bisection on the thresholds over importance-sampled error estimates with
// common random numbers across probes, until both estimates land within
// [target/2, 2*target] or the probe budget runs out (converged = false, best
// state returned).
CalibrationResult calibrate_thresholds(const HypothesisPair& pair, const ExperimentConfig& tmpl,
                                       double target_type1, double target_type2,
                                       uint64_t n_trials_per_probe = 10000, bool symmetric = true,
                                       int threads = 1);

struct SweepRow {
  std::string source_label;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  Hypothesis hypothesis = Hypothesis::H0;
  McEstimate expected_t;
  McEstimate error_naive;       // decision-error rate of the sampled hypothesis
  McEstimate error_importance;  // Type I from H1 batches, Type II from H0 batches
};

// One row per (noise source, grid point, hypothesis). Observation streams are
// keyed on the trial index only, so every grid point and noise source sees
// the same data.
std::vector<SweepRow> oc_asn_sweep(const HypothesisPair& pair, const ExperimentConfig& tmpl,
                                   const std::vector<NoiseSource>& sources,
                                   const std::vector<SprtThresholds>& grid,
                                   const std::vector<Hypothesis>& hyps, int threads = 1);

}  // namespace privsprt
