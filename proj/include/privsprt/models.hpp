#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "privsprt/rng.hpp"

namespace privsprt {

enum class Hypothesis { H0, H1 };

enum class PairKind { Bernoulli, GaussianMean, Custom };

// Requested operation needs a capability (sampler, closed-form density) the
// given pair does not carry.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncation level A for the clipped log-likelihood ratio; must be positive
// and finite wherever truncation is actually applied.
struct TruncationSpec {
  double a_trunc;
  explicit TruncationSpec(double a) : a_trunc(a) {
    if (!(a > 0) || !std::isfinite(a))
      throw std::invalid_argument("TruncationSpec: a_trunc must be in (0, inf)");
  }
};

// mu0 = -E_0[clipped llr], mu1 = E_1[clipped llr]. Standard errors are zero
// for closed forms and report the Monte Carlo uncertainty for Custom pairs.
struct DriftConstants {
  double mu0;
  double mu1;
  double se0 = 0.0;
  double se1 = 0.0;
};

enum class KlDirection { Forward, Reverse };  // Forward = KL(f1 || f0)

struct HypothesisPair {
  PairKind kind = PairKind::Custom;

  // Bernoulli: P(x=1) under H0 / H1.
  double theta0 = 0.0, theta1 = 0.0;

  // GaussianMean: N(mu0_, 1) vs N(mu1_, 1).
  double mu0_ = 0.0, mu1_ = 0.0;

  // Custom: log densities required for llr work; sampler optional.
  std::function<double(double)> log_f0, log_f1;
  std::function<double(Hypothesis, RngStream&)> sampler;

  static HypothesisPair bernoulli(double theta0, double theta1);
  static HypothesisPair gaussian_mean(double mu0, double mu1);
  static HypothesisPair custom(std::function<double(double)> log_f0,
                               std::function<double(double)> log_f1,
                               std::function<double(Hypothesis, RngStream&)> sampler = nullptr);

  bool has_densities() const;
  bool has_sampler() const;
  std::string describe() const;
};

// log f1(x) - log f0(x); throws std::domain_error when x lies outside the
// joint support (non-finite ratio).
double llr(const HypothesisPair& pair, double x);

// llr clipped to [-A, A]; boundary values pass through unchanged.
double truncated_llr(const HypothesisPair& pair, double x, const TruncationSpec& trunc);

double cumulative_truncated_llr(const HypothesisPair& pair, const std::vector<double>& xs,
                                const TruncationSpec& trunc);

// Closed form for Bernoulli and GaussianMean; Monte Carlo (1e6 draws, fixed
// internal stream) for Custom pairs with a sampler.
DriftConstants drift_constants(const HypothesisPair& pair, const TruncationSpec& trunc);

// Forward = KL(f1||f0), Reverse = KL(f0||f1). Closed form for the built-in
// kinds, Monte Carlo for Custom.
double kl_divergence(const HypothesisPair& pair, KlDirection direction);

// min(raw llr range, 2A). The Gaussian raw range is unbounded, so 2A exactly;
// Custom pairs are treated as unbounded as well.
double sensitivity(const HypothesisPair& pair, const TruncationSpec& trunc);

double sample(const HypothesisPair& pair, Hypothesis hyp, RngStream& rng);

void to_json(nlohmann::json& j, const HypothesisPair& pair);
void from_json(const nlohmann::json& j, HypothesisPair& pair);

}  // namespace privsprt
