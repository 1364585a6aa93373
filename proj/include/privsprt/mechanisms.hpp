#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "privsprt/rng.hpp"

namespace privsprt {

enum class MechanismKind { Gaussian, Laplace, None };

// A scale of exactly 0 means pass-through: the value is returned unchanged and
// no randomness is consumed (the epsilon' = infinity regime).
struct NoiseMechanism {
  MechanismKind kind = MechanismKind::None;
  double scale = 0.0;

  static NoiseMechanism gaussian(double sigma);
  static NoiseMechanism laplace(double scale);
  static NoiseMechanism none() { return {}; }
};

double perturb(const NoiseMechanism& mech, double value, RngStream& rng);

// Standard Gaussian-mechanism calibration: sigma = sqrt(2 ln(1.25/delta)) * dq / eps.
double gaussian_sigma(double eps, double delta, double dq);

struct LaplaceScales {
  double threshold_scale;  // 2*dq/eps
  double query_scale;      // 4*dq/eps
};

// Classic sparse-vector split of the budget between the threshold noise and
// the per-query noise, for queries of sensitivity dq.
LaplaceScales laplace_scale_for_abovethresh(double eps, double dq);

// Experiment-level noise description. Either a calibrated family (resolved to
// concrete scales once the truncation level A is known) or explicit scales.
struct NoiseSource {
  MechanismKind kind = MechanismKind::None;
  bool explicit_scales = false;
  double eps = 0.0;    // epsilon' (Gaussian) or epsilon (Laplace) when calibrated
  double delta = 0.0;  // Gaussian calibration only
  double scale1 = 0.0;
  double scale2 = 0.0;

  static NoiseSource none() { return {}; }
  static NoiseSource gaussian_calibrated(double eps_prime, double delta);
  static NoiseSource gaussian_scales(double sigma1, double sigma2);
  static NoiseSource laplace_calibrated(double eps);
  static NoiseSource laplace_scales(double b1, double b2);

  // Threshold-noise and query-noise scales for truncation level A. Calibrated
  // Gaussian sources use the (eps'/2, delta) mechanisms at sensitivities 2A
  // and 4A; calibrated Laplace sources use the sparse-vector split at
  // sensitivity 2A.
  std::pair<double, double> resolve(double trunc_a) const;

  std::string label() const;
};

void to_json(nlohmann::json& j, const NoiseSource& src);
void from_json(const nlohmann::json& j, NoiseSource& src);

}  // namespace privsprt
