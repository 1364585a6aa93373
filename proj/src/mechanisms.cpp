#include "privsprt/mechanisms.hpp"

#include <cmath>
#include <stdexcept>

namespace privsprt {

namespace {

void check_scale(double s, const char* what) {
  if (!(s >= 0) || !std::isfinite(s)) throw std::invalid_argument(std::string(what) + ": scale must be finite and >= 0");
}

void check_eps(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be > 0");
}

void check_delta(double delta) {
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
}

}  // namespace

NoiseMechanism NoiseMechanism::gaussian(double sigma) {
  check_scale(sigma, "gaussian");
  return {MechanismKind::Gaussian, sigma};
}

NoiseMechanism NoiseMechanism::laplace(double scale) {
  check_scale(scale, "laplace");
  return {MechanismKind::Laplace, scale};
}

double perturb(const NoiseMechanism& mech, double value, RngStream& rng) {
  if (mech.scale == 0.0 || mech.kind == MechanismKind::None) return value;
  switch (mech.kind) {
    case MechanismKind::Gaussian:
      return value + mech.scale * rng.next_gaussian();
    case MechanismKind::Laplace:
      return value + rng.next_laplace(mech.scale);
    default:
      return value;
  }
}

double gaussian_sigma(double eps, double delta, double dq) {
  check_eps(eps);
  check_delta(delta);
  if (!(dq > 0)) throw std::invalid_argument("dq must be > 0");
  return std::sqrt(2.0 * std::log(1.25 / delta)) * dq / eps;
}

LaplaceScales laplace_scale_for_abovethresh(double eps, double dq) {
  check_eps(eps);
  if (!(dq > 0)) throw std::invalid_argument("dq must be > 0");
  return {2.0 * dq / eps, 4.0 * dq / eps};
}

NoiseSource NoiseSource::gaussian_calibrated(double eps_prime, double delta) {
  check_eps(eps_prime);
  check_delta(delta);
  NoiseSource s;
  s.kind = MechanismKind::Gaussian;
  s.eps = eps_prime;
  s.delta = delta;
  return s;
}

NoiseSource NoiseSource::gaussian_scales(double sigma1, double sigma2) {
  check_scale(sigma1, "sigma1");
  check_scale(sigma2, "sigma2");
  NoiseSource s;
  s.kind = MechanismKind::Gaussian;
  s.explicit_scales = true;
  s.scale1 = sigma1;
  s.scale2 = sigma2;
  return s;
}

NoiseSource NoiseSource::laplace_calibrated(double eps) {
  check_eps(eps);
  NoiseSource s;
  s.kind = MechanismKind::Laplace;
  s.eps = eps;
  return s;
}

NoiseSource NoiseSource::laplace_scales(double b1, double b2) {
  check_scale(b1, "b1");
  check_scale(b2, "b2");
  NoiseSource s;
  s.kind = MechanismKind::Laplace;
  s.explicit_scales = true;
  s.scale1 = b1;
  s.scale2 = b2;
  return s;
}

std::pair<double, double> NoiseSource::resolve(double trunc_a) const {
  if (kind == MechanismKind::None) return {0.0, 0.0};
  if (explicit_scales) return {scale1, scale2};
  if (!(trunc_a > 0) || !std::isfinite(trunc_a))
    throw std::invalid_argument("NoiseSource: calibrated sources need a finite truncation level");
  if (kind == MechanismKind::Gaussian) {
    return {gaussian_sigma(eps / 2.0, delta, 2.0 * trunc_a),
            gaussian_sigma(eps / 2.0, delta, 4.0 * trunc_a)};
  }
  LaplaceScales sc = laplace_scale_for_abovethresh(eps, 2.0 * trunc_a);
  return {sc.threshold_scale, sc.query_scale};
}

std::string NoiseSource::label() const {
  switch (kind) {
    case MechanismKind::None:
      return "none";
    case MechanismKind::Gaussian:
      return explicit_scales ? "gaussian(sigma1=" + std::to_string(scale1) +
                                   ",sigma2=" + std::to_string(scale2) + ")"
                             : "gaussian(eps'=" + std::to_string(eps) + ")";
    case MechanismKind::Laplace:
      return explicit_scales ? "laplace(b1=" + std::to_string(scale1) +
                                   ",b2=" + std::to_string(scale2) + ")"
                             : "laplace(eps=" + std::to_string(eps) + ")";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const NoiseSource& src) {
  switch (src.kind) {
    case MechanismKind::None:
      j = {{"mechanism", "none"}};
      return;
    case MechanismKind::Gaussian:
      if (src.explicit_scales)
        j = {{"mechanism", "gaussian"}, {"sigma1", src.scale1}, {"sigma2", src.scale2}};
      else
        j = {{"mechanism", "gaussian"}, {"epsilon_prime", src.eps}, {"delta", src.delta}};
      return;
    case MechanismKind::Laplace:
      if (src.explicit_scales)
        j = {{"mechanism", "laplace"}, {"b1", src.scale1}, {"b2", src.scale2}};
      else
        j = {{"mechanism", "laplace"}, {"epsilon", src.eps}};
      return;
  }
}

void from_json(const nlohmann::json& j, NoiseSource& src) {
  if (j.contains("sigma1") || j.contains("sigma2")) {
    src = NoiseSource::gaussian_scales(j.at("sigma1").get<double>(), j.at("sigma2").get<double>());
    return;
  }
  std::string mech = j.value("mechanism", "gaussian");
  if (mech == "none") {
    src = NoiseSource::none();
  } else if (mech == "gaussian") {
    src = NoiseSource::gaussian_calibrated(j.at("epsilon_prime").get<double>(),
                                           j.at("delta").get<double>());
  } else if (mech == "laplace") {
    if (j.contains("b1") || j.contains("b2"))
      src = NoiseSource::laplace_scales(j.at("b1").get<double>(), j.at("b2").get<double>());
    else
      src = NoiseSource::laplace_calibrated(j.at("epsilon").get<double>());
  } else {
    throw std::invalid_argument("NoiseSource: unknown mechanism '" + mech + "'");
  }
}

}  // namespace privsprt
