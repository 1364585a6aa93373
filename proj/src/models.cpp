#include "privsprt/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace privsprt {

namespace {

constexpr uint64_t kInternalMcSeed = 0x7a3f9d2c51e648b1ull;
constexpr uint64_t kDriftPath = 11;
constexpr uint64_t kKlPath = 12;
constexpr int kMcSamples = 1'000'000;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// E[clip(N(m, s^2), [-A, A])].
double clipped_normal_mean(double m, double s, double A) {
  double alpha = (-A - m) / s;
  double beta = (A - m) / s;
  double mid = m * (normal_cdf(beta) - normal_cdf(alpha)) - s * (normal_pdf(beta) - normal_pdf(alpha));
  return -A * normal_cdf(alpha) + A * (1.0 - normal_cdf(beta)) + mid;
}

struct McMoment {
  double mean;
  double se;
};

McMoment mc_mean(const HypothesisPair& pair, Hypothesis hyp, uint64_t path,
                 const std::function<double(double)>& f) {
  RngStream rng(kInternalMcSeed, {path, hyp == Hypothesis::H0 ? 0ull : 1ull});
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < kMcSamples; ++i) {
    double v = f(sample(pair, hyp, rng));
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / kMcSamples;
  double var = std::max(0.0, sumsq / kMcSamples - mean * mean);
  return {mean, std::sqrt(var / kMcSamples)};
}

}  // namespace

HypothesisPair HypothesisPair::bernoulli(double theta0, double theta1) {
  if (!(theta0 > 0 && theta0 < 1) || !(theta1 > 0 && theta1 < 1))
    throw std::invalid_argument("bernoulli: parameters must lie in (0, 1)");
  if (theta0 == theta1) throw std::invalid_argument("bernoulli: theta0 must differ from theta1");
  HypothesisPair p;
  p.kind = PairKind::Bernoulli;
  p.theta0 = theta0;
  p.theta1 = theta1;
  return p;
}

HypothesisPair HypothesisPair::gaussian_mean(double mu0, double mu1) {
  if (!std::isfinite(mu0) || !std::isfinite(mu1))
    throw std::invalid_argument("gaussian_mean: means must be finite");
  if (mu0 == mu1) throw std::invalid_argument("gaussian_mean: means must differ");
  HypothesisPair p;
  p.kind = PairKind::GaussianMean;
  p.mu0_ = mu0;
  p.mu1_ = mu1;
  return p;
}

HypothesisPair HypothesisPair::custom(std::function<double(double)> log_f0,
                                      std::function<double(double)> log_f1,
                                      std::function<double(Hypothesis, RngStream&)> sampler) {
  HypothesisPair p;
  p.kind = PairKind::Custom;
  p.log_f0 = std::move(log_f0);
  p.log_f1 = std::move(log_f1);
  p.sampler = std::move(sampler);
  return p;
}

bool HypothesisPair::has_densities() const {
  return kind != PairKind::Custom || (log_f0 && log_f1);
}

bool HypothesisPair::has_sampler() const {
  return kind != PairKind::Custom || static_cast<bool>(sampler);
}

std::string HypothesisPair::describe() const {
  switch (kind) {
    case PairKind::Bernoulli:
      return "bernoulli(" + std::to_string(theta0) + "," + std::to_string(theta1) + ")";
    case PairKind::GaussianMean:
      return "gaussian_mean(" + std::to_string(mu0_) + "," + std::to_string(mu1_) + ")";
    default:
      return "custom";
  }
}

double llr(const HypothesisPair& pair, double x) {
  double v = 0.0;
  switch (pair.kind) {
    case PairKind::Bernoulli:
      if (x == 1.0)
        v = std::log(pair.theta1 / pair.theta0);
      else if (x == 0.0)
        v = std::log((1.0 - pair.theta1) / (1.0 - pair.theta0));
      else
        throw std::domain_error("llr: Bernoulli observation must be 0 or 1");
      break;
    case PairKind::GaussianMean:
      v = (pair.mu1_ - pair.mu0_) * x - 0.5 * (pair.mu1_ * pair.mu1_ - pair.mu0_ * pair.mu0_);
      break;
    case PairKind::Custom:
      if (!pair.has_densities()) throw UnsupportedError("llr: custom pair lacks log densities");
      v = pair.log_f1(x) - pair.log_f0(x);
      break;
  }
  if (!std::isfinite(v)) throw std::domain_error("llr: observation outside joint support");
  return v;
}

double truncated_llr(const HypothesisPair& pair, double x, const TruncationSpec& trunc) {
  return std::clamp(llr(pair, x), -trunc.a_trunc, trunc.a_trunc);
}

double cumulative_truncated_llr(const HypothesisPair& pair, const std::vector<double>& xs,
                                const TruncationSpec& trunc) {
  double s = 0.0;
  for (double x : xs) s += truncated_llr(pair, x, trunc);
  return s;
}

DriftConstants drift_constants(const HypothesisPair& pair, const TruncationSpec& trunc) {
  const double A = trunc.a_trunc;
  switch (pair.kind) {
    case PairKind::Bernoulli: {
      double c1 = std::clamp(std::log(pair.theta1 / pair.theta0), -A, A);
      double c0 = std::clamp(std::log((1.0 - pair.theta1) / (1.0 - pair.theta0)), -A, A);
      double mu1 = pair.theta1 * c1 + (1.0 - pair.theta1) * c0;
      double mu0 = -(pair.theta0 * c1 + (1.0 - pair.theta0) * c0);
      return {mu0, mu1};
    }
    case PairKind::GaussianMean: {
      // The per-observation llr is N(+s^2/2, s^2) under H1 and N(-s^2/2, s^2)
      // under H0, with s = |mu1 - mu0|.
      double s = std::abs(pair.mu1_ - pair.mu0_);
      double m = 0.5 * s * s;
      double mu1 = clipped_normal_mean(m, s, A);
      double mu0 = -clipped_normal_mean(-m, s, A);
      return {mu0, mu1};
    }
    case PairKind::Custom: {
      if (!pair.has_sampler()) throw UnsupportedError("drift_constants: custom pair lacks sampler");
      auto clip = [&](double x) { return truncated_llr(pair, x, trunc); };
      McMoment m1 = mc_mean(pair, Hypothesis::H1, kDriftPath, clip);
      McMoment m0 = mc_mean(pair, Hypothesis::H0, kDriftPath, clip);
      return {-m0.mean, m1.mean, m0.se, m1.se};
    }
  }
  throw std::logic_error("drift_constants: unreachable");
}

double kl_divergence(const HypothesisPair& pair, KlDirection direction) {
  switch (pair.kind) {
    case PairKind::Bernoulli: {
      auto kl = [](double p, double q) {
        return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
      };
      return direction == KlDirection::Forward ? kl(pair.theta1, pair.theta0)
                                               : kl(pair.theta0, pair.theta1);
    }
    case PairKind::GaussianMean: {
      double d = pair.mu1_ - pair.mu0_;
      return 0.5 * d * d;
    }
    case PairKind::Custom: {
      if (!pair.has_sampler() || !pair.has_densities())
        throw UnsupportedError("kl_divergence: custom pair lacks sampler or densities");
      Hypothesis hyp = direction == KlDirection::Forward ? Hypothesis::H1 : Hypothesis::H0;
      double sign = direction == KlDirection::Forward ? 1.0 : -1.0;
      return mc_mean(pair, hyp, kKlPath, [&](double x) { return sign * llr(pair, x); }).mean;
    }
  }
  throw std::logic_error("kl_divergence: unreachable");
}

double sensitivity(const HypothesisPair& pair, const TruncationSpec& trunc) {
  double cap = 2.0 * trunc.a_trunc;
  if (pair.kind == PairKind::Bernoulli) {
    double l1 = std::log(pair.theta1 / pair.theta0);
    double l0 = std::log((1.0 - pair.theta1) / (1.0 - pair.theta0));
    return std::min(std::abs(l1 - l0), cap);
  }
  return cap;
}

double sample(const HypothesisPair& pair, Hypothesis hyp, RngStream& rng) {
  switch (pair.kind) {
    case PairKind::Bernoulli: {
      double theta = hyp == Hypothesis::H0 ? pair.theta0 : pair.theta1;
      return rng.next_unit() < theta ? 1.0 : 0.0;
    }
    case PairKind::GaussianMean: {
      double mean = hyp == Hypothesis::H0 ? pair.mu0_ : pair.mu1_;
      return mean + rng.next_gaussian();
    }
    case PairKind::Custom:
      if (!pair.has_sampler()) throw UnsupportedError("sample: custom pair lacks sampler");
      return pair.sampler(hyp, rng);
  }
  throw std::logic_error("sample: unreachable");
}

void to_json(nlohmann::json& j, const HypothesisPair& pair) {
  switch (pair.kind) {
    case PairKind::Bernoulli:
      j = {{"kind", "bernoulli"}, {"theta0", pair.theta0}, {"theta1", pair.theta1}};
      break;
    case PairKind::GaussianMean:
      j = {{"kind", "gaussian_mean"}, {"mu0", pair.mu0_}, {"mu1", pair.mu1_}};
      break;
    case PairKind::Custom:
      throw std::invalid_argument("HypothesisPair: custom pairs are not serializable");
  }
}

void from_json(const nlohmann::json& j, HypothesisPair& pair) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli") {
    pair = HypothesisPair::bernoulli(j.at("theta0").get<double>(), j.at("theta1").get<double>());
  } else if (kind == "gaussian_mean") {
    pair = HypothesisPair::gaussian_mean(j.at("mu0").get<double>(), j.at("mu1").get<double>());
  } else {
    throw std::invalid_argument("HypothesisPair: unknown kind '" + kind + "'");
  }
}

}  // namespace privsprt
