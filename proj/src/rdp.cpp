#include "privsprt/rdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace privsprt {

namespace {

constexpr uint64_t kTaTbSeed = 0x03c2f1a96d84b25eull;
constexpr double kInf = std::numeric_limits<double>::infinity();

StoppingMoment bracket_moment(double threshold, double rho, double mu, double sigma1,
                              double sigma2, double gamma, int n, uint64_t stream_tag) {
  auto bracket = [&](double z) {
    double v = 1.0 + 1.0 / rho + (5.0 * (threshold + z) + 3.0 * std::numbers::sqrt2 * sigma2) /
                                     (2.0 * mu);
    // The bracket bounds a conditional expected stopping time, so it is never
    // below 1; large negative threshold-noise draws would otherwise make the
    // moment meaningless.
    return std::pow(std::max(v, 1.0), gamma);
  };
  if (sigma1 == 0.0) return {gamma, bracket(0.0), 0.0};
  RngStream rng(kTaTbSeed, {stream_tag});
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = bracket(sigma1 * rng.next_gaussian());
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean);
  return {gamma, mean, std::sqrt(var / n)};
}

}  // namespace

RdpCurve zero_rdp_curve() {
  return {[](double) { return 0.0; }, "zero", true};
}

RdpCurve constant_rdp_curve(double eps) {
  if (!(eps >= 0)) throw std::invalid_argument("constant_rdp_curve: eps must be >= 0");
  return {[eps](double) { return eps; }, "constant(" + std::to_string(eps) + ")", true};
}

RdpCurve gaussian_rdp_curve(double sigma, double dq) {
  if (!(sigma > 0) || !(dq > 0))
    throw std::invalid_argument("gaussian_rdp_curve: sigma and dq must be > 0");
  double coef = dq * dq / (2.0 * sigma * sigma);
  return {[coef](double alpha) { return alpha * coef; },
          "gaussian(sigma=" + std::to_string(sigma) + ",dq=" + std::to_string(dq) + ")", true};
}

RdpCurve compose_rdp(const std::vector<RdpCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("compose_rdp: need at least one curve");
  bool monotone = std::all_of(curves.begin(), curves.end(),
                              [](const RdpCurve& c) { return c.monotone_expected; });
  auto evals = curves;
  return {[evals](double alpha) {
            double s = 0.0;
            for (const RdpCurve& c : evals) s += c.eval(alpha);
            return s;
          },
          "compose(" + std::to_string(curves.size()) + ")", monotone};
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(64);
  double lo = std::log(1.01), hi = std::log(512.0);
  for (int i = 1; i <= 64; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / 64.0));
  grid.back() = 512.0;
  return grid;
}

void assert_monotone_on_grid(const RdpCurve& curve, const std::vector<double>& grid) {
  if (!curve.monotone_expected) return;
  double prev = -kInf;
  for (double a : grid) {
    double v = curve(a);
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
      throw std::logic_error("RdpCurve '" + curve.provenance + "' decreases on the alpha grid");
    prev = v;
  }
}

DpResult rdp_to_dp(const RdpCurve& curve, double delta, const std::vector<double>& grid) {
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("rdp_to_dp: delta must lie in (0,1)");
  if (grid.empty()) throw std::invalid_argument("rdp_to_dp: empty alpha grid");
  double best = kInf, best_alpha = grid.front();
  double penalty_num = std::log(1.0 / delta);
  for (double alpha : grid) {
    double v = curve(alpha) + penalty_num / (alpha - 1.0);
    if (v < best) {
      best = v;
      best_alpha = alpha;
    }
  }
  if (!std::isfinite(best)) throw std::domain_error("rdp_to_dp: curve is infinite on the grid");
  return {best, best_alpha};
}

StoppingTerm StoppingTerm::sup_form(double sup_e_t) {
  if (!(sup_e_t >= 1) || !std::isfinite(sup_e_t))
    throw std::invalid_argument("StoppingTerm: sup E[T|Z1] must be finite and >= 1");
  StoppingTerm s;
  s.form = Form::SupExpected;
  s.sup_expected_t = sup_e_t;
  return s;
}

StoppingTerm StoppingTerm::bounded(uint64_t t_max) {
  if (t_max < 1) throw std::invalid_argument("StoppingTerm: t_max must be >= 1");
  StoppingTerm s;
  s.form = Form::BoundedLength;
  s.t_max = t_max;
  return s;
}

StoppingTerm StoppingTerm::moment_form(StoppingMoment m) {
  if (!(m.gamma > 1)) throw std::invalid_argument("StoppingTerm: gamma must be > 1");
  if (!(m.value >= 1) || !std::isfinite(m.value))
    throw std::invalid_argument("StoppingTerm: moment must be finite and >= 1");
  StoppingTerm s;
  s.form = Form::Moment;
  s.moment = m;
  return s;
}

double gen_above_thresh_rdp(double alpha, const RdpCurve& eps1, const RdpCurve& eps2,
                            const StoppingTerm& stopping) {
  if (!(alpha > 1)) throw std::invalid_argument("gen_above_thresh_rdp: alpha must be > 1");
  switch (stopping.form) {
    case StoppingTerm::Form::SupExpected:
      return eps1(alpha) + eps2(alpha) + std::log(stopping.sup_expected_t) / (alpha - 1.0);
    case StoppingTerm::Form::BoundedLength:
      return eps1(alpha) + eps2(alpha) +
             std::log(1.0 + static_cast<double>(stopping.t_max)) / (alpha - 1.0);
    case StoppingTerm::Form::Moment: {
      double g = stopping.moment.gamma;
      double coef = (alpha - (g - 1.0) / g) / (alpha - 1.0);
      return coef * eps1(g * alpha / (g - 1.0)) + eps2(alpha) +
             std::log(stopping.moment.value) / (g * (alpha - 1.0));
    }
  }
  throw std::logic_error("gen_above_thresh_rdp: unreachable");
}

TaTb estimate_ta_tb(const HypothesisPair& pair, const SprtThresholds& thr,
                    const TruncationSpec& trunc, double sigma1, double sigma2, double gamma,
                    double c, int n_noise_draws) {
  if (n_noise_draws < 1000)
    throw std::invalid_argument("estimate_ta_tb: n_noise_draws below 1000 is too unstable");
  if (!(c > 0) || !(c < 1)) throw std::invalid_argument("estimate_ta_tb: c must lie in (0,1)");
  if (!(gamma >= 1)) throw std::invalid_argument("estimate_ta_tb: gamma must be >= 1");
  if (!(sigma1 >= 0) || !(sigma2 >= 0))
    throw std::invalid_argument("estimate_ta_tb: noise scales must be >= 0");
  DriftConstants mu = drift_constants(pair, trunc);
  if (!(mu.mu0 > 0) || !(mu.mu1 > 0))
    throw std::domain_error("estimate_ta_tb: drift constants must be positive");
  double a2 = 2.0 * trunc.a_trunc * trunc.a_trunc;
  double rho0 = 1.0 - std::exp(-(1.0 - c) * mu.mu1 * mu.mu1 / a2);
  double rho1 = 1.0 - std::exp(-(1.0 - c) * mu.mu0 * mu.mu0 / a2);
  // Theorem pairing: T_A couples rho1 with mu0 and threshold a; T_B couples
  // rho0 with mu1 and threshold b.
  TaTb out;
  out.ta = bracket_moment(thr.a, rho1, mu.mu0, sigma1, sigma2, gamma, n_noise_draws, 0xA);
  out.tb = bracket_moment(thr.b, rho0, mu.mu1, sigma1, sigma2, gamma, n_noise_draws, 0xB);
  return out;
}

RdpCurve privsprt_rdp_curve(const PrivTestConfig& cfg, double gamma, const TaTb& tatb) {
  if (!(gamma > 1)) throw std::invalid_argument("privsprt_rdp_curve: gamma must be > 1");
  if (cfg.scale1 == 0.0 || cfg.scale2 == 0.0) {
    return {[](double) { return kInf; }, "non-private (zero noise scale)", false};
  }
  double A = cfg.trunc_a;
  if (!std::isfinite(A) || !(A > 0))
    throw std::invalid_argument("privsprt_rdp_curve: needs a finite truncation level");
  double t1 = 2.0 * A * A / (cfg.scale1 * cfg.scale1);
  double t2 = 4.0 * A * A / (cfg.scale2 * cfg.scale2);
  double log_term = 2.0 * std::log(std::max(tatb.ta.value, tatb.tb.value)) / gamma;
  return {[t1, t2, log_term, gamma](double alpha) {
            double coef = (alpha * gamma / (gamma - 1.0) - 1.0) / (alpha - 1.0);
            return coef * (alpha * t1) + alpha * t2 + log_term / (alpha - 1.0);
          },
          "privsprt(gamma=" + std::to_string(gamma) + ")", false};
}

RdpCurve privsprt_rdp_curve_eps_form(double eps_prime, double delta, double gamma,
                                     const TaTb& tatb) {
  if (!(eps_prime > 0)) throw std::invalid_argument("eps_prime must be > 0");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("delta must lie in (0,1)");
  if (!(gamma > 1)) throw std::invalid_argument("gamma must be > 1");
  double L = std::log(1.25 / delta);
  double t1 = eps_prime * eps_prime / (16.0 * L);
  double t2 = eps_prime * eps_prime / (32.0 * L);
  double log_term = 2.0 * std::log(std::max(tatb.ta.value, tatb.tb.value)) / gamma;
  return {[t1, t2, log_term, gamma](double alpha) {
            double coef = (alpha * gamma / (gamma - 1.0) - 1.0) / (alpha - 1.0);
            return coef * (alpha * t1) + alpha * t2 + log_term / (alpha - 1.0);
          },
          "privsprt-eps-form(eps'=" + std::to_string(eps_prime) + ")", false};
}

BestDpReport best_dp_report(const HypothesisPair& pair, const PrivTestConfig& cfg, double delta,
                            int n_noise_draws) {
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("best_dp_report: delta must lie in (0,1)");
  BestDpReport rep{};
  rep.delta = delta;
  rep.sigma1 = cfg.scale1;
  rep.sigma2 = cfg.scale2;
  rep.trunc_a = cfg.trunc_a;
  if (cfg.mode != TestMode::GaussianPrivSprt || cfg.scale1 == 0.0 || cfg.scale2 == 0.0) {
    rep.non_private = true;
    rep.epsilon = kInf;
    rep.alpha_star = rep.gamma_star = 0.0;
    rep.ta = rep.tb = StoppingMoment{0.0, 1.0, 0.0};
    return rep;
  }
  TruncationSpec trunc(cfg.trunc_a);
  const std::vector<double> gammas{1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0};
  const std::vector<double> alphas = default_alpha_grid();
  rep.epsilon = kInf;
  for (double g : gammas) {
    TaTb tatb = estimate_ta_tb(pair, cfg.thresholds, trunc, cfg.scale1, cfg.scale2, g, 0.5,
                               n_noise_draws);
    RdpCurve curve = privsprt_rdp_curve(cfg, g, tatb);
    DpResult dp = rdp_to_dp(curve, delta, alphas);
    if (dp.epsilon < rep.epsilon) {
      rep.epsilon = dp.epsilon;
      rep.alpha_star = dp.alpha_star;
      rep.gamma_star = g;
      rep.ta = tatb.ta;
      rep.tb = tatb.tb;
    }
  }
  return rep;
}

void to_json(nlohmann::json& j, const BestDpReport& r) {
  j = {{"epsilon", r.non_private ? nlohmann::json() : nlohmann::json(r.epsilon)},
       {"delta", r.delta},
       {"alpha_star", r.alpha_star},
       {"gamma_star", r.gamma_star},
       {"t_a", r.ta.value},
       {"t_b", r.tb.value},
       {"sigma1", r.sigma1},
       {"sigma2", r.sigma2},
       {"A", r.trunc_a},
       {"non_private", r.non_private}};
}

}  // namespace privsprt
