#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "privsprt/private_test.hpp"

namespace privsprt {

// Renyi-DP budget as a function of the order alpha > 1.
struct RdpCurve {
  std::function<double(double)> eval;
  std::string provenance;
  // Mechanism and composition curves are non-decreasing in alpha and are
  // asserted so on a grid; above-threshold curves carry a stopping term that
  // decays in alpha, so the check is skipped for them.
  bool monotone_expected = true;

  double operator()(double alpha) const {
    if (!(alpha > 1)) throw std::invalid_argument("RdpCurve: alpha must be > 1");
    return eval(alpha);
  }
};

RdpCurve zero_rdp_curve();
RdpCurve constant_rdp_curve(double eps);
// Gaussian mechanism on a query of sensitivity dq: eps(alpha) = alpha*dq^2/(2 sigma^2).
RdpCurve gaussian_rdp_curve(double sigma, double dq);

RdpCurve compose_rdp(const std::vector<RdpCurve>& curves);

// 64 log-spaced orders in (1.01, 512].
std::vector<double> default_alpha_grid();

// Throws std::logic_error if a curve expected to be monotone decreases
// between consecutive grid points.
void assert_monotone_on_grid(const RdpCurve& curve, const std::vector<double>& grid);

struct DpResult {
  double epsilon;
  double alpha_star;
};

// Minimizes eps(alpha) + log(1/delta)/(alpha-1) over the grid.
DpResult rdp_to_dp(const RdpCurve& curve, double delta,
                   const std::vector<double>& grid = default_alpha_grid());

struct StoppingMoment {
  double gamma;
  double value;
  double standard_error;
};

// Above-threshold RDP bounds: the sup form, the bounded-horizon remark, and
// the gamma-moment form.
struct StoppingTerm {
  enum class Form { SupExpected, BoundedLength, Moment } form;
  double sup_expected_t = 0.0;  // SupExpected
  uint64_t t_max = 0;           // BoundedLength
  StoppingMoment moment{2.0, 1.0, 0.0};  // Moment: E[E[T|Z1]^gamma]

  static StoppingTerm sup_form(double sup_e_t);
  static StoppingTerm bounded(uint64_t t_max);
  static StoppingTerm moment_form(StoppingMoment m);
};

double gen_above_thresh_rdp(double alpha, const RdpCurve& eps1, const RdpCurve& eps2,
                            const StoppingTerm& stopping);

// Monte Carlo moments of the stopping-time bound brackets
//   T_A = E_Z[ max(1, 1 + 1/rho1 + (5(a+Z) + 3 sqrt2 sigma2)/(2 mu0)) ^ gamma ],
//   T_B = E_Z[ max(1, 1 + 1/rho0 + (5(b+Z) + 3 sqrt2 sigma2)/(2 mu1)) ^ gamma ],
// with Z ~ N(0, sigma1^2), rho0 = 1 - exp(-(1-c) mu1^2 / (2A^2)), rho1 the
// same with mu0. sigma1 = 0 collapses to a deterministic evaluation.
struct TaTb {
  StoppingMoment ta;
  StoppingMoment tb;
};
TaTb estimate_ta_tb(const HypothesisPair& pair, const SprtThresholds& thr,
                    const TruncationSpec& trunc, double sigma1, double sigma2, double gamma,
                    double c, int n_noise_draws);

// eps(alpha) = [(alpha g/(g-1) - 1)/(alpha - 1)] * 2 alpha A^2/sigma1^2
//            + 4 alpha A^2/sigma2^2 + 2 log max(T_A, T_B) / (g (alpha - 1)).
// Zero noise scales yield the flagged infinite (non-private) curve.
RdpCurve privsprt_rdp_curve(const PrivTestConfig& cfg, double gamma, const TaTb& tatb);

// Same curve written in terms of eps' under the (eps'/2, delta) Gaussian
// calibration; used to cross-check privsprt_rdp_curve as an algebraic
// identity.
RdpCurve privsprt_rdp_curve_eps_form(double eps_prime, double delta, double gamma,
                                     const TaTb& tatb);

struct BestDpReport {
  double epsilon;
  double delta;
  double alpha_star;
  double gamma_star;
  StoppingMoment ta;
  StoppingMoment tb;
  double sigma1;
  double sigma2;
  double trunc_a;
  bool non_private = false;
};

// Joint grid search over gamma {1.1, 1.25, 1.5, 2, 3, 5, 10} and the alpha
// grid, recomputing T_A/T_B per gamma.
BestDpReport best_dp_report(const HypothesisPair& pair, const PrivTestConfig& cfg, double delta,
                            int n_noise_draws = 20000);

void to_json(nlohmann::json& j, const BestDpReport& r);

}  // namespace privsprt
