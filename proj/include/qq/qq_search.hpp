#pragma once

// Outer maximization of Q^2 over pure states, parametrized by their
// Majorana points.

#include <cstdint>
#include <optional>

#include "qq/majorana.hpp"
#include "qq/quantumness.hpp"

namespace qq {

struct SearchConfig {
  // 0 selects 8 * 2j restarts.
  int n_restarts = 0;
  QPConfig inner = search_inner_defaults();
  // The final report is re-solved with this configuration.
  QPConfig final_inner{};
  // Stop the gradient polish once Q^2 improves by less than this over
  // five consecutive iterations.
  double polish_tol = 1e-7;
  std::uint64_t rng_seed = 20100101;
  // Function-evaluation budget of the simplex stage per restart; 0 selects
  // 20 * (4j - 3) evaluations.
  int simplex_max_evals = 0;
  double simplex_initial_step = 0.4;
  int polish_max_iter = 300;
  bool symmetrize_result = true;
  double symmetrize_tol = 0.02;

  static QPConfig search_inner_defaults();
  void validate() const;
  int restarts_for(SpinJ spin) const;
};

struct EigenCheck {
  double residual = 0.0;  // ||rho_c psi - E psi||, E = <psi|rho_c|psi>
  int eigen_index = 0;    // rank of the best-overlapping eigenvector, 0 = largest eigenvalue
  double eigenvalue = 0.0;
};

EigenCheck eigen_check(const PureState& psi, const ClassicalMixture& mixture);

struct QQResult {
  MajoranaConfig config;
  PureState state{SpinJ(1), CVector::Ones(2)};
  double q_squared = 0.0;
  ClassicalMixture mixture;
  double eigen_residual = 0.0;
  int eigen_index = 0;
  int restarts_used = 0;
  // Distinct optima (by canonical signature, 1e-2 rad) among the restarts.
  int distinct_optima = 0;
  long evaluations = 0;
  double dual_gap = 0.0;
  // Q^2 reached by every restart, indexed by restart.
  std::vector<double> restart_values;
};

// Throws when two_j is outside [0, 10]. two_j <= 1 returns Q^2 = 0 directly.
QQResult qq_search(SpinJ spin, const SearchConfig& cfg = {});

// Local ascent from a given configuration; no simplex stage.
QQResult qq_refine(const MajoranaConfig& start, const SearchConfig& cfg = {});

// Q^2 of one pure state under `inner`; warm-started when `warm` is given.
QPResult pure_quantumness(const PureState& psi, const QPConfig& inner, const ClassicalMixture* warm = nullptr);

// Gauge-fixed coordinates: point 0 at theta_bar = 0, point 1 at phi = 0,
// 4j - 3 free angles in total.
MajoranaConfig config_from_gauge(SpinJ spin, const std::vector<double>& params);
std::vector<double> gauge_from_config(const MajoranaConfig& config);
// Rotates so that point `a` lands on the South pole and point `b` on phi = 0.
MajoranaConfig to_gauge(const MajoranaConfig& config, int a = 0, int b = 1);

// Snaps angles to rings and to rational multiples of pi (denominators up to
// 12) within `tol`; keeps the result only if Q^2 does not drop by >1e-8.
// Throws when tol > 0.1.
MajoranaConfig symmetrize(const MajoranaConfig& config, double tol, const QPConfig& inner = {});

// Square antiprism: rings at theta_bar = t and pi - t, twisted by pi/4.
MajoranaConfig square_antiprism(double ring_theta_bar);

// One-parameter trigonometric reductions of Q^2 at the j = 5/2 ('a') and
// j = 7/2 ('b') optima, and their global minimum over [0, 2pi].
double footnote_expression(char which, double x);
double table_footnote_check(char which);

}  // namespace qq
