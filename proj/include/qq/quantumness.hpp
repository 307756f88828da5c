#pragma once

// Distance from a state to the convex hull of spin-coherent projectors.
//
// For a support {a_i}, the squared Hilbert-Schmidt distance is the convex
// quadratic  tr rho^2 - 2 sum_i l_i <a_i|rho|a_i> + sum_ik l_i l_k G_ik
// over the probability simplex, with G_ik = |<a_i|a_k>|^2. The full solve
// alternates that fixed-support problem with resampling of the support and
// merging of nearly coincident atoms.

#include <cstdint>
#include <optional>
#include <vector>

#include "qq/spin.hpp"

namespace qq {

struct Atom {
  double weight = 0.0;
  SphereDirection dir;
};

struct ClassicalMixture {
  SpinJ spin{1};
  std::vector<Atom> atoms;

  // sum_i w_i |a_i><a_i|
  CMatrix matrix() const;
  // Throws unless weights are non-negative and sum to one within 1e-10.
  void validate() const;
};

struct QPConfig {
  int n_directions = 100;
  int n_rounds = 2000;
  double merge_threshold = 2.0 * kPi / 180.0;
  double weight_floor = 1e-9;
  double convergence_tol = 1e-9;
  std::uint64_t rng_seed = 20100101;
  // Rounds without improvement > convergence_tol before stopping.
  int stall_rounds = 50;
  // Consecutive rounds whose Frank-Wolfe gap is below convergence_tol
  // needed to stop early.
  int certify_rounds = 3;
  // Fresh directions refined by local descent on the reduced cost.
  int refine_candidates = 4;

  void validate() const;
};

// min x^T G x - 2 h^T x + c over the probability simplex.
struct SimplexQPResult {
  Eigen::VectorXd weights;
  double objective = 0.0;
  // Frank-Wolfe gap  g.x - min_i g_i  with g = 2(Gx - h); zero at optimum.
  double gap = 0.0;
  int iterations = 0;
};

// Wolfe's minimum-norm-point active-set method on the lifted points
// P_i - rho; finite, exact up to rounding.
SimplexQPResult solve_simplex_qp(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear, double constant);

// Accelerated projected gradient with adaptive restart.
SimplexQPResult solve_simplex_qp_projected_gradient(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear,
                                                    double constant, int max_iter = 200000, double tol = 1e-12);

// Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct FixedSupportResult {
  Eigen::VectorXd weights;
  double q_squared = 0.0;
  double kkt_residual = 0.0;
};

FixedSupportResult qp_fixed_support(const DensityMatrix& rho, const std::vector<SphereDirection>& directions);

struct QPResult {
  double q_squared = 0.0;
  ClassicalMixture mixture;
  int rounds_used = 0;
  // Frank-Wolfe gap of the final mixture on its own support.
  double kkt_residual = 0.0;
  // Frank-Wolfe gap against the best coherent direction found on the
  // sphere: q_squared - dual_gap is a lower bound on Q^2 when that search is
  // global.
  double dual_gap = 0.0;
  bool converged = false;
  // Best q_squared after each round; non-increasing.
  std::vector<double> trace;

  double q() const;
};

QPResult quantumness(const DensityMatrix& rho, const QPConfig& cfg = {},
                     const ClassicalMixture* warm_start = nullptr);

ClassicalMixture closest_classical(const DensityMatrix& rho, const QPConfig& cfg = {});

// ||rho - rho_c||^2 evaluated entrywise.
double mixture_distance_sq(const DensityMatrix& rho, const ClassicalMixture& mixture);

}  // namespace qq
