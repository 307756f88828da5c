#pragma once

// Certificates of classicality and bounds on the quantumness:
//  - the exact spin-1 test through Z = W - u u^T,
//  - purity, pure-state and Husimi upper bounds valid for any j,
//  - the explicit classical witnesses for the spin-1 family psi_x,
//  - bisection for the critical inverse temperature of spin-1 thermal states.

#include <optional>

#include "qq/spin.hpp"

namespace qq {

struct Spin1Coords {
  Vec3 u;
  Eigen::Matrix3d w;
  Eigen::Matrix3d z;
};

// Requires j = 1.
Spin1Coords spin1_coords(const DensityMatrix& rho);
// rho = 1/3 + u.J/2 + (1/2) sum_ab (W_ab - delta_ab/3)(J_a J_b + J_b J_a)/2
CMatrix spin1_reconstruct(const Vec3& u, const Eigen::Matrix3d& w);

inline constexpr double kClassicalEigenTol = -1e-10;

struct Spin1Verdict {
  bool classical = false;
  double min_eigenvalue_of_z = 0.0;
};

Spin1Verdict is_classical_spin1(const DensityMatrix& rho);

struct BoundsReport {
  double purity_bound = 0.0;    // sqrt(tr rho^2 - 1/(2j+1))
  double pure_bound = 0.0;      // sqrt(1 - 1/(2j+1))
  double coherent_bound = 0.0;  // sqrt(1 + tr rho^2 - 2 max H)
  double husimi_max = 0.0;
  SphereDirection husimi_argmax;
};

inline constexpr int kDefaultHusimiGrid = 2000;

// Throws when husimi_grid_size < 100.
BoundsReport bounds(const DensityMatrix& rho, int husimi_grid_size = kDefaultHusimiGrid);

// (|1,-1> + x|1,0> + |1,1>) / sqrt(x^2 + 2)
PureState psi_x(double x);

struct Spin1Witness {
  DensityMatrix rho_c;
  double certified_distance_sq;  // ||psi_x - rho_c||^2, evaluated numerically
  double closed_form_sq;         // the closed-form expression for that branch
};

// Classical witness for psi_x, x >= sqrt(2); the x >= sqrt(6) branch is used
// from sqrt(6) upward.
Spin1Witness theorem_witness_spin1(double x);

struct ThermalScanResult {
  bool always_classical = false;
  double critical_beta = 0.0;   // valid when !always_classical
  bool monotone = true;         // dense pre-scan saw a single transition
  int prescan_samples = 0;
};

// Bisection to absolute tolerance `tol` on beta in [beta_lo, beta_hi],
// after a 64-point pre-scan. Requires j = 1 and Hermitian H.
ThermalScanResult thermal_scan(const CMatrix& hamiltonian, double beta_lo = 0.0, double beta_hi = 50.0,
                               double tol = 1e-6);

}  // namespace qq
