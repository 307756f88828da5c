#include "qq/classicality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qq/kernels.hpp"
#include "qq/sphere.hpp"

namespace qq {

namespace {

void require_spin1(const SpinJ& s) {
  if (s.two_j() != 2) throw std::invalid_argument("spin-1 criterion requires j = 1 (3x3 density matrix)");
}

std::array<const CMatrix*, 3> as_array(const SpinOperators& ops) { return {&ops.jx, &ops.jy, &ops.jz}; }

}  // namespace

Spin1Coords spin1_coords(const DensityMatrix& rho) {
  require_spin1(rho.spin());
  const SpinOperators ops = spin_operators(rho.spin());
  const auto j = as_array(ops);
  Spin1Coords c;
  for (int a = 0; a < 3; ++a) c.u(a) = (rho.matrix() * *j[a]).trace().real();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const CMatrix sym = *j[a] * *j[b] + *j[b] * *j[a];
      c.w(a, b) = (rho.matrix() * sym).trace().real() - (a == b ? 1.0 : 0.0);
    }
  }
  c.z = c.w - c.u * c.u.transpose();
  return c;
}

CMatrix spin1_reconstruct(const Vec3& u, const Eigen::Matrix3d& w) {
  const SpinJ spin(2);
  const SpinOperators ops = spin_operators(spin);
  const auto j = as_array(ops);
  CMatrix rho = CMatrix::Identity(3, 3) / 3.0;
  for (int a = 0; a < 3; ++a) rho += 0.5 * u(a) * *j[a];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double coef = w(a, b) - (a == b ? 1.0 / 3.0 : 0.0);
      rho += 0.25 * coef * (*j[a] * *j[b] + *j[b] * *j[a]);
    }
  }
  return rho;
}

Spin1Verdict is_classical_spin1(const DensityMatrix& rho) {
  const Spin1Coords c = spin1_coords(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c.z, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return {lo >= kClassicalEigenTol, lo};
}

BoundsReport bounds(const DensityMatrix& rho, int husimi_grid_size) {
  if (husimi_grid_size < 100) throw std::invalid_argument("husimi grid size must be at least 100");
  const SpinJ spin = rho.spin();
  const double d = spin.dim();
  const double purity = rho.purity();
  BoundsReport r;
  r.purity_bound = std::sqrt(std::max(0.0, purity - 1.0 / d));
  r.pure_bound = std::sqrt(1.0 - 1.0 / d);

  const std::vector<Vec3> grid = fibonacci_sphere(husimi_grid_size);
  const Eigen::VectorXd vals = kernels::husimi_values(rho.matrix(), spin, grid);
  auto neg = [&](const Vec3& n) { return -husimi(rho.matrix(), spin, SphereDirection::from_vector(n)); };
  // Local ascent from the best few grid points.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(vals.size()));
  for (Eigen::Index i = 0; i < vals.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  const std::size_t nref = std::min<std::size_t>(8, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nref), idx.end(),
                    [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });
  SphereMinimum best{grid[static_cast<std::size_t>(idx[0])], -vals(idx[0])};
  for (std::size_t k = 0; k < nref; ++k) {
    const SphereMinimum m = minimize_on_sphere(neg, grid[static_cast<std::size_t>(idx[k])]);
    if (m.value < best.value) best = m;
  }
  r.husimi_max = std::clamp(-best.value, 0.0, 1.0);
  r.husimi_argmax = SphereDirection::from_vector(best.point);
  r.coherent_bound = std::sqrt(std::max(0.0, 1.0 + purity - 2.0 * r.husimi_max));
  return r;
}

PureState psi_x(double x) {
  CVector v(3);
  v << 1.0, x, 1.0;
  return {SpinJ(2), v};
}

Spin1Witness theorem_witness_spin1(double x) {
  if (!(x >= std::sqrt(2.0) - 1e-15) || !std::isfinite(x)) {
    throw std::invalid_argument("witness requires finite x >= sqrt(2)");
  }
  const double x2 = x * x;
  const double a = x / (x2 + 2.0);
  double b = 0.0;
  double closed = 0.0;
  if (x >= std::sqrt(6.0)) {
    b = 1.0 / (x2 + 2.0);
    const double r = (x2 - 2.0) / (x2 + 2.0);
    closed = 0.375 * r * r;
  } else {
    b = 4.0 * a * a - 0.25;
    closed = (x2 - 2.0) * (x2 - 2.0) * (x2 * x2 + 12.0) / (2.0 * std::pow(x2 + 2.0, 4));
  }
  CMatrix m(3, 3);
  m << 0.25, a, b, a, 0.5, a, b, a, 0.25;
  DensityMatrix rho_c(SpinJ(2), m);
  const DensityMatrix psi = DensityMatrix::from_pure(psi_x(x));
  return {rho_c, hs_distance_sq(psi.matrix(), rho_c.matrix()), closed};
}

ThermalScanResult thermal_scan(const CMatrix& hamiltonian, double beta_lo, double beta_hi, double tol) {
  const SpinJ spin(2);
  if (hamiltonian.rows() != 3 || hamiltonian.cols() != 3) {
    throw std::invalid_argument("thermal scan requires a 3x3 spin-1 Hamiltonian");
  }
  if (!is_hermitian(hamiltonian, 1e-12)) throw std::invalid_argument("hamiltonian is not Hermitian");
  if (!(beta_lo >= 0.0) || !(beta_hi > beta_lo) || !std::isfinite(beta_hi)) {
    throw std::invalid_argument("invalid beta range");
  }
  auto classical_at = [&](double beta) {
    return is_classical_spin1(thermal_state(spin, {hamiltonian, beta})).classical;
  };

  constexpr int kSamples = 64;
  ThermalScanResult r;
  r.prescan_samples = kSamples;
  std::vector<char> verdict(kSamples);
  std::vector<double> betas(kSamples);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < kSamples; ++i) {
    betas[static_cast<std::size_t>(i)] = beta_lo + (beta_hi - beta_lo) * i / (kSamples - 1);
    verdict[static_cast<std::size_t>(i)] = classical_at(betas[static_cast<std::size_t>(i)]) ? 1 : 0;
  }
  int transitions = 0;
  int first = -1;
  for (int i = 1; i < kSamples; ++i) {
    if (verdict[static_cast<std::size_t>(i)] != verdict[static_cast<std::size_t>(i - 1)]) {
      ++transitions;
      if (first < 0) first = i;
    }
  }
  r.monotone = transitions <= 1;
  if (first < 0) {
    if (verdict[0]) {
      r.always_classical = true;
      return r;
    }
    // Non-classical over the whole range: transition below beta_lo.
    r.critical_beta = beta_lo;
    return r;
  }
  double lo = betas[static_cast<std::size_t>(first - 1)];
  double hi = betas[static_cast<std::size_t>(first)];
  const bool lo_classical = verdict[static_cast<std::size_t>(first - 1)] != 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (classical_at(mid) == lo_classical) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.critical_beta = 0.5 * (lo + hi);
  return r;
}

}  // namespace qq
