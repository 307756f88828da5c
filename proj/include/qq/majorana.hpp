#pragma once

// Majorana (stellar) representation: a pure spin-j state as 2j points on
// the sphere, obtained from the roots of
//   M(zeta) = sum_k sqrt(C(2j,k)) psi_{k-j} zeta^k,   zeta = e^{i phi} tan(theta_bar/2).
// A polynomial of degree D < 2j contributes 2j - D points at the North pole
// (theta_bar = pi).

#include <vector>

#include "qq/spin.hpp"

namespace qq {

struct MajoranaConfig {
  SpinJ spin{1};
  std::vector<SphereDirection> points;

  MajoranaConfig() = default;
  // Throws unless points.size() == two_j.
  MajoranaConfig(SpinJ spin, std::vector<SphereDirection> points);
};

inline constexpr double kNorthPoleZeta = 1e8;
inline constexpr double kZeroCoefficient = 1e-12;

MajoranaConfig state_to_points(const PureState& psi);
PureState points_to_state(const MajoranaConfig& config);

// |<alpha|psi>|^2 for psi = points_to_state(config), evaluated from the
// pairwise geometry: prefactor(config) * prod_i sin^2(gamma(alpha, p_i)/2).
double overlap_via_majorana(const MajoranaConfig& config, const SphereDirection& dir);

// The prefactor |psi_j|^2 / prod cos^2(theta_bar_i/2) written through the
// elementary symmetric polynomials of the roots; finite for any
// configuration, including points at the North pole.
double majorana_prefactor(const MajoranaConfig& config);

struct CanonicalSignature {
  std::vector<double> angles;  // sorted pairwise angular distances
};

CanonicalSignature canonical_signature(const MajoranaConfig& config);
// Largest elementwise difference; infinity when the lengths differ.
double signature_distance(const CanonicalSignature& a, const CanonicalSignature& b);

// Minimum-weight perfect matching on angular distances; returns the largest
// matched angular distance. Throws when the multisets have different sizes.
double matched_distance(const std::vector<SphereDirection>& a, const std::vector<SphereDirection>& b);

// Applies the same rigid rotation to each point as rotate() applies to the
// state, so that state_to_points(rotate(psi)) matches rotate_points(...).
MajoranaConfig rotate_points(const MajoranaConfig& config, const Vec3& axis, double angle);

// Optimal assignment for a square cost matrix (Hungarian method).
// Returns assignment[row] = column.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace qq
