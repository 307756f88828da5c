#pragma once

// Spin-j linear algebra on the |j,m> basis.
//
// Basis ordering: amplitude index k holds m = k - j, so index 0 is |j,-j>
// and index 2j is |j,+j>.
//
// Angular convention: every public direction uses theta_bar, the polar
// angle counted from the SOUTH pole. The usual north-pole polar angle is
// theta = pi - theta_bar. The unit vector of (theta_bar, phi) is
// (sin tb cos phi, sin tb sin phi, -cos tb).

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace qq {

using complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

class SpinJ {
 public:
  explicit SpinJ(int two_j);

  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }
  double j() const { return 0.5 * two_j_; }

  bool operator==(const SpinJ&) const = default;

 private:
  int two_j_;
};

// Throws unless two_j >= 1.
void require_nontrivial(const SpinJ& spin);

struct SphereDirection {
  double theta_bar = 0.0;
  double phi = 0.0;

  SphereDirection() = default;
  // phi is wrapped into [0, 2pi); theta_bar must lie in [0, pi].
  SphereDirection(double theta_bar, double phi);

  // Accepts any real angles, maps them onto the sphere.
  static SphereDirection from_angles(double theta_bar, double phi);
  static SphereDirection from_vector(const Vec3& v);

  Vec3 unit_vector() const;
  SphereDirection antipode() const;
};

// Angle between two directions, in [0, pi].
double angular_distance(const SphereDirection& a, const SphereDirection& b);
double angular_distance(const Vec3& a, const Vec3& b);

class PureState {
 public:
  // Normalizes the amplitudes; throws on zero vector or wrong length.
  PureState(SpinJ spin, CVector amplitudes);

  static PureState basis(SpinJ spin, double m);

  const SpinJ& spin() const { return spin_; }
  const CVector& amplitudes() const { return amps_; }
  int dim() const { return spin_.dim(); }

  // |<this|other>|, the phase-insensitive fidelity amplitude.
  double overlap_abs(const PureState& other) const;
  bool equal_up_to_phase(const PureState& other, double tol = 1e-10) const;

 private:
  SpinJ spin_;
  CVector amps_;
};

class DensityMatrix {
 public:
  // Validates hermiticity (1e-12), unit trace (1e-12) and
  // min eigenvalue >= -1e-10. The stored matrix is symmetrized.
  DensityMatrix(SpinJ spin, CMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(SpinJ spin);

  const SpinJ& spin() const { return spin_; }
  const CMatrix& matrix() const { return rho_; }
  int dim() const { return spin_.dim(); }

  double purity() const;

 private:
  SpinJ spin_;
  CMatrix rho_;
};

struct SpinOperators {
  CMatrix jx, jy, jz;
};

SpinOperators spin_operators(SpinJ spin);

// Amplitudes of |theta_bar phi>: sqrt(C(2j, j+m)) s^(j+m) c^(j-m) e^{-i(j+m)phi},
// with s = sin(theta_bar/2), c = cos(theta_bar/2).
PureState coherent_state(SpinJ spin, const SphereDirection& dir);
// Same amplitudes written into `out` (length dim); no allocation.
void coherent_amplitudes(SpinJ spin, const SphereDirection& dir, CVector& out);
// Same, from a direction vector (any nonzero length).
void coherent_amplitudes(SpinJ spin, const Vec3& n, CVector& out);
// Re <v|A|v> for Hermitian A, reading only the upper triangle.
double quadratic_form(const CMatrix& hermitian, const CVector& v);

// <alpha|rho|alpha>.
double husimi(const DensityMatrix& rho, const SphereDirection& dir);
// <alpha|A|alpha> for any Hermitian A of the right size.
double husimi(const CMatrix& hermitian, SpinJ spin, const SphereDirection& dir);

double hs_distance(const DensityMatrix& a, const DensityMatrix& b);
double hs_distance_sq(const CMatrix& a, const CMatrix& b);

// Unitary exp(i * angle * axis.J). Throws unless |axis| = 1 within 1e-10.
CMatrix rotation_operator(SpinJ spin, const Vec3& axis, double angle);
// The SO(3) matrix describing how rotation_operator moves coherent-state
// directions: rotate(coherent(n)) ~ coherent(R n).
Eigen::Matrix3d rotation_matrix(const Vec3& axis, double angle);

PureState rotate(const PureState& psi, const Vec3& axis, double angle);
DensityMatrix rotate(const DensityMatrix& rho, const Vec3& axis, double angle);

struct ThermalSpec {
  CMatrix hamiltonian;
  double beta = 0.0;
};

// exp(-beta H) / tr exp(-beta H). Throws on non-Hermitian H or invalid beta.
DensityMatrix thermal_state(SpinJ spin, const ThermalSpec& spec);

// True if ||A - A^dagger||_max <= tol.
bool is_hermitian(const CMatrix& a, double tol = 1e-12);

double binomial(int n, int k);

}  // namespace qq
