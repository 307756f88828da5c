#include "qq/spin.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

namespace qq {

SpinJ::SpinJ(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw std::invalid_argument("two_j must be non-negative");
}

void require_nontrivial(const SpinJ& spin) {
  if (spin.two_j() < 1) throw std::invalid_argument("operation requires two_j >= 1");
}

namespace {

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return p;
}

}  // namespace

SphereDirection::SphereDirection(double tb, double ph) : theta_bar(tb), phi(wrap_phi(ph)) {
  if (!(tb >= 0.0 && tb <= kPi)) {
    throw std::invalid_argument("theta_bar out of [0, pi]: " + std::to_string(tb));
  }
}

SphereDirection SphereDirection::from_angles(double tb, double ph) {
  return from_vector(Vec3(std::sin(tb) * std::cos(ph), std::sin(tb) * std::sin(ph), -std::cos(tb)));
}

SphereDirection SphereDirection::from_vector(const Vec3& v) {
  const double r = v.norm();
  if (!(r > 0.0)) throw std::invalid_argument("zero vector has no direction");
  const Vec3 n = v / r;
  SphereDirection d;
  // theta_bar = acos(-n_z), evaluated through atan2 for accuracy near the poles.
  d.theta_bar = std::atan2(std::hypot(n.x(), n.y()), -n.z());
  d.phi = wrap_phi(std::atan2(n.y(), n.x()));
  return d;
}

Vec3 SphereDirection::unit_vector() const {
  const double s = std::sin(theta_bar);
  return {s * std::cos(phi), s * std::sin(phi), -std::cos(theta_bar)};
}

SphereDirection SphereDirection::antipode() const { return from_vector(-unit_vector()); }

double angular_distance(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double angular_distance(const SphereDirection& a, const SphereDirection& b) {
  return angular_distance(a.unit_vector(), b.unit_vector());
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// ---------------------------------------------------------------------------

PureState::PureState(SpinJ spin, CVector amplitudes) : spin_(spin), amps_(std::move(amplitudes)) {
  if (amps_.size() != spin_.dim()) {
    throw std::invalid_argument("amplitude vector has length " + std::to_string(amps_.size()) +
                                ", expected " + std::to_string(spin_.dim()));
  }
  const double n = amps_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("state vector must be nonzero and finite");
  amps_ /= n;
}

PureState PureState::basis(SpinJ spin, double m) {
  const double k = m + spin.j();
  const int idx = static_cast<int>(std::lround(k));
  if (std::abs(k - idx) > 1e-9 || idx < 0 || idx >= spin.dim()) {
    throw std::invalid_argument("m out of range for this spin");
  }
  CVector v = CVector::Zero(spin.dim());
  v(idx) = 1.0;
  return {spin, v};
}

double PureState::overlap_abs(const PureState& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  return std::abs(amps_.dot(other.amps_));
}

bool PureState::equal_up_to_phase(const PureState& other, double tol) const {
  return other.dim() == dim() && std::abs(overlap_abs(other) - 1.0) < tol;
}

// ---------------------------------------------------------------------------

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(SpinJ spin, CMatrix matrix) : spin_(spin), rho_(std::move(matrix)) {
  if (rho_.rows() != spin_.dim() || rho_.cols() != spin_.dim()) {
    throw std::invalid_argument("density matrix must be " + std::to_string(spin_.dim()) + "x" +
                                std::to_string(spin_.dim()));
  }
  if (!rho_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(rho_, 1e-12)) throw std::invalid_argument("density matrix is not Hermitian");
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return {psi.spin(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(SpinJ spin) {
  return {spin, CMatrix::Identity(spin.dim(), spin.dim()) / static_cast<double>(spin.dim())};
}

double DensityMatrix::purity() const { return rho_.cwiseAbs2().sum(); }

// ---------------------------------------------------------------------------

SpinOperators spin_operators(SpinJ spin) {
  require_nontrivial(spin);
  const int d = spin.dim();
  const double j = spin.j();
  CMatrix jp = CMatrix::Zero(d, d);
  CMatrix jz = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = k - j;
    jz(k, k) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>
    if (k + 1 < d) jp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const CMatrix jm = jp.adjoint();
  SpinOperators ops;
  ops.jx = 0.5 * (jp + jm);
  ops.jy = complex(0.0, -0.5) * (jp - jm);
  ops.jz = jz;
  return ops;
}

namespace {

// sqrt(C(n, k)) for all k, cached per n.
const std::vector<double>& sqrt_binomials(int n) {
  constexpr int kCached = 64;
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kCached + 1);
    for (int m = 0; m <= kCached; ++m) {
      for (int k = 0; k <= m; ++k) t[static_cast<std::size_t>(m)].push_back(std::sqrt(binomial(m, k)));
    }
    return t;
  }();
  if (n > kCached) throw std::invalid_argument("two_j too large");
  return table[static_cast<std::size_t>(n)];
}

void fill_coherent(int n, double s, double c, complex step, CVector& out) {
  out.resize(n + 1);
  const std::vector<double>& sb = sqrt_binomials(n);
  // k = j + m runs 0..2j; build s^k c^(n-k) by two passes to avoid pow().
  double spow = 1.0;
  complex phase = 1.0;
  for (int k = 0; k <= n; ++k) {
    out(k) = sb[static_cast<std::size_t>(k)] * spow * phase;
    spow *= s;
    phase *= step;
  }
  double cpow = 1.0;
  for (int k = n; k >= 0; --k) {
    out(k) *= cpow;
    cpow *= c;
  }
}

}  // namespace

void coherent_amplitudes(SpinJ spin, const SphereDirection& dir, CVector& out) {
  fill_coherent(spin.two_j(), std::sin(0.5 * dir.theta_bar), std::cos(0.5 * dir.theta_bar), std::polar(1.0, -dir.phi),
                out);
}

void coherent_amplitudes(SpinJ spin, const Vec3& n, CVector& out) {
  const double len = n.norm();
  const double z = std::clamp(n.z() / len, -1.0, 1.0);
  // cos(theta_bar) = -z
  const double s = std::sqrt(0.5 * (1.0 + z));
  const double c = std::sqrt(0.5 * (1.0 - z));
  const double rho = std::hypot(n.x(), n.y());
  const complex step = rho > 1e-300 ? complex(n.x(), -n.y()) / rho : complex(1.0, 0.0);
  fill_coherent(spin.two_j(), s, c, step, out);
}

double quadratic_form(const CMatrix& a, const CVector& v) {
  const Eigen::Index d = v.size();
  double acc = 0.0;
  for (Eigen::Index r = 0; r < d; ++r) {
    const complex vr = v(r);
    acc += a(r, r).real() * std::norm(vr);
    complex off = 0.0;
    for (Eigen::Index c = r + 1; c < d; ++c) off += a(r, c) * v(c);
    acc += 2.0 * (std::conj(vr) * off).real();
  }
  return acc;
}

PureState coherent_state(SpinJ spin, const SphereDirection& dir) {
  CVector v;
  coherent_amplitudes(spin, dir, v);
  return {spin, v};
}

double husimi(const CMatrix& hermitian, SpinJ spin, const SphereDirection& dir) {
  CVector a;
  coherent_amplitudes(spin, dir, a);
  return quadratic_form(hermitian, a);
}

double husimi(const DensityMatrix& rho, const SphereDirection& dir) {
  return std::clamp(husimi(rho.matrix(), rho.spin(), dir), 0.0, 1.0);
}

double hs_distance_sq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch");
  return (a - b).cwiseAbs2().sum();
}

double hs_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return std::sqrt(hs_distance_sq(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------

CMatrix rotation_operator(SpinJ spin, const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-10) throw std::invalid_argument("rotation axis must be a unit vector");
  const SpinOperators ops = spin_operators(spin);
  const CMatrix gen = axis.x() * ops.jx + axis.y() * ops.jy + axis.z() * ops.jz;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gen);
  CVector phases(spin.dim());
  for (int k = 0; k < spin.dim(); ++k) phases(k) = std::polar(1.0, angle * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix3d rotation_matrix(const Vec3& axis, double angle) {
  // exp(+i angle n.J) is the active rotation by -angle about n.
  return Eigen::AngleAxisd(-angle, axis.normalized()).toRotationMatrix();
}

PureState rotate(const PureState& psi, const Vec3& axis, double angle) {
  return {psi.spin(), rotation_operator(psi.spin(), axis, angle) * psi.amplitudes()};
}

DensityMatrix rotate(const DensityMatrix& rho, const Vec3& axis, double angle) {
  const CMatrix u = rotation_operator(rho.spin(), axis, angle);
  CMatrix r = u * rho.matrix() * u.adjoint();
  r = 0.5 * (r + r.adjoint()).eval();
  r /= r.trace().real();
  return {rho.spin(), r};
}

DensityMatrix thermal_state(SpinJ spin, const ThermalSpec& spec) {
  if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) throw std::invalid_argument("beta must be finite and >= 0");
  if (spec.hamiltonian.rows() != spin.dim() || spec.hamiltonian.cols() != spin.dim()) {
    throw std::invalid_argument("hamiltonian has the wrong dimension");
  }
  if (!is_hermitian(spec.hamiltonian, 1e-12)) throw std::invalid_argument("hamiltonian is not Hermitian");
  const CMatrix h = 0.5 * (spec.hamiltonian + spec.hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXd& e = es.eigenvalues();
  const double e0 = e.minCoeff();
  Eigen::VectorXd w(e.size());
  for (int k = 0; k < e.size(); ++k) w(k) = std::exp(-spec.beta * (e(k) - e0));
  w /= w.sum();
  CMatrix rho = es.eigenvectors() * w.cast<complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return {spin, rho};
}

}  // namespace qq
