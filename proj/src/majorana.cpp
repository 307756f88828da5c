#include "qq/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace qq {

MajoranaConfig::MajoranaConfig(SpinJ s, std::vector<SphereDirection> pts) : spin(s), points(std::move(pts)) {
  if (static_cast<int>(points.size()) != spin.two_j()) {
    throw std::invalid_argument("Majorana configuration needs " + std::to_string(spin.two_j()) + " points, got " +
                                std::to_string(points.size()));
  }
}

namespace {

// Homogeneous spinor of a point: zeta = u / v.
struct Spinor {
  complex u;
  double v;
};

Spinor spinor_of(const SphereDirection& p) {
  return {std::polar(std::sin(0.5 * p.theta_bar), p.phi), std::cos(0.5 * p.theta_bar)};
}

// Coefficients c_k of prod_i (v_i zeta - u_i), k = 0..n.
CVector homogeneous_coefficients(const std::vector<SphereDirection>& pts) {
  CVector c = CVector::Zero(static_cast<int>(pts.size()) + 1);
  c(0) = 1.0;
  int deg = 0;
  for (const auto& p : pts) {
    const Spinor s = spinor_of(p);
    for (int k = deg + 1; k >= 0; --k) {
      complex next = -s.u * c(k);
      if (k > 0) next += s.v * c(k - 1);
      c(k) = next;
    }
    ++deg;
  }
  return c;
}

SphereDirection point_of_root(complex z) {
  const double r = std::abs(z);
  if (r > kNorthPoleZeta) return {kPi, 0.0};
  if (r == 0.0) return {0.0, 0.0};
  return SphereDirection(2.0 * std::atan(r), std::arg(z));
}

// A few guarded Newton steps; a step is kept only if |p| decreases.
complex polish_root(const CVector& a, int deg, complex z) {
  const bool reversed = std::abs(z) > 1.0;
  complex x = reversed ? 1.0 / z : z;
  auto eval = [&](complex t, complex& dp) {
    // value and derivative by synthetic division
    complex p = reversed ? a(0) : a(deg);
    dp = 0.0;
    for (int k = 1; k <= deg; ++k) {
      dp = dp * t + p;
      p = p * t + (reversed ? a(k) : a(deg - k));
    }
    return p;
  };
  complex dp;
  complex p = eval(x, dp);
  for (int it = 0; it < 8 && std::abs(p) > 0.0; ++it) {
    if (std::abs(dp) == 0.0) break;
    const complex cand = x - p / dp;
    complex dpc;
    const complex pc = eval(cand, dpc);
    if (!(std::abs(pc) < std::abs(p))) break;
    x = cand;
    p = pc;
    dp = dpc;
  }
  return reversed ? 1.0 / x : x;
}

// Newton on the (m-1)-th derivative, where an m-fold root is simple. The
// coefficients are those of the chart polynomial, lowest power first.
complex polish_multiple_root(CVector c, int m, complex z) {
  for (int d = 1; d < m; ++d) {
    CVector next(c.size() - 1);
    for (int k = 1; k < c.size(); ++k) next(k - 1) = static_cast<double>(k) * c(k);
    c = std::move(next);
  }
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return z;
  auto eval = [&](complex t, complex& dp) {
    complex p = c(deg);
    dp = 0.0;
    for (int k = deg - 1; k >= 0; --k) {
      dp = dp * t + p;
      p = p * t + c(k);
    }
    return p;
  };
  complex dp;
  complex p = eval(z, dp);
  for (int it = 0; it < 20 && std::abs(p) > 0.0 && std::abs(dp) > 0.0; ++it) {
    const complex cand = z - p / dp;
    complex dpc;
    const complex pc = eval(cand, dpc);
    if (!(std::abs(pc) < std::abs(p))) break;
    z = cand;
    p = pc;
    dp = dpc;
  }
  return z;
}

// Phase-aligned Euclidean distance between two normalized amplitude vectors.
double aligned_distance(const CVector& a, const CVector& b) {
  const complex ov = b.dot(a);
  const complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : complex(1.0);
  return (a - ph * b).norm();
}

CVector amplitudes_from_points(SpinJ spin, const std::vector<SphereDirection>& pts) {
  const int n = spin.two_j();
  CVector c = homogeneous_coefficients(pts);
  CVector psi(n + 1);
  for (int k = 0; k <= n; ++k) psi(k) = c(k) / std::sqrt(binomial(n, k));
  return psi / psi.norm();
}

// Computed roots of a multiple root spread out like eps^(1/m). Collapse each
// cluster to its mean when the collapsed set reproduces the state at least
// as well as the spread one.
void collapse_clusters(SpinJ spin, const CVector& target, const CVector& coeffs,
                       std::vector<SphereDirection>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) return;
  constexpr double kClusterAngle = 0.35;
  std::vector<int> label(n, -1);
  int nlabels = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = nlabels;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        if (label[b] < 0 && angular_distance(pts[a], pts[b]) < kClusterAngle) {
          label[b] = nlabels;
          stack.push_back(b);
        }
      }
    }
    ++nlabels;
  }
  for (int l = 0; l < nlabels; ++l) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (label[i] == l) members.push_back(i);
    }
    if (members.size() < 2) continue;
    const double base = aligned_distance(target, amplitudes_from_points(spin, pts));
    // Average in whichever stereographic chart keeps the cluster bounded.
    Vec3 mean = Vec3::Zero();
    for (int i : members) mean += pts[i].unit_vector();
    const bool north_chart = mean.z() > 0.0;
    complex acc = 0.0;
    for (int i : members) {
      const Spinor s = spinor_of(pts[i]);
      if (north_chart) {
        acc += s.v / s.u;
      } else {
        acc += s.u / s.v;
      }
    }
    acc /= static_cast<double>(members.size());
    const int m = static_cast<int>(members.size());
    acc = north_chart ? polish_multiple_root(coeffs.reverse(), m, acc) : polish_multiple_root(coeffs, m, acc);
    SphereDirection centre;
    if (north_chart) {
      const double r = std::abs(acc);
      centre = r < 1.0 / kNorthPoleZeta ? SphereDirection(kPi, 0.0)
                                        : SphereDirection(kPi - 2.0 * std::atan(r), -std::arg(acc));
    } else {
      centre = point_of_root(acc);
    }
    std::vector<SphereDirection> trial = pts;
    for (int i : members) trial[i] = centre;
    const double collapsed = aligned_distance(target, amplitudes_from_points(spin, trial));
    if (collapsed <= std::max(10.0 * base, 1e-13)) pts = std::move(trial);
  }
}

}  // namespace

MajoranaConfig state_to_points(const PureState& psi) {
  const SpinJ spin = psi.spin();
  const int n = spin.two_j();
  const CVector& amps = psi.amplitudes();
  CVector a(n + 1);
  for (int k = 0; k <= n; ++k) a(k) = std::sqrt(binomial(n, k)) * amps(k);

  int deg = n;
  while (deg > 0 && std::abs(amps(deg)) < kZeroCoefficient) --deg;

  std::vector<SphereDirection> pts;
  pts.reserve(n);
  if (deg > 0) {
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (int k = 0; k < deg; ++k) companion(0, k) = -a(deg - 1 - k) / a(deg);
    for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
    for (int k = 0; k < deg; ++k) {
      const complex z = polish_root(a, deg, es.eigenvalues()(k));
      pts.push_back(point_of_root(z));
    }
  }
  while (static_cast<int>(pts.size()) < n) pts.emplace_back(kPi, 0.0);
  collapse_clusters(spin, amps, a, pts);
  return {spin, std::move(pts)};
}

PureState points_to_state(const MajoranaConfig& config) {
  return {config.spin, amplitudes_from_points(config.spin, config.points)};
}

double majorana_prefactor(const MajoranaConfig& config) {
  const int n = config.spin.two_j();
  const CVector c = homogeneous_coefficients(config.points);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += std::norm(c(k)) / binomial(n, k);
  return 1.0 / s;
}

double overlap_via_majorana(const MajoranaConfig& config, const SphereDirection& dir) {
  double prod = majorana_prefactor(config);
  for (const auto& p : config.points) {
    const double s = std::sin(0.5 * angular_distance(dir, p));
    prod *= s * s;
  }
  return prod;
}

CanonicalSignature canonical_signature(const MajoranaConfig& config) {
  CanonicalSignature sig;
  const auto& p = config.points;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) sig.angles.push_back(angular_distance(p[i], p[k]));
  }
  std::sort(sig.angles.begin(), sig.angles.end());
  return sig;
}

double signature_distance(const CanonicalSignature& a, const CanonicalSignature& b) {
  if (a.angles.size() != b.angles.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.angles.size(); ++i) m = std::max(m, std::abs(a.angles[i] - b.angles[i]));
  return m;
}

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials formulation, 1-based internally.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) assignment[p[j] - 1] = j - 1;
  }
  return assignment;
}

double matched_distance(const std::vector<SphereDirection>& a, const std::vector<SphereDirection>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("point sets differ in size");
  const std::size_t n = a.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) cost[i][k] = angular_distance(a[i], b[k]);
  }
  const auto asg = min_cost_assignment(cost);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, cost[i][asg[i]]);
  return worst;
}

MajoranaConfig rotate_points(const MajoranaConfig& config, const Vec3& axis, double angle) {
  const Eigen::Matrix3d r = rotation_matrix(axis, angle);
  std::vector<SphereDirection> out;
  out.reserve(config.points.size());
  for (const auto& p : config.points) out.push_back(SphereDirection::from_vector(r * p.unit_vector()));
  return {config.spin, std::move(out)};
}

}  // namespace qq
