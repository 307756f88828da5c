#include "qq/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

namespace qq {

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    out.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  return out;
}

Vec3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 v(g(rng), g(rng), g(rng));
    const double r = v.norm();
    if (r > 1e-12) return v / r;
  }
}

Eigen::Matrix3d random_rotation(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

std::vector<Vec3> sample_directions(int n, Rng& rng) {
  std::vector<Vec3> pts = fibonacci_sphere(n);
  const Eigen::Matrix3d r = random_rotation(rng);
  const double spacing = std::sqrt(4.0 * kPi / std::max(n, 1));
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (auto& p : pts) {
    Vec3 q = r * p;
    Vec3 t1 = q.unitOrthogonal();
    Vec3 t2 = q.cross(t1);
    q += spacing * (u(rng) * t1 + u(rng) * t2);
    p = q.normalized();
  }
  return pts;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SphereMinimum minimize_on_sphere(const std::function<double(const Vec3&)>& f, const Vec3& start, int max_iter,
                                 double max_step) {
  Vec3 n = start.normalized();
  double fn = f(n);
  constexpr double h = 1e-4;
  for (int it = 0; it < max_iter; ++it) {
    const Vec3 e1 = n.unitOrthogonal();
    const Vec3 e2 = n.cross(e1);
    auto at = [&](double a, double b) { return f((n + a * e1 + b * e2).normalized()); };
    const double fpp = at(h, 0), fmp = at(-h, 0), fpq = at(0, h), fmq = at(0, -h);
    const double fxy = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
    Eigen::Vector2d g((fpp - fmp) / (2 * h), (fpq - fmq) / (2 * h));
    Eigen::Matrix2d hess;
    hess << (fpp - 2 * fn + fmp) / (h * h), fxy, fxy, (fpq - 2 * fn + fmq) / (h * h);
    if (g.norm() < 1e-10) break;
    Eigen::Vector2d step;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
    if (es.eigenvalues().minCoeff() > 1e-8) {
      step = -hess.ldlt().solve(g);
    } else {
      const double scale = std::max(std::abs(es.eigenvalues().maxCoeff()), 1.0);
      step = -g / scale;
    }
    if (step.norm() > max_step) step *= max_step / step.norm();
    bool moved = false;
    for (int ls = 0; ls < 12; ++ls) {
      const Vec3 cand = (n + step.x() * e1 + step.y() * e2).normalized();
      const double fc = f(cand);
      if (fc < fn) {
        n = cand;
        fn = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved || step.norm() < 1e-10) break;
  }
  return {n, fn};
}

SphereMinimum global_minimize_on_sphere(const std::function<double(const Vec3&)>& f, int grid_size, int refine) {
  const std::vector<Vec3> grid = fibonacci_sphere(grid_size);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(refine, 1)), grid.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  SphereMinimum best{grid[order[0]], vals[order[0]]};
  for (std::size_t r = 0; r < k; ++r) {
    const SphereMinimum m = minimize_on_sphere(f, grid[order[r]]);
    if (m.value < best.value) best = m;
  }
  return best;
}

}  // namespace qq
