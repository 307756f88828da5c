#include "qq/quantumness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "qq/kernels.hpp"
#include "qq/sphere.hpp"

namespace qq {

CMatrix ClassicalMixture::matrix() const {
  const int d = spin.dim();
  CMatrix m = CMatrix::Zero(d, d);
  CVector a;
  for (const auto& at : atoms) {
    coherent_amplitudes(spin, at.dir, a);
    m.noalias() += at.weight * (a * a.adjoint());
  }
  return m;
}

void ClassicalMixture::validate() const {
  if (atoms.empty()) throw std::invalid_argument("classical mixture has no atoms");
  double s = 0.0;
  for (const auto& at : atoms) {
    if (!(at.weight >= 0.0)) throw std::invalid_argument("classical mixture has a negative weight");
    s += at.weight;
  }
  if (std::abs(s - 1.0) > 1e-10) {
    throw std::invalid_argument("classical mixture weights sum to " + std::to_string(s));
  }
}

void QPConfig::validate() const {
  if (n_directions < 1 || n_rounds < 1 || stall_rounds < 1 || certify_rounds < 1 || refine_candidates < 0) {
    throw std::invalid_argument("QPConfig counts must be positive");
  }
  if (!(merge_threshold > 0.0 && merge_threshold < kPi / 4)) {
    throw std::invalid_argument("merge_threshold must lie in (0, pi/4)");
  }
  if (!(weight_floor > 0.0) || !(convergence_tol > 0.0)) {
    throw std::invalid_argument("weight_floor and convergence_tol must be positive");
  }
}

double QPResult::q() const { return std::sqrt(std::max(q_squared, 0.0)); }

// ---------------------------------------------------------------------------

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  return (v.array() - tau).max(0.0).matrix();
}

namespace {

double fw_gap(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear, const Eigen::VectorXd& x) {
  const Eigen::VectorXd g = 2.0 * (gram * x - linear);
  return std::max(0.0, g.dot(x) - g.minCoeff());
}

double objective(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear, double c, const Eigen::VectorXd& x) {
  return x.dot(gram * x) - 2.0 * linear.dot(x) + c;
}

// Affine minimizer of ||sum v_s x_s|| with sum v_s = 1, from the Gram block.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& ks) {
  const Eigen::Index m = ks.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  const Eigen::MatrixXd a = ks + ones * ones.transpose();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  Eigen::VectorXd y;
  bool ok = ldlt.info() == Eigen::Success && ldlt.isPositive();
  if (ok) {
    y = ldlt.solve(ones);
    ok = y.allFinite() && (a * y - ones).norm() < 1e-8 * std::max(1.0, a.norm());
  }
  if (!ok) y = a.completeOrthogonalDecomposition().solve(ones);
  return y / y.sum();
}

}  // namespace

SimplexQPResult solve_simplex_qp(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear, double constant) {
  const Eigen::Index n = gram.rows();
  if (n == 0) throw std::invalid_argument("empty support");
  // Lifted inner products <P_i - rho, P_k - rho>.
  Eigen::MatrixXd k = gram;
  k.colwise() -= linear;
  k.rowwise() -= linear.transpose();
  k.array() += constant;

  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  const double tol_major = 1e-15 * scale;
  constexpr double tol_weight = 1e-14;

  std::vector<Eigen::Index> corral;
  Eigen::VectorXd w;
  {
    Eigen::Index i0 = 0;
    k.diagonal().minCoeff(&i0);
    corral.push_back(i0);
    w = Eigen::VectorXd::Ones(1);
  }

  auto block = [&](const std::vector<Eigen::Index>& s) {
    Eigen::MatrixXd b(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(s.size()));
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t c = 0; c < s.size(); ++c) b(a, c) = k(s[a], s[c]);
    }
    return b;
  };

  int iterations = 0;
  const int max_major = 50 * static_cast<int>(n) + 200;
  double last_norm = std::numeric_limits<double>::infinity();
  for (int major = 0; major < max_major; ++major) {
    ++iterations;
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
    for (std::size_t s = 0; s < corral.size(); ++s) xi += w(static_cast<Eigen::Index>(s)) * k.col(corral[s]);
    double xx = 0.0;
    for (std::size_t s = 0; s < corral.size(); ++s) xx += w(static_cast<Eigen::Index>(s)) * xi(corral[s]);
    Eigen::Index best = 0;
    const double lo = xi.minCoeff(&best);
    if (xx - lo <= tol_major) break;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
    if (xx > last_norm + tol_major) break;  // no progress; rounding has taken over
    last_norm = xx;

    corral.push_back(best);
    w.conservativeResize(static_cast<Eigen::Index>(corral.size()));
    w(w.size() - 1) = 0.0;

    for (int minor = 0; minor < 4 * static_cast<int>(n) + 10; ++minor) {
      const Eigen::VectorXd v = affine_minimizer(block(corral));
      if (v.minCoeff() > tol_weight) {
        w = v;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index s = 0; s < v.size(); ++s) {
        if (v(s) <= tol_weight && w(s) - v(s) > 0.0) theta = std::min(theta, w(s) / (w(s) - v(s)));
      }
      w = theta * v + (1.0 - theta) * w;
      std::vector<Eigen::Index> keep_idx;
      std::vector<double> keep_w;
      for (Eigen::Index s = 0; s < w.size(); ++s) {
        if (w(s) > tol_weight) {
          keep_idx.push_back(corral[static_cast<std::size_t>(s)]);
          keep_w.push_back(w(s));
        }
      }
      if (keep_idx.empty()) {
        // Degenerate step; fall back to the newest point alone.
        keep_idx.push_back(corral.back());
        keep_w.push_back(1.0);
      }
      corral = std::move(keep_idx);
      w = Eigen::Map<Eigen::VectorXd>(keep_w.data(), static_cast<Eigen::Index>(keep_w.size()));
      w /= w.sum();
    }
  }

  SimplexQPResult r;
  r.weights = Eigen::VectorXd::Zero(n);
  for (std::size_t s = 0; s < corral.size(); ++s) r.weights(corral[s]) = std::max(0.0, w(static_cast<Eigen::Index>(s)));
  r.weights /= r.weights.sum();
  r.objective = std::max(0.0, objective(gram, linear, constant, r.weights));
  r.gap = fw_gap(gram, linear, r.weights);
  r.iterations = iterations;
  return r;
}

SimplexQPResult solve_simplex_qp_projected_gradient(const Eigen::MatrixXd& gram, const Eigen::VectorXd& linear,
                                                    double constant, int max_iter, double tol) {
  const Eigen::Index n = gram.rows();
  if (n == 0) throw std::invalid_argument("empty support");
  // Lipschitz constant of the gradient 2(Gx - h): 2 * lambda_max(G) <= 2 * max row sum.
  const double lip = 2.0 * gram.cwiseAbs().rowwise().sum().maxCoeff();
  const double step = 1.0 / std::max(lip, 1e-300);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd y = x;
  double t = 1.0;
  double fx = objective(gram, linear, constant, x);
  int it = 0;
  for (; it < max_iter; ++it) {
    const Eigen::VectorXd g = 2.0 * (gram * y - linear);
    const Eigen::VectorXd xn = project_to_simplex(y - step * g);
    const double fn = objective(gram, linear, constant, xn);
    if (fn > fx) {
      // adaptive restart
      y = x;
      t = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = xn + ((t - 1.0) / tn) * (xn - x);
    x = xn;
    fx = fn;
    t = tn;
    if (it % 16 == 0 && fw_gap(gram, linear, x) < tol) break;
  }
  SimplexQPResult r;
  r.weights = x;
  r.objective = std::max(0.0, fx);
  r.gap = fw_gap(gram, linear, x);
  r.iterations = it;
  return r;
}

// ---------------------------------------------------------------------------

double mixture_distance_sq(const DensityMatrix& rho, const ClassicalMixture& mixture) {
  return hs_distance_sq(rho.matrix(), mixture.matrix());
}

FixedSupportResult qp_fixed_support(const DensityMatrix& rho, const std::vector<SphereDirection>& directions) {
  if (directions.empty()) throw std::invalid_argument("empty support");
  std::vector<Vec3> dirs;
  dirs.reserve(directions.size());
  for (const auto& d : directions) dirs.push_back(d.unit_vector());
  const Eigen::MatrixXd g = kernels::gram_matrix(rho.spin(), dirs);
  const Eigen::VectorXd h = kernels::husimi_values(rho.matrix(), rho.spin(), dirs);
  const SimplexQPResult qp = solve_simplex_qp(g, h, rho.purity());
  ClassicalMixture mix{rho.spin(), {}};
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (qp.weights(static_cast<Eigen::Index>(i)) > 0.0) mix.atoms.push_back({qp.weights(static_cast<Eigen::Index>(i)), directions[i]});
  }
  return {qp.weights, mixture_distance_sq(rho, mix), qp.gap};
}

namespace {

struct Support {
  std::vector<Vec3> dirs;
  Eigen::VectorXd weights;
};

Support solve_on(const DensityMatrix& rho, std::vector<Vec3> dirs, double floor, double* gap) {
  const Eigen::MatrixXd g = kernels::gram_matrix(rho.spin(), dirs);
  const Eigen::VectorXd h = kernels::husimi_values(rho.matrix(), rho.spin(), dirs);
  const SimplexQPResult qp = solve_simplex_qp(g, h, rho.purity());
  if (gap != nullptr) *gap = qp.gap;
  Support s;
  std::vector<double> w;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double wi = qp.weights(static_cast<Eigen::Index>(i));
    if (wi > floor) {
      s.dirs.push_back(dirs[i]);
      w.push_back(wi);
    }
  }
  if (s.dirs.empty()) {
    Eigen::Index best = 0;
    qp.weights.maxCoeff(&best);
    s.dirs.push_back(dirs[static_cast<std::size_t>(best)]);
    w.push_back(1.0);
  }
  s.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  s.weights /= s.weights.sum();
  return s;
}

// Greedy merge, heaviest atom first: everything within `threshold` of a
// cluster head joins it at the weighted chordal mean.
std::vector<Vec3> merge_close(const Support& s, double threshold) {
  const std::size_t n = s.dirs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.weights(static_cast<Eigen::Index>(a)) > s.weights(static_cast<Eigen::Index>(b));
  });
  std::vector<char> used(n, 0);
  std::vector<Vec3> out;
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t a = order[oi];
    if (used[a]) continue;
    used[a] = 1;
    Vec3 acc = s.weights(static_cast<Eigen::Index>(a)) * s.dirs[a];
    for (std::size_t oj = oi + 1; oj < n; ++oj) {
      const std::size_t b = order[oj];
      if (!used[b] && angular_distance(s.dirs[a], s.dirs[b]) < threshold) {
        used[b] = 1;
        acc += s.weights(static_cast<Eigen::Index>(b)) * s.dirs[b];
      }
    }
    out.push_back(acc.norm() > 0.0 ? Vec3(acc.normalized()) : s.dirs[a]);
  }
  return out;
}

ClassicalMixture to_mixture(SpinJ spin, const Support& s) {
  ClassicalMixture m{spin, {}};
  for (std::size_t i = 0; i < s.dirs.size(); ++i) {
    m.atoms.push_back({s.weights(static_cast<Eigen::Index>(i)), SphereDirection::from_vector(s.dirs[i])});
  }
  return m;
}

// rho = (1 + r.sigma)/2 splits exactly over the coherent states at +-r.
QPResult spin_half_exact(const DensityMatrix& rho) {
  const SpinOperators ops = spin_operators(rho.spin());
  Vec3 r(2.0 * (rho.matrix() * ops.jx).trace().real(), 2.0 * (rho.matrix() * ops.jy).trace().real(),
         2.0 * (rho.matrix() * ops.jz).trace().real());
  const double len = std::min(r.norm(), 1.0);
  const Vec3 n = len > 1e-15 ? Vec3(r.normalized()) : Vec3(0, 0, -1);
  QPResult out;
  out.mixture.spin = rho.spin();
  out.mixture.atoms.push_back({0.5 * (1.0 + len), SphereDirection::from_vector(n)});
  if (len < 1.0) out.mixture.atoms.push_back({0.5 * (1.0 - len), SphereDirection::from_vector(-n)});
  out.q_squared = mixture_distance_sq(rho, out.mixture);
  out.rounds_used = 0;
  out.converged = true;
  out.trace.push_back(out.q_squared);
  return out;
}

}  // namespace

QPResult quantumness(const DensityMatrix& rho, const QPConfig& cfg, const ClassicalMixture* warm_start) {
  cfg.validate();
  const SpinJ spin = rho.spin();
  if (spin.two_j() == 0) {
    QPResult out;
    out.mixture = {spin, {{1.0, SphereDirection(0.0, 0.0)}}};
    out.converged = true;
    out.trace.push_back(0.0);
    return out;
  }
  if (spin.two_j() == 1) return spin_half_exact(rho);

  Rng rng(cfg.rng_seed);
  Support best;
  double best_q2 = std::numeric_limits<double>::infinity();
  CMatrix reduced;  // rho_c - rho for the current best
  if (warm_start != nullptr && warm_start->spin == spin && !warm_start->atoms.empty()) {
    std::vector<Vec3> dirs;
    for (const auto& a : warm_start->atoms) dirs.push_back(a.dir.unit_vector());
    best = solve_on(rho, std::move(dirs), cfg.weight_floor, nullptr);
    const ClassicalMixture m = to_mixture(spin, best);
    best_q2 = mixture_distance_sq(rho, m);
    reduced = m.matrix() - rho.matrix();
  }

  QPResult out;
  int stall = 0;
  int certified = 0;
  double last_gap = std::numeric_limits<double>::infinity();
  int round = 0;
  for (; round < cfg.n_rounds; ++round) {
    std::vector<Vec3> cands = best.dirs;
    std::vector<Vec3> fresh = sample_directions(cfg.n_directions, rng);

    bool have_gap = false;
    if (!best.dirs.empty()) {
      // Reduced cost <a|rho_c - rho|a>; its minimum over the sphere is the
      // Frank-Wolfe vertex. Refine from the best fresh samples and from the
      // current atoms.
      CVector scratch(spin.dim());
      auto cost = [&](const Vec3& n) {
        coherent_amplitudes(spin, n, scratch);
        return quadratic_form(reduced, scratch);
      };
      const Eigen::VectorXd vals = kernels::husimi_values(reduced, spin, fresh);
      std::vector<std::size_t> order(fresh.size());
      std::iota(order.begin(), order.end(), 0);
      const std::size_t nref = std::min<std::size_t>(static_cast<std::size_t>(cfg.refine_candidates), order.size());
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(nref), order.end(),
                        [&](std::size_t a, std::size_t b) { return vals(static_cast<Eigen::Index>(a)) < vals(static_cast<Eigen::Index>(b)); });
      double lo = vals.minCoeff();
      for (std::size_t r = 0; r < nref; ++r) {
        const SphereMinimum m = minimize_on_sphere(cost, fresh[order[r]]);
        lo = std::min(lo, m.value);
        cands.push_back(m.point);
      }
      for (const Vec3& a : best.dirs) {
        const SphereMinimum m = minimize_on_sphere(cost, a, 8, 0.05);
        lo = std::min(lo, m.value);
        if (angular_distance(m.point, a) > 1e-12) cands.push_back(m.point);
      }
      const double on_support = (reduced * to_mixture(spin, best).matrix()).trace().real();
      last_gap = std::max(0.0, 2.0 * (on_support - lo));
      have_gap = true;
    }
    cands.insert(cands.end(), fresh.begin(), fresh.end());

    const Support solved = solve_on(rho, std::move(cands), cfg.weight_floor, nullptr);
    double gap_support = 0.0;
    const Support merged = solve_on(rho, merge_close(solved, cfg.merge_threshold), cfg.weight_floor, &gap_support);
    const ClassicalMixture m = to_mixture(spin, merged);
    const double q2 = mixture_distance_sq(rho, m);

    double improvement = 0.0;
    if (q2 <= best_q2) {
      improvement = std::isfinite(best_q2) ? best_q2 - q2 : std::numeric_limits<double>::infinity();
      best = merged;
      best_q2 = q2;
      reduced = m.matrix() - rho.matrix();
      out.kkt_residual = gap_support;
    }
    out.trace.push_back(best_q2);

    if (have_gap && last_gap <= cfg.convergence_tol) {
      ++certified;
    } else {
      certified = 0;
    }
    if (certified >= cfg.certify_rounds || best_q2 <= 1e-30) {
      out.converged = true;
      ++round;
      break;
    }
    stall = improvement < cfg.convergence_tol ? stall + 1 : 0;
    if (stall >= cfg.stall_rounds) {
      ++round;
      break;
    }
  }
  out.rounds_used = round;
  out.mixture = to_mixture(spin, best);
  out.q_squared = best_q2;
  out.dual_gap = last_gap;
  return out;
}

ClassicalMixture closest_classical(const DensityMatrix& rho, const QPConfig& cfg) {
  return quantumness(rho, cfg).mixture;
}

}  // namespace qq
