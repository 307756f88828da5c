#include "qq/qq_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <boost/math/tools/minima.hpp>

#include "qq/sphere.hpp"

namespace qq {

QPConfig SearchConfig::search_inner_defaults() {
  QPConfig c;
  c.n_directions = 60;
  c.n_rounds = 400;
  c.convergence_tol = 1e-10;
  c.stall_rounds = 20;
  c.certify_rounds = 2;
  return c;
}

void SearchConfig::validate() const {
  if (n_restarts < 0 || simplex_max_evals < 0 || polish_max_iter < 1) {
    throw std::invalid_argument("SearchConfig counts must be non-negative");
  }
  if (!(polish_tol > 0.0)) throw std::invalid_argument("polish_tol must be positive");
  inner.validate();
  final_inner.validate();
}

int SearchConfig::restarts_for(SpinJ spin) const { return n_restarts > 0 ? n_restarts : 8 * spin.two_j(); }

QPResult pure_quantumness(const PureState& psi, const QPConfig& inner, const ClassicalMixture* warm) {
  return quantumness(DensityMatrix::from_pure(psi), inner, warm);
}

EigenCheck eigen_check(const PureState& psi, const ClassicalMixture& mixture) {
  if (psi.spin() != mixture.spin) throw std::invalid_argument("dimension mismatch");
  const CMatrix rc = mixture.matrix();
  const CVector& v = psi.amplitudes();
  const CVector rv = rc * v;
  const double e = v.dot(rv).real();
  EigenCheck out;
  out.residual = (rv - e * v).norm();
  out.eigenvalue = e;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rc + rc.adjoint()));
  // eigenvalues ascend; rank 0 is the largest
  Eigen::Index best = 0;
  double best_ov = -1.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double ov = std::abs(es.eigenvectors().col(k).dot(v));
    if (ov > best_ov) {
      best_ov = ov;
      best = k;
    }
  }
  out.eigen_index = static_cast<int>(es.eigenvalues().size() - 1 - best);
  return out;
}

// ---------------------------------------------------------------------------

MajoranaConfig config_from_gauge(SpinJ spin, const std::vector<double>& p) {
  const int n = spin.two_j();
  const std::size_t expected = n >= 2 ? static_cast<std::size_t>(2 * n - 3) : 0;
  if (p.size() != expected) throw std::invalid_argument("gauge parameter vector has the wrong length");
  std::vector<SphereDirection> pts;
  if (n >= 1) pts.emplace_back(0.0, 0.0);
  if (n >= 2) pts.push_back(SphereDirection::from_angles(p[0], 0.0));
  for (int k = 2; k < n; ++k) {
    const std::size_t o = 1 + 2 * static_cast<std::size_t>(k - 2);
    pts.push_back(SphereDirection::from_angles(p[o], p[o + 1]));
  }
  return {spin, std::move(pts)};
}

std::vector<double> gauge_from_config(const MajoranaConfig& c) {
  std::vector<double> p;
  const int n = c.spin.two_j();
  if (n >= 2) p.push_back(c.points[1].theta_bar);
  for (int k = 2; k < n; ++k) {
    p.push_back(c.points[static_cast<std::size_t>(k)].theta_bar);
    p.push_back(c.points[static_cast<std::size_t>(k)].phi);
  }
  return p;
}

MajoranaConfig to_gauge(const MajoranaConfig& c, int a, int b) {
  const int n = static_cast<int>(c.points.size());
  if (n == 0) return c;
  const Vec3 south(0, 0, -1);
  const Eigen::Quaterniond q1 = Eigen::Quaterniond::FromTwoVectors(c.points[static_cast<std::size_t>(a)].unit_vector(), south);
  Eigen::Matrix3d r = q1.toRotationMatrix();
  if (b >= 0 && b < n && b != a) {
    const Vec3 vb = r * c.points[static_cast<std::size_t>(b)].unit_vector();
    if (std::hypot(vb.x(), vb.y()) > 1e-12) {
      const double ang = std::atan2(vb.y(), vb.x());
      r = Eigen::AngleAxisd(-ang, Vec3::UnitZ()).toRotationMatrix() * r;
    }
  }
  std::vector<SphereDirection> pts;
  pts.reserve(c.points.size());
  std::vector<int> order;
  order.push_back(a);
  if (b >= 0 && b < n && b != a) order.push_back(b);
  for (int i = 0; i < n; ++i) {
    if (i != a && i != b) order.push_back(i);
  }
  for (int i : order) {
    Vec3 v = r * c.points[static_cast<std::size_t>(i)].unit_vector();
    pts.push_back(SphereDirection::from_vector(v));
  }
  pts[0] = SphereDirection(0.0, 0.0);
  // The rotation leaves point b at phi = 0 up to rounding.
  if (order.size() > 1 && order[1] == b) pts[1].phi = 0.0;
  return {c.spin, std::move(pts)};
}

namespace {

// Black-box objective with warm-started inner solves.
class Objective {
 public:
  Objective(QPConfig inner, std::uint64_t seed) : inner_(inner), seed_(seed) {}

  QPResult operator()(const PureState& psi) {
    QPConfig c = inner_;
    c.rng_seed = derive_seed(seed_, static_cast<std::uint64_t>(count_++));
    QPResult r = pure_quantumness(psi, c, has_warm_ ? &warm_ : nullptr);
    warm_ = r.mixture;
    has_warm_ = true;
    return r;
  }

  long count() const { return count_; }

 private:
  QPConfig inner_;
  std::uint64_t seed_;
  long count_ = 0;
  ClassicalMixture warm_;
  bool has_warm_ = false;
};

// Nelder-Mead minimization with dimension-adaptive coefficients.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                double step, int max_evals, double* best_value) {
  const std::size_t n = x0.size();
  if (n == 0) {
    *best_value = f(x0);
    return x0;
  }
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;
  std::vector<std::vector<double>> s(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step;
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fs[i] = f(s[i]);
    ++evals;
  }
  std::vector<std::size_t> idx(n + 1);
  while (evals < max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t lo = idx[0], hi = idx[n], nh = idx[n - 1];
    if (std::abs(fs[hi] - fs[lo]) < 1e-11) break;
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) c[k] += s[idx[i]][k] / dn;
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = c[k] + t * (s[hi][k] - c[k]);
      return p;
    };
    const std::vector<double> xr = along(-alpha);
    const double fr = f(xr);
    ++evals;
    if (fr < fs[lo]) {
      const std::vector<double> xe = along(-alpha * beta);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        s[hi] = xe;
        fs[hi] = fe;
      } else {
        s[hi] = xr;
        fs[hi] = fr;
      }
      continue;
    }
    if (fr < fs[nh]) {
      s[hi] = xr;
      fs[hi] = fr;
      continue;
    }
    const bool outside = fr < fs[hi];
    const std::vector<double> xc = along(outside ? -alpha * gamma : gamma);
    const double fc = f(xc);
    ++evals;
    if (fc < std::min(fr, fs[hi])) {
      s[hi] = xc;
      fs[hi] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t t = idx[i];
      for (std::size_t k = 0; k < n; ++k) s[t][k] = s[lo][k] + delta * (s[t][k] - s[lo][k]);
      fs[t] = f(s[t]);
      ++evals;
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  *best_value = fs[best];
  return s[best];
}

Eigen::VectorXd to_real(const CVector& v) {
  Eigen::VectorXd r(2 * v.size());
  r << v.real(), v.imag();
  return r;
}

CVector to_complex(const Eigen::VectorXd& r) {
  const Eigen::Index d = r.size() / 2;
  CVector v(d);
  for (Eigen::Index k = 0; k < d; ++k) v(k) = complex(r(k), r(d + k));
  return v;
}

struct Ascent {
  PureState state;
  QPResult inner;
};

// L-BFGS ascent of Q^2 on the unit sphere of amplitudes. The gradient is
// -4 (rho_c psi - E psi) with rho_c held at the inner optimum.
Ascent polish(const PureState& start, Objective& obj, const SearchConfig& cfg) {
  const SpinJ spin = start.spin();
  PureState psi = start;
  QPResult cur = obj(psi);
  auto gradient = [&](const PureState& p, const QPResult& r) {
    const CMatrix rc = r.mixture.matrix();
    const CVector& v = p.amplitudes();
    const CVector rv = rc * v;
    const double e = v.dot(rv).real();
    // descent direction of -Q^2 is -grad; store grad of -Q^2
    return to_real(4.0 * (rv - e * v));
  };
  Eigen::VectorXd g = gradient(psi, cur);
  std::vector<Eigen::VectorXd> ss, ys;
  constexpr std::size_t kMemory = 8;
  std::vector<double> history{cur.q_squared};
  int failures = 0;
  for (int it = 0; it < cfg.polish_max_iter; ++it) {
    if (g.norm() < 1e-7) break;
    // two-loop recursion
    Eigen::VectorXd q = g;
    std::vector<double> al(ss.size());
    for (std::size_t i = ss.size(); i-- > 0;) {
      al[i] = ss[i].dot(q) / ys[i].dot(ss[i]);
      q -= al[i] * ys[i];
    }
    if (!ss.empty()) {
      q *= ss.back().dot(ys.back()) / ys.back().squaredNorm();
    } else {
      q *= 0.05 / std::max(g.norm(), 1e-12);
    }
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double b = ys[i].dot(q) / ys[i].dot(ss[i]);
      q += (al[i] - b) * ss[i];
    }
    Eigen::VectorXd dir = -q;
    double slope = g.dot(dir);
    if (slope >= 0.0) {
      dir = -g * (0.05 / g.norm());
      slope = g.dot(dir);
      ss.clear();
      ys.clear();
    }
    const double max_len = 0.5;
    if (dir.norm() > max_len) {
      slope *= max_len / dir.norm();
      dir *= max_len / dir.norm();
    }
    const Eigen::VectorXd x = to_real(psi.amplitudes());
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 25; ++ls) {
      PureState trial(spin, to_complex(x + t * dir));
      QPResult r = obj(trial);
      if (-r.q_squared <= -cur.q_squared + 1e-4 * t * slope) {
        const Eigen::VectorXd gn = gradient(trial, r);
        const Eigen::VectorXd sn = to_real(trial.amplitudes()) - x;
        const Eigen::VectorXd yn = gn - g;
        if (sn.dot(yn) > 1e-14) {
          ss.push_back(sn);
          ys.push_back(yn);
          if (ss.size() > kMemory) {
            ss.erase(ss.begin());
            ys.erase(ys.begin());
          }
        }
        psi = trial;
        cur = std::move(r);
        g = gn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      ss.clear();
      ys.clear();
      if (++failures >= 2) break;
      continue;
    }
    failures = 0;
    history.push_back(cur.q_squared);
    if (history.size() > 5) {
      const double gain = history.back() - history[history.size() - 6];
      if (gain < cfg.polish_tol && g.norm() < 1e-3) break;
    }
  }
  return {psi, cur};
}

struct RestartOutcome {
  PureState state{SpinJ(1), CVector::Ones(2)};
  QPResult inner;
  long evaluations = 0;
};

RestartOutcome run_restart(SpinJ spin, const SearchConfig& cfg, std::uint64_t seed, const MajoranaConfig* start,
                           bool use_simplex) {
  Objective obj(cfg.inner, derive_seed(seed, 1));
  MajoranaConfig init;
  if (start != nullptr) {
    init = *start;
  } else {
    Rng rng(derive_seed(seed, 0));
    std::vector<SphereDirection> pts;
    for (int i = 0; i < spin.two_j(); ++i) pts.push_back(SphereDirection::from_vector(random_unit_vector(rng)));
    init = to_gauge(MajoranaConfig(spin, pts));
  }
  PureState psi = points_to_state(init);
  if (use_simplex && spin.two_j() >= 2) {
    const MajoranaConfig g0 = to_gauge(init);
    std::vector<double> p0 = gauge_from_config(g0);
    const int budget = cfg.simplex_max_evals > 0 ? cfg.simplex_max_evals : 20 * static_cast<int>(p0.size());
    auto f = [&](const std::vector<double>& p) { return -obj(points_to_state(config_from_gauge(spin, p))).q_squared; };
    double fbest = 0.0;
    const std::vector<double> pbest = nelder_mead(f, p0, cfg.simplex_initial_step, budget, &fbest);
    psi = points_to_state(config_from_gauge(spin, pbest));
  }
  Ascent a = polish(psi, obj, cfg);
  return {a.state, a.inner, obj.count()};
}

QQResult finish(SpinJ spin, const PureState& best_state, const QPResult& warm, const SearchConfig& cfg) {
  QQResult out;
  QPConfig fin = cfg.final_inner;
  fin.rng_seed = derive_seed(cfg.rng_seed, 0xF1A1);
  QPResult r = pure_quantumness(best_state, fin, &warm.mixture);
  MajoranaConfig config = state_to_points(best_state);
  PureState state = best_state;

  if (cfg.symmetrize_result && spin.two_j() >= 2) {
    const MajoranaConfig gauged = to_gauge(config);
    const MajoranaConfig sym = symmetrize(gauged, cfg.symmetrize_tol, fin);
    if (matched_distance(sym.points, gauged.points) > 0.0) {
      const PureState s = points_to_state(sym);
      const QPResult rs = pure_quantumness(s, fin);
      if (rs.q_squared >= r.q_squared - 1e-8) {
        config = sym;
        state = s;
        r = rs;
      }
    }
  }
  out.config = config;
  out.state = state;
  out.q_squared = r.q_squared;
  out.mixture = r.mixture;
  out.dual_gap = r.dual_gap;
  const EigenCheck ec = eigen_check(state, r.mixture);
  out.eigen_residual = ec.residual;
  out.eigen_index = ec.eigen_index;
  return out;
}

QQResult trivial_result(SpinJ spin) {
  QQResult out;
  std::vector<SphereDirection> pts(static_cast<std::size_t>(spin.two_j()), SphereDirection(0.0, 0.0));
  out.config = MajoranaConfig(spin, pts);
  if (spin.two_j() == 0) {
    out.state = PureState(spin, CVector::Ones(1));
  } else {
    out.state = points_to_state(out.config);
  }
  const QPResult r = pure_quantumness(out.state, QPConfig{});
  out.q_squared = r.q_squared;
  out.mixture = r.mixture;
  const EigenCheck ec = eigen_check(out.state, r.mixture);
  out.eigen_residual = ec.residual;
  out.eigen_index = ec.eigen_index;
  return out;
}

}  // namespace

QQResult qq_search(SpinJ spin, const SearchConfig& cfg) {
  cfg.validate();
  if (spin.two_j() > 10) throw std::invalid_argument("qq_search supports two_j <= 10");
  if (spin.two_j() <= 1) return trivial_result(spin);

  const int restarts = cfg.restarts_for(spin);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < restarts; ++r) {
    outcomes[static_cast<std::size_t>(r)] =
        run_restart(spin, cfg, derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(r) + 17), nullptr, true);
  }

  std::size_t best = 0;
  long evals = 0;
  std::vector<double> values;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    evals += outcomes[r].evaluations;
    values.push_back(outcomes[r].inner.q_squared);
    if (outcomes[r].inner.q_squared > outcomes[best].inner.q_squared) best = r;
  }
  std::vector<CanonicalSignature> sigs;
  for (const auto& o : outcomes) {
    const CanonicalSignature s = canonical_signature(state_to_points(o.state));
    bool seen = false;
    for (const auto& t : sigs) seen = seen || signature_distance(s, t) < 1e-2;
    if (!seen) sigs.push_back(s);
  }

  QQResult out = finish(spin, outcomes[best].state, outcomes[best].inner, cfg);
  out.restarts_used = restarts;
  out.distinct_optima = static_cast<int>(sigs.size());
  out.evaluations = evals;
  out.restart_values = std::move(values);
  return out;
}

QQResult qq_refine(const MajoranaConfig& start, const SearchConfig& cfg) {
  cfg.validate();
  const SpinJ spin = start.spin;
  if (spin.two_j() <= 1) return trivial_result(spin);
  RestartOutcome o = run_restart(spin, cfg, derive_seed(cfg.rng_seed, 3), &start, false);
  SearchConfig c = cfg;
  c.symmetrize_result = false;
  QQResult out = finish(spin, o.state, o.inner, c);
  out.restarts_used = 1;
  out.distinct_optima = 1;
  out.evaluations = o.evaluations;
  out.restart_values = {o.inner.q_squared};
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Nearest k*pi/q with q <= 12 and k in [0, kmax_factor * q].
std::optional<double> snap_rational(double v, double tol, int kmax_factor) {
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int q = 1; q <= 12; ++q) {
    for (int k = 0; k <= kmax_factor * q; ++k) {
      const double c = kPi * k / q;
      const double err = std::abs(v - c);
      if (err < best_err - 1e-15) {
        best_err = err;
        best = c;
      }
    }
  }
  if (best_err <= tol) return best;
  return std::nullopt;
}

// Replaces runs of values closer than tol by their mean; returns the number
// of values that joined a cluster with at least one other value.
void cluster_values(std::vector<double>& vals, const std::vector<std::size_t>& members, double tol) {
  std::vector<std::size_t> order = members;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && vals[order[end]] - vals[order[end - 1]] < tol) ++end;
    if (end - start > 1) {
      double mean = 0.0;
      for (std::size_t i = start; i < end; ++i) mean += vals[order[i]];
      mean /= static_cast<double>(end - start);
      for (std::size_t i = start; i < end; ++i) vals[order[i]] = mean;
    }
    start = end;
  }
}

MajoranaConfig snap_config(const MajoranaConfig& c, double tol) {
  const std::size_t n = c.points.size();
  std::vector<double> tb(n), ph(n);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    tb[i] = c.points[i].theta_bar;
    ph[i] = c.points[i].phi;
  }
  cluster_values(tb, all, tol);
  for (auto& t : tb) {
    if (auto s = snap_rational(t, tol, 1)) t = *s;
  }
  std::vector<std::size_t> off_pole;
  for (std::size_t i = 0; i < n; ++i) {
    if (tb[i] > 0.0 && tb[i] < kPi) off_pole.push_back(i);
  }
  cluster_values(ph, off_pole, tol);
  for (std::size_t i : off_pole) {
    if (auto s = snap_rational(ph[i], tol, 2)) ph[i] = *s;
  }
  std::vector<SphereDirection> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pole = tb[i] <= 0.0 || tb[i] >= kPi;
    pts.emplace_back(std::clamp(tb[i], 0.0, kPi), pole ? 0.0 : ph[i]);
  }
  return {c.spin, std::move(pts)};
}

int exact_coordinates(const MajoranaConfig& c) {
  int count = 0;
  for (const auto& p : c.points) {
    if (snap_rational(p.theta_bar, 1e-13, 1)) ++count;
    if (snap_rational(p.phi, 1e-13, 2)) ++count;
  }
  return count;
}

}  // namespace

MajoranaConfig symmetrize(const MajoranaConfig& config, double tol, const QPConfig& inner) {
  if (!(tol >= 0.0 && tol <= 0.1)) throw std::invalid_argument("symmetrize tolerance must lie in [0, 0.1]");
  const int n = static_cast<int>(config.points.size());
  if (n < 2) return config;
  // A configuration that snapping leaves unchanged is returned as is.
  const MajoranaConfig in_place = snap_config(config, tol);
  if (matched_distance(in_place.points, config.points) == 0.0) return config;
  // Candidate orientations: the input itself and every (South pole, phi = 0) gauge.
  std::vector<MajoranaConfig> cands{in_place};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) cands.push_back(snap_config(to_gauge(config, a, b), tol));
    }
  }
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> score(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) score[i] = exact_coordinates(cands[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

  const QPResult base = pure_quantumness(points_to_state(config), inner);
  const CanonicalSignature base_sig = canonical_signature(config);
  int tried = 0;
  for (std::size_t i : order) {
    if (score[i] == 0 || tried >= 4) break;
    // Snapping to a different body is not a symmetrization.
    if (signature_distance(canonical_signature(cands[i]), base_sig) > 4.0 * tol + 1e-9) continue;
    ++tried;
    const QPResult r = pure_quantumness(points_to_state(cands[i]), inner, &base.mixture);
    if (r.q_squared >= base.q_squared - 1e-8) return cands[i];
  }
  return config;
}

MajoranaConfig square_antiprism(double t) {
  std::vector<SphereDirection> pts;
  for (int k = 0; k < 4; ++k) pts.emplace_back(t, k * kPi / 2);
  for (int k = 0; k < 4; ++k) pts.emplace_back(kPi - t, k * kPi / 2 + kPi / 4);
  return {SpinJ(8), std::move(pts)};
}

double footnote_expression(char which, double x) {
  using std::cos;
  using std::sin;
  if (which == 'a') {
    return (270286 + 61910 * cos(2 * x) + 58680 * cos(4 * x) + 855 * cos(6 * x) + 1530 * cos(8 * x) -
            45 * cos(10 * x) - 51200 * sin(x) + 25600 * sin(3 * x) - 5120 * sin(5 * x)) /
           262144.0;
  }
  if (which == 'b') {
    return (68477212 + 10990343 * cos(2 * x) + 18268726 * cos(4 * x) + 2030189 * cos(6 * x) + 845124 * cos(8 * x) +
            25319 * cos(10 * x) + 26474 * cos(12 * x) - 91 * cos(14 * x) - 4014080 * sin(x) + 2408448 * sin(3 * x) -
            802816 * sin(5 * x) + 114688 * sin(7 * x)) /
           67108864.0;
  }
  throw std::invalid_argument("footnote must be 'a' or 'b'");
}

double table_footnote_check(char which) {
  constexpr int kGrid = 20000;
  const double h = 2.0 * kPi / kGrid;
  int best = 0;
  double fbest = footnote_expression(which, 0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double f = footnote_expression(which, i * h);
    if (f < fbest) {
      fbest = f;
      best = i;
    }
  }
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return footnote_expression(which, x); },
                                                       (best - 1) * h, (best + 1) * h, 52);
  return std::min(r.second, fbest);
}

}  // namespace qq
