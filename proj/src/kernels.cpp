#include "qq/kernels.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qq::kernels {

namespace {

inline double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

inline double gram_entry(int two_j, const Vec3& a, const Vec3& b) {
  const double c = 0.5 * (1.0 + a.dot(b));
  return ipow(c < 0.0 ? 0.0 : c, two_j);
}

inline double husimi_entry(const CMatrix& a, SpinJ spin, const Vec3& n, CVector& scratch) {
  coherent_amplitudes(spin, n, scratch);
  return quadratic_form(a, scratch);
}

inline double overlap_entry(const CVector& psi, SpinJ spin, const Vec3& n, CVector& scratch) {
  coherent_amplitudes(spin, n, scratch);
  return std::norm(scratch.dot(psi));
}

int g_thread_limit = 0;

int threads_for(std::ptrdiff_t work) {
#ifdef _OPENMP
  if (work < 64) return 1;
  const int cap = g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads();
  return cap < 1 ? 1 : cap;
#else
  (void)work;
  return 1;
#endif
}

}  // namespace

void set_thread_limit(int threads) { g_thread_limit = threads < 0 ? 0 : threads; }
int thread_limit() { return g_thread_limit; }

int apply_thread_env() {
  const char* env = std::getenv("QQ_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const int n = std::atoi(env);
  if (n > 0) {
    set_thread_limit(n);
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
  }
  return n > 0 ? n : 0;
}

Eigen::MatrixXd gram_matrix_serial(SpinJ spin, std::span<const Vec3> dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const double v = gram_entry(spin.two_j(), dirs[i], dirs[k]);
      g(i, k) = v;
      g(k, i) = v;
    }
  }
  return g;
}

Eigen::MatrixXd gram_matrix(SpinJ spin, std::span<const Vec3> dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Eigen::MatrixXd g(n, n);
  const int two_j = spin.two_j();
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads_for(n * n))
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const double v = gram_entry(two_j, dirs[i], dirs[k]);
      g(i, k) = v;
      g(k, i) = v;
    }
  }
  return g;
}

Eigen::VectorXd husimi_values_serial(const CMatrix& a, SpinJ spin, std::span<const Vec3> dirs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dirs.size()));
  CVector scratch(spin.dim());
  for (std::size_t i = 0; i < dirs.size(); ++i) out(static_cast<Eigen::Index>(i)) = husimi_entry(a, spin, dirs[i], scratch);
  return out;
}

Eigen::VectorXd husimi_values(const CMatrix& a, SpinJ spin, std::span<const Vec3> dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Eigen::VectorXd out(n);
#pragma omp parallel num_threads(threads_for(n * spin.dim()))
  {
    CVector scratch(spin.dim());
#pragma omp for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) out(i) = husimi_entry(a, spin, dirs[i], scratch);
  }
  return out;
}

Eigen::VectorXd overlap_values_serial(const CVector& psi, SpinJ spin, std::span<const Vec3> dirs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(dirs.size()));
  CVector scratch(spin.dim());
  for (std::size_t i = 0; i < dirs.size(); ++i) out(static_cast<Eigen::Index>(i)) = overlap_entry(psi, spin, dirs[i], scratch);
  return out;
}

Eigen::VectorXd overlap_values(const CVector& psi, SpinJ spin, std::span<const Vec3> dirs) {
  const auto n = static_cast<Eigen::Index>(dirs.size());
  Eigen::VectorXd out(n);
#pragma omp parallel num_threads(threads_for(n * spin.dim()))
  {
    CVector scratch(spin.dim());
#pragma omp for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) out(i) = overlap_entry(psi, spin, dirs[i], scratch);
  }
  return out;
}

}  // namespace qq::kernels
