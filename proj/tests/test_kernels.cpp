#include <doctest.h>

#include "generators.hpp"
#include "qq/kernels.hpp"

using namespace qq;

TEST_SUITE("kernels") {

TEST_CASE("parallel kernels match their serial references bitwise") {
  Rng rng(51);
  for (int tj : {1, 4, 10}) {
    const SpinJ s(tj);
    std::vector<Vec3> dirs;
    for (int i = 0; i < 300; ++i) dirs.push_back(random_unit_vector(rng));
    const CMatrix a = gen::mixed(s, rng).matrix();
    const CVector psi = gen::pure(s, rng).amplitudes();
    CHECK(kernels::gram_matrix(s, dirs) == kernels::gram_matrix_serial(s, dirs));
    CHECK(kernels::husimi_values(a, s, dirs) == kernels::husimi_values_serial(a, s, dirs));
    CHECK(kernels::overlap_values(psi, s, dirs) == kernels::overlap_values_serial(psi, s, dirs));
  }
}

TEST_CASE("kernel values") {
  Rng rng(52);
  const SpinJ s(5);
  std::vector<Vec3> dirs;
  for (int i = 0; i < 20; ++i) dirs.push_back(random_unit_vector(rng));
  const Eigen::MatrixXd g = kernels::gram_matrix(s, dirs);
  const DensityMatrix rho = gen::mixed(s, rng);
  const PureState psi = gen::pure(s, rng);
  const Eigen::VectorXd h = kernels::husimi_values(rho.matrix(), s, dirs);
  const Eigen::VectorXd o = kernels::overlap_values(psi.amplitudes(), s, dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const SphereDirection di = SphereDirection::from_vector(dirs[i]);
    const PureState ci = coherent_state(s, di);
    const auto ii = static_cast<Eigen::Index>(i);
    CHECK(h(ii) == doctest::Approx(husimi(rho, di)).epsilon(1e-12));
    CHECK(o(ii) == doctest::Approx(std::norm(ci.amplitudes().dot(psi.amplitudes()))).epsilon(1e-12));
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const PureState ck = coherent_state(s, SphereDirection::from_vector(dirs[k]));
      CHECK(std::abs(g(ii, static_cast<Eigen::Index>(k)) - std::norm(ci.amplitudes().dot(ck.amplitudes()))) < 1e-12);
    }
  }
}

TEST_CASE("thread limit") {
  const int before = kernels::thread_limit();
  kernels::set_thread_limit(1);
  CHECK(kernels::thread_limit() == 1);
  kernels::set_thread_limit(-3);
  CHECK(kernels::thread_limit() == 0);
  kernels::set_thread_limit(before);
}

}  // TEST_SUITE
