#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "qq/classicality.hpp"
#include "qq/quantumness.hpp"

using namespace qq;

TEST_SUITE("classicality") {

TEST_CASE("spin-1 coordinates of reference states") {
  const Spin1Coords zero = spin1_coords(DensityMatrix::from_pure(PureState::basis(SpinJ(2), 0)));
  CHECK(zero.u.norm() < 1e-14);
  CHECK((zero.w - Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix()).norm() < 1e-14);

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const SphereDirection d = gen::direction(rng);
    const Vec3 n = d.unit_vector();
    const Spin1Coords c = spin1_coords(DensityMatrix::from_pure(coherent_state(SpinJ(2), d)));
    CHECK((c.u - n).norm() < 1e-13);
    CHECK((c.w - n * n.transpose()).norm() < 1e-13);
    CHECK(c.z.norm() < 1e-13);
  }

  const Spin1Coords mixed = spin1_coords(DensityMatrix::maximally_mixed(SpinJ(2)));
  CHECK(mixed.u.norm() < 1e-14);
  CHECK((mixed.w - Eigen::Matrix3d::Identity() / 3.0).norm() < 1e-14);
  CHECK((mixed.z - Eigen::Matrix3d::Identity() / 3.0).norm() < 1e-14);
}

TEST_CASE("spin-1 reconstruction and trace of W") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = gen::mixed(SpinJ(2), rng);
    const Spin1Coords c = spin1_coords(rho);
    CHECK(std::abs(c.w.trace() - 1.0) < 1e-12);
    CHECK((spin1_reconstruct(c.u, c.w) - rho.matrix()).norm() < 1e-12);
  }
  CHECK_THROWS(spin1_coords(DensityMatrix::maximally_mixed(SpinJ(3))));
  CHECK_THROWS(is_classical_spin1(DensityMatrix::maximally_mixed(SpinJ(1))));
}

TEST_CASE("Z-criterion verdicts") {
  const Spin1Verdict zero = is_classical_spin1(DensityMatrix::from_pure(PureState::basis(SpinJ(2), 0)));
  CHECK_FALSE(zero.classical);
  CHECK(zero.min_eigenvalue_of_z == doctest::Approx(-1.0));

  CMatrix boundary = Eigen::Vector3cd(0.25, 0.5, 0.25).asDiagonal().toDenseMatrix();
  const Spin1Verdict b = is_classical_spin1(DensityMatrix(SpinJ(2), boundary));
  CHECK(b.classical);
  CHECK(std::abs(b.min_eigenvalue_of_z) < 1e-12);

  const Spin1Verdict m = is_classical_spin1(DensityMatrix::maximally_mixed(SpinJ(2)));
  CHECK(m.classical);
  CHECK(m.min_eigenvalue_of_z > 0.3);
}

TEST_CASE("bounds") {
  const BoundsReport mixed = bounds(DensityMatrix::maximally_mixed(SpinJ(4)));
  CHECK(mixed.purity_bound < 1e-7);

  Rng rng(33);
  const BoundsReport pure = bounds(DensityMatrix::from_pure(gen::pure(SpinJ(2), rng)));
  CHECK(pure.pure_bound == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(pure.purity_bound == doctest::Approx(pure.pure_bound));

  const BoundsReport zero = bounds(DensityMatrix::from_pure(PureState::basis(SpinJ(2), 0)));
  CHECK(zero.husimi_max == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(zero.coherent_bound == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(zero.husimi_argmax.theta_bar == doctest::Approx(kPi / 2).epsilon(1e-6));

  // The Husimi maximum of a coherent state is found exactly.
  const SphereDirection d(2.2, 4.0);
  const BoundsReport coh = bounds(DensityMatrix::from_pure(coherent_state(SpinJ(7), d)));
  CHECK(coh.husimi_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(angular_distance(coh.husimi_argmax, d) < 1e-5);
  CHECK(coh.coherent_bound < 1e-5);

  CHECK_THROWS(bounds(DensityMatrix::maximally_mixed(SpinJ(2)), 99));
}

TEST_CASE("psi_x witness family") {
  const Spin1Witness at6 = theorem_witness_spin1(std::sqrt(6.0));
  CHECK(at6.certified_distance_sq == doctest::Approx(3.0 / 32.0).epsilon(1e-12));
  CHECK(at6.closed_form_sq == doctest::Approx(3.0 / 32.0).epsilon(1e-12));
  // The x <= sqrt(6) branch reaches the same value at the junction.
  const Spin1Witness below6 = theorem_witness_spin1(std::sqrt(6.0) - 1e-9);
  CHECK(below6.certified_distance_sq == doctest::Approx(3.0 / 32.0).epsilon(1e-7));

  const Spin1Witness coherent = theorem_witness_spin1(std::sqrt(2.0));
  CHECK(coherent.certified_distance_sq < 1e-14);
  CHECK(coherent.closed_form_sq == doctest::Approx(0.0));

  const Spin1Witness far = theorem_witness_spin1(1e4);
  CHECK(far.certified_distance_sq == doctest::Approx(0.375).epsilon(1e-6));

  double prev = -1.0;
  for (double x = std::sqrt(2.0); x < 20.0; x += 0.37) {
    const Spin1Witness w = theorem_witness_spin1(x);
    CAPTURE(x);
    CHECK(is_classical_spin1(w.rho_c).classical);
    CHECK(w.certified_distance_sq == doctest::Approx(w.closed_form_sq).epsilon(1e-12));
    CHECK(w.certified_distance_sq > prev);
    prev = w.certified_distance_sq;
  }
  CHECK_THROWS(theorem_witness_spin1(1.0));
  CHECK_THROWS(theorem_witness_spin1(std::nan("")));
}

TEST_CASE("witness distance is an upper bound and tight above sqrt(6)") {
  Rng rng(34);
  QPConfig cfg;
  for (int t = 0; t < 12; ++t) {
    const double x = gen::uniform(rng, std::sqrt(2.0), 20.0);
    const Spin1Witness w = theorem_witness_spin1(x);
    const double q2 = quantumness(DensityMatrix::from_pure(psi_x(x)), cfg).q_squared;
    CAPTURE(x);
    CHECK(w.certified_distance_sq >= q2 - 1e-6);
    if (x >= std::sqrt(6.0)) CHECK(std::abs(w.certified_distance_sq - q2) < 2e-3);
  }
}

TEST_CASE("thermal critical points") {
  const SpinOperators o = spin_operators(SpinJ(2));
  const ThermalScanResult sq = thermal_scan(o.jz * o.jz);
  CHECK_FALSE(sq.always_classical);
  CHECK(sq.monotone);
  CHECK(std::abs(sq.critical_beta - std::log(2.0)) < 1e-5);
  CHECK(sq.prescan_samples == 64);

  const ThermalScanResult lin = thermal_scan(o.jz);
  CHECK(lin.always_classical);
  CHECK(thermal_scan(CMatrix::Zero(3, 3)).always_classical);

  CMatrix bad = o.jz;
  bad(0, 2) = 1.0;
  CHECK_THROWS(thermal_scan(bad));
  CHECK_THROWS(thermal_scan(spin_operators(SpinJ(3)).jz));
  CHECK_THROWS(thermal_scan(o.jz, 1.0, 0.5));
}

}  // TEST_SUITE
