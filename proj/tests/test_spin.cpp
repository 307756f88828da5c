#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "qq/spin.hpp"

using namespace qq;

namespace {

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_SUITE("spin") {

TEST_CASE("SpinJ and directions validate their ranges") {
  CHECK_THROWS_AS(SpinJ(-1), std::invalid_argument);
  CHECK(SpinJ(3).dim() == 4);
  CHECK(SpinJ(3).j() == doctest::Approx(1.5));
  CHECK_THROWS(require_nontrivial(SpinJ(0)));
  CHECK_THROWS(SphereDirection(-0.1, 0.0));
  CHECK_THROWS(SphereDirection(kPi + 0.1, 0.0));
  CHECK(SphereDirection(1.0, -0.5).phi == doctest::Approx(2 * kPi - 0.5));
  const SphereDirection d = SphereDirection::from_angles(-0.3, 0.2);
  CHECK(d.theta_bar == doctest::Approx(0.3));
  CHECK(d.phi == doctest::Approx(0.2 + kPi));
}

TEST_CASE("theta_bar is measured from the South pole") {
  const Vec3 s = SphereDirection(0.0, 1.0).unit_vector();
  CHECK(s.z() == doctest::Approx(-1.0));
  const SphereDirection r = SphereDirection::from_vector(Vec3(1, 1, 0));
  CHECK(r.theta_bar == doctest::Approx(kPi / 2));
  CHECK(r.phi == doctest::Approx(kPi / 4));
  CHECK(angular_distance(SphereDirection(0, 0), SphereDirection(kPi, 0)) == doctest::Approx(kPi));
}

TEST_CASE("spin operators") {
  const SpinOperators h = spin_operators(SpinJ(1));
  CHECK(h.jx.isApprox(0.5 * (CMatrix(2, 2) << 0, 1, 1, 0).finished()));
  // Basis order is m = -1/2, +1/2, so sigma_y appears with the opposite sign.
  CHECK(h.jy.isApprox(0.5 * (CMatrix(2, 2) << 0, complex(0, 1), complex(0, -1), 0).finished()));
  CHECK(h.jz.isApprox(0.5 * (CMatrix(2, 2) << -1, 0, 0, 1).finished()));

  const SpinOperators one = spin_operators(SpinJ(2));
  CHECK(one.jz.isApprox(Eigen::Vector3cd(-1, 0, 1).asDiagonal().toDenseMatrix()));

  for (int tj = 1; tj <= 10; ++tj) {
    CAPTURE(tj);
    const SpinOperators o = spin_operators(SpinJ(tj));
    const complex i(0, 1);
    CHECK((commutator(o.jx, o.jy) - i * o.jz).norm() < 1e-12);
    CHECK((commutator(o.jy, o.jz) - i * o.jx).norm() < 1e-12);
    CHECK((commutator(o.jz, o.jx) - i * o.jy).norm() < 1e-12);
    const double j = 0.5 * tj;
    const CMatrix casimir = o.jx * o.jx + o.jy * o.jy + o.jz * o.jz;
    CHECK((casimir - j * (j + 1) * CMatrix::Identity(tj + 1, tj + 1)).norm() < 1e-11);
  }
  CHECK_THROWS(spin_operators(SpinJ(0)));
}

TEST_CASE("coherent states at the poles") {
  const PureState south = coherent_state(SpinJ(2), SphereDirection(0.0, 2.3));
  CHECK(south.equal_up_to_phase(PureState::basis(SpinJ(2), -1)));
  const PureState north = coherent_state(SpinJ(2), SphereDirection(kPi, 0.0));
  CHECK(north.equal_up_to_phase(PureState::basis(SpinJ(2), 1)));
}

TEST_CASE("coherent state amplitudes") {
  const SphereDirection d(1.1, 0.7);
  const PureState a = coherent_state(SpinJ(3), d);
  const double s = std::sin(0.55), c = std::cos(0.55);
  for (int k = 0; k <= 3; ++k) {
    const complex expect = std::sqrt(binomial(3, k)) * std::pow(s, k) * std::pow(c, 3 - k) * std::polar(1.0, -k * 0.7);
    CHECK(std::abs(a.amplitudes()(k) - expect) < 1e-14);
  }
  CVector from_vec;
  coherent_amplitudes(SpinJ(3), Vec3(2.0 * d.unit_vector()), from_vec);
  CHECK((from_vec - a.amplitudes()).norm() < 1e-14);
}

TEST_CASE("mean spin of a coherent state points along its direction") {
  Rng rng(11);
  for (int tj = 1; tj <= 6; ++tj) {
    const SpinOperators o = spin_operators(SpinJ(tj));
    const SphereDirection d = gen::direction(rng);
    const CVector v = coherent_state(SpinJ(tj), d).amplitudes();
    const Vec3 mean(v.dot(o.jx * v).real(), v.dot(o.jy * v).real(), v.dot(o.jz * v).real());
    CHECK((mean - 0.5 * tj * d.unit_vector()).norm() < 1e-12);
  }
}

TEST_CASE("coherent overlap law holds for random pairs") {
  Rng rng(1);
  for (int tj = 1; tj <= 10; ++tj) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const SphereDirection a = gen::direction(rng), b = gen::direction(rng);
      const PureState pa = coherent_state(SpinJ(tj), a), pb = coherent_state(SpinJ(tj), b);
      const double ov = std::norm(pa.amplitudes().dot(pb.amplitudes()));
      const double law = std::pow(std::cos(0.5 * angular_distance(a, b)), 2 * tj);
      worst = std::max(worst, std::abs(ov - law));
    }
    CAPTURE(tj);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("husimi values") {
  const SpinJ one(2);
  const SphereDirection d(0.4, 2.0);
  CHECK(husimi(DensityMatrix::from_pure(coherent_state(one, d)), d) == doctest::Approx(1.0).epsilon(1e-14));
  for (int tj = 1; tj <= 5; ++tj) {
    CHECK(husimi(DensityMatrix::maximally_mixed(SpinJ(tj)), d) == doctest::Approx(1.0 / (tj + 1)).epsilon(1e-13));
  }
  const DensityMatrix zero = DensityMatrix::from_pure(PureState::basis(one, 0));
  CHECK(husimi(zero, SphereDirection(kPi / 2, 0.3)) == doctest::Approx(0.5).epsilon(1e-14));
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const double h = husimi(gen::mixed(SpinJ(4), rng), gen::direction(rng));
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
  }
}

TEST_CASE("quadratic form matches the dense product") {
  Rng rng(8);
  const CMatrix g = gen::mixed(SpinJ(5), rng).matrix() - CMatrix::Identity(6, 6) * 0.3;
  const CVector v = gen::gaussian_vector(6, rng);
  CHECK(std::abs(quadratic_form(g, v) - v.dot(g * v).real()) < 1e-12);
}

TEST_CASE("Hilbert-Schmidt distance") {
  const SpinJ s(2);
  const DensityMatrix a = DensityMatrix::from_pure(PureState::basis(s, -1));
  const DensityMatrix b = DensityMatrix::from_pure(PureState::basis(s, 1));
  CHECK(hs_distance(a, a) == 0.0);
  CHECK(hs_distance(a, b) == doctest::Approx(std::sqrt(2.0)));
  for (int tj = 1; tj <= 6; ++tj) {
    const DensityMatrix p = DensityMatrix::from_pure(PureState::basis(SpinJ(tj), 0.5 * tj));
    CHECK(hs_distance(p, DensityMatrix::maximally_mixed(SpinJ(tj))) == doctest::Approx(std::sqrt(1.0 - 1.0 / (tj + 1))));
  }
  CHECK_THROWS(hs_distance(a, DensityMatrix::maximally_mixed(SpinJ(3))));

  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const SpinJ sp(1 + t % 6);
    const DensityMatrix x = gen::mixed(sp, rng), y = gen::mixed(sp, rng), z = gen::mixed(sp, rng);
    CHECK(hs_distance(x, z) <= hs_distance(x, y) + hs_distance(y, z) + 1e-12);
    CHECK(hs_distance(x, y) == doctest::Approx(hs_distance(y, x)).epsilon(1e-14));
  }
}

TEST_CASE("density matrix validation") {
  const SpinJ s(2);
  CMatrix m = CMatrix::Identity(3, 3) / 3.0;
  CHECK_NOTHROW(DensityMatrix(s, m));
  CMatrix bad_trace = m * 1.1;
  CHECK_THROWS(DensityMatrix(s, bad_trace));
  CMatrix non_herm = m;
  non_herm(0, 1) = complex(0.1, 0);
  CHECK_THROWS(DensityMatrix(s, non_herm));
  CMatrix negative = Eigen::Vector3cd(1.2, -0.1, -0.1).asDiagonal().toDenseMatrix();
  CHECK_THROWS(DensityMatrix(s, negative));
  CHECK_THROWS(DensityMatrix(s, CMatrix::Identity(2, 2) / 2.0));
  CHECK_THROWS(PureState(s, CVector::Zero(3)));
}

TEST_CASE("rotations") {
  const SpinJ s(4);
  Rng rng(5);
  const PureState psi = gen::pure(s, rng);
  CHECK(rotate(psi, Vec3::UnitX(), 0.0).equal_up_to_phase(psi, 1e-14));
  CHECK_THROWS(rotation_operator(s, Vec3(1, 1, 0), 0.3));

  for (int t = 0; t < 50; ++t) {
    const SpinJ sp(1 + t % 8);
    const Vec3 axis = random_unit_vector(rng);
    const double angle = gen::uniform(rng, -kPi, kPi);
    const CMatrix u = rotation_operator(sp, axis, angle);
    CHECK((u.adjoint() * u - CMatrix::Identity(sp.dim(), sp.dim())).norm() < 1e-10);

    // Coherent states move rigidly with rotation_matrix.
    const SphereDirection d = gen::direction(rng);
    const PureState moved = rotate(coherent_state(sp, d), axis, angle);
    const SphereDirection target = SphereDirection::from_vector(rotation_matrix(axis, angle) * d.unit_vector());
    CHECK(moved.equal_up_to_phase(coherent_state(sp, target), 1e-9));

    const DensityMatrix a = gen::mixed(sp, rng), b = gen::mixed(sp, rng);
    const DensityMatrix ra = rotate(a, axis, angle), rb = rotate(b, axis, angle);
    CHECK(std::abs(hs_distance(ra, rb) - hs_distance(a, b)) < 1e-10);
    CHECK(std::abs(ra.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(ra.purity() - a.purity()) < 1e-10);
  }
}

TEST_CASE("thermal states") {
  const SpinJ one(2);
  const SpinOperators o = spin_operators(one);
  Rng rng(6);
  const CMatrix h = gen::mixed(one, rng).matrix();
  CHECK(thermal_state(one, {h, 0.0}).matrix().isApprox(CMatrix::Identity(3, 3) / 3.0, 1e-13));

  const CMatrix jz2 = o.jz * o.jz;
  for (double beta : {0.0, 0.1, 1.0, 10.0}) {
    const DensityMatrix rho = thermal_state(one, {jz2, beta});
    const double e = std::exp(-beta), z = 1.0 + 2.0 * e;
    CHECK(std::abs(rho.matrix()(0, 0).real() - e / z) < 1e-13);
    CHECK(std::abs(rho.matrix()(1, 1).real() - 1.0 / z) < 1e-13);
    CHECK(std::abs(rho.matrix()(2, 2).real() - e / z) < 1e-13);
    CHECK(rho.matrix().norm() > 0.0);
  }
  for (int tj = 1; tj <= 6; ++tj) {
    const CMatrix hr = gen::mixed(SpinJ(tj), rng).matrix() * 5.0;
    for (double beta : {0.0, 0.1, 1.0, 10.0}) CHECK_NOTHROW(thermal_state(SpinJ(tj), {hr, beta}));
  }
  const DensityMatrix cold = thermal_state(one, {o.jz, 60.0});
  CHECK(std::abs(cold.matrix()(0, 0).real() - 1.0) < 1e-12);

  CMatrix non_herm = o.jz;
  non_herm(0, 1) = 1.0;
  CHECK_THROWS(thermal_state(one, {non_herm, 1.0}));
  CHECK_THROWS(thermal_state(one, {o.jz, -1.0}));
  CHECK_THROWS(thermal_state(one, {o.jz, std::numeric_limits<double>::infinity()}));
}

}  // TEST_SUITE
