#pragma once

// Reference Queen configurations (theta_bar, phi) for 2j = 2..10 and their
// squared quantumness.
//
// Entries corrected for typographical slips in the source coordinates:
//   2j = 4   third ring point phi = pi/3 (printed 4pi/3; the ring is a
//            regular triangle with the other two at pi and 5pi/3)
//   2j = 5   last point theta_bar = pi (printed "pi3")
//   2j = 6   equatorial square phi = pi, 3pi/2, 0, pi/2 (printed pi, 4pi/3,
//            0, 4pi/3); last point theta_bar = pi (printed "pi3")
//   2j = 7   pentagon vertex phi = pi/5 (printed "pi/58")

#include <cmath>

#include "qq/majorana.hpp"

namespace qq::fixtures {

inline MajoranaConfig qq_config(int two_j) {
  const double p = kPi;
  const double tet = 2.0 * std::acos(1.0 / std::sqrt(3.0));
  std::vector<std::pair<double, double>> a;
  switch (two_j) {
    case 2: a = {{0, p}, {p, p}}; break;
    case 3: a = {{p / 2, p}, {p / 2, 5 * p / 3}, {p / 2, p / 3}}; break;
    case 4: a = {{0, p}, {tet, p}, {tet, 5 * p / 3}, {tet, p / 3}}; break;
    case 5: a = {{0, p}, {p / 2, p}, {p / 2, 5 * p / 3}, {p / 2, p / 3}, {p, p}}; break;
    case 6: a = {{0, p}, {p / 2, p}, {p / 2, 3 * p / 2}, {p / 2, 0}, {p / 2, p / 2}, {p, p}}; break;
    case 7:
      a = {{0, p}, {p / 2, p}, {p / 2, 7 * p / 5}, {p / 2, 9 * p / 5}, {p / 2, p / 5}, {p / 2, 3 * p / 5}, {p, p}};
      break;
    case 8:
      a = {{p / 2, 4.46095}, {p / 2, 1.82223}, {p / 2, 5.62398}, {p / 2, 0.659206},
           {0.251438, 0},    {2.890154, 0},    {0.911591, p},    {2.230002, p}};
      break;
    case 9:
      a = {{0.799772, p},  {0.799772, 5 * p / 3}, {0.799772, p / 3},     {p / 2, 0},           {p / 2, 2 * p / 3},
           {p / 2, 4 * p / 3}, {2.341821, p},     {2.341821, 5 * p / 3}, {2.341821, p / 3}};
      break;
    case 10:
      a = {{0, p},         {1.134586, p},     {1.134586, 3 * p / 2}, {1.134586, 0},        {1.134586, p / 2},
           {2.007007, 5 * p / 4}, {2.007007, 7 * p / 4}, {2.007007, p / 4}, {2.007007, 3 * p / 4}, {p, p}};
      break;
    default: throw std::invalid_argument("no reference configuration");
  }
  std::vector<SphereDirection> pts;
  for (auto [t, f] : a) pts.emplace_back(t, f);
  return {SpinJ(two_j), std::move(pts)};
}

// Squared quantumness of the Queens; exact fractions where known.
inline double qq_value(int two_j) {
  switch (two_j) {
    case 1: return 0.0;
    case 2: return 3.0 / 8.0;
    case 3: return 9.0 / 19.0;
    case 4: return 16.0 / 27.0;
    case 5: return 0.645914;
    case 6: return 347.0 / 486.0;
    case 7: return 0.743138;
    case 8: return 0.77108;
    case 9: return 0.79676;
    case 10: return 0.81664;
    default: throw std::invalid_argument("no reference value");
  }
}

inline CanonicalSignature octahedron_signature() { return canonical_signature(qq_config(6)); }

// Local maximum of the square antiprism family at 2j = 8.
inline constexpr double kAntiprismValue = 0.76868;

}  // namespace qq::fixtures
