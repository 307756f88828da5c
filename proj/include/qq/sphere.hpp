#pragma once

// Sampling and local search on the unit sphere.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qq/spin.hpp"

namespace qq {

using Rng = std::mt19937_64;

// Golden-angle Fibonacci lattice with n points.
std::vector<Vec3> fibonacci_sphere(int n);

// Fibonacci lattice under a random rotation, each point jittered by up to
// ~half the lattice spacing. Deterministic for a given rng state.
std::vector<Vec3> sample_directions(int n, Rng& rng);

Vec3 random_unit_vector(Rng& rng);
Eigen::Matrix3d random_rotation(Rng& rng);

// Splits a seed and a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct SphereMinimum {
  Vec3 point;
  double value;
};

// Local Newton descent of f on the sphere from `start`, with finite
// difference derivatives in the tangent plane and a step cap of `max_step`
// radians.
SphereMinimum minimize_on_sphere(const std::function<double(const Vec3&)>& f, const Vec3& start,
                                 int max_iter = 30, double max_step = 0.3);

// Grid search over a Fibonacci lattice followed by local refinement of the
// best `refine` grid points.
SphereMinimum global_minimize_on_sphere(const std::function<double(const Vec3&)>& f, int grid_size,
                                        int refine = 4);

}  // namespace qq
