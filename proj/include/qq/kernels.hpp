#pragma once

// Data-parallel kernels used by the inner solve. Each kernel has an OpenMP
// version and a serial reference; both produce bitwise identical output
// because every entry is computed independently.

#include <span>

#include "qq/spin.hpp"

namespace qq::kernels {

// Coherent-state Gram matrix |<a_i|a_k>|^2 = ((1 + n_i.n_k) / 2)^(2j).
Eigen::MatrixXd gram_matrix(SpinJ spin, std::span<const Vec3> dirs);
Eigen::MatrixXd gram_matrix_serial(SpinJ spin, std::span<const Vec3> dirs);

// <a_i|A|a_i> for each direction; A Hermitian of dimension 2j+1.
Eigen::VectorXd husimi_values(const CMatrix& a, SpinJ spin, std::span<const Vec3> dirs);
Eigen::VectorXd husimi_values_serial(const CMatrix& a, SpinJ spin, std::span<const Vec3> dirs);

// |<a_i|psi>|^2 for each direction.
Eigen::VectorXd overlap_values(const CVector& psi, SpinJ spin, std::span<const Vec3> dirs);
Eigen::VectorXd overlap_values_serial(const CVector& psi, SpinJ spin, std::span<const Vec3> dirs);

// Caps the thread count of the parallel kernels; 0 leaves the OpenMP default.
void set_thread_limit(int threads);
int thread_limit();
// Reads QQ_THREADS; returns the applied limit (0 when unset).
int apply_thread_env();

}  // namespace qq::kernels
