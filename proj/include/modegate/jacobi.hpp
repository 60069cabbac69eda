#pragma once

#include <cstddef>
#include <vector>

namespace modegate {

/// Eigen-decomposition of a small dense symmetric matrix.
/// eigenvalues are sorted ascending; eigenvectors[r] is the orthonormal
/// eigenvector belonging to eigenvalues[r], stored row-wise.
struct SymmetricEigen {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

/// Cyclic Jacobi rotations on a symmetric matrix given in row-major order.
/// Sweeps until the off-diagonal Frobenius norm drops below
/// 1e-12 times the diagonal norm. Intended for n <= 32.
SymmetricEigen jacobi_eigen_symmetric(const std::vector<double>& matrix,
                                      std::size_t n);

}  // namespace modegate
