#pragma once

#include <array>

namespace cdsar {

// Eigendecomposition of a symmetric 4x4 matrix by cyclic Jacobi rotations.
// vectors[k] is the eigenvector for values[k]; columns are orthonormal and
// ordered by descending eigenvalue.  Deterministic across platforms.
struct EigenSym4 {
    std::array<double, 4> values;
    std::array<std::array<double, 4>, 4> vectors;
};

EigenSym4 eigen_sym4(const std::array<std::array<double, 4>, 4>& m);

} // namespace cdsar
