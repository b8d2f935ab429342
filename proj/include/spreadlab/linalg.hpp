#pragma once

#include <Eigen/Dense>

namespace spreadlab {

struct HermitianEigen {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns are orthonormal eigenvectors
};

/// Full eigendecomposition of a Hermitian matrix (LAPACK zheevd, lower
/// triangle referenced).
HermitianEigen eigh(const Eigen::MatrixXcd& h);

/// max |H - H^dagger|.
double hermiticity_defect(const Eigen::MatrixXcd& h);

}  // namespace spreadlab
