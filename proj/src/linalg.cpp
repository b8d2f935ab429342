#include "spreadlab/linalg.hpp"

#include <lapacke.h>

#include <limits>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab {

HermitianEigen eigh(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw BadParams("eigh needs a square matrix");
  const auto n = static_cast<lapack_int>(h.rows());
  HermitianEigen out;
  out.vectors = h;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                     reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
                     out.values.data());
  if (info != 0) throw Error("zheevd failed with info = " + std::to_string(info));
  return out;
}

double hermiticity_defect(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace spreadlab
