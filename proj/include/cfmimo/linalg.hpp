#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cfmimo {

using Cx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

// Hermitian square root: Cholesky factor when positive definite, otherwise
// an eigendecomposition root with negative eigenvalues clamped to zero.
MatC hermitian_sqrt(const MatC& a);

}  // namespace cfmimo
