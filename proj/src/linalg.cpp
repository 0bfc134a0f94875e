#include "cfmimo/linalg.hpp"

namespace cfmimo {

MatC hermitian_sqrt(const MatC& a) {
  Eigen::LLT<MatC> llt(a);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<MatC> es(a);
  VecR ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace cfmimo
