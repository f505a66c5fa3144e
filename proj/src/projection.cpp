#include "cutsync/projection.hpp"

#include <cmath>
#include <complex>

#include "cutsync/errors.hpp"

namespace cutsync {

double CutsetProjection::norm(NormP p) const {
  switch (p) {
    case NormP::one:
      return norm1;
    case NormP::two:
      return norm2;
    case NormP::inf:
      return norminf;
  }
  throw Error(ErrorCode::UnsupportedNorm, "unsupported induced norm");
}

CutsetProjection cutset_projection(const Graph& g) {
  CutsetProjection cp;
  const Eigen::MatrixXd& B = g.incidence();
  LaplacianBundle lb = laplacian_bundle(g);
  Eigen::MatrixXd BA = B * g.weights().asDiagonal();
  cp.P = B.transpose() * lb.Ldag * BA;
  cp.norm1 = induced_norm_1(cp.P);
  cp.norm2 = induced_norm_2(cp.P);
  cp.norminf = induced_norm_inf(cp.P);
  cp.idempotency_deviation = induced_norm_2(cp.P * cp.P - cp.P);

  // P is diagonalizable with spectrum {0, 1}; numerically its eigenvalues
  // may drift slightly off the real axis, so count by complex distance.
  Eigen::EigenSolver<Eigen::MatrixXd> es(cp.P);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigSolveFailure, "projection eigensolve failed");
  }
  cp.mult_eigenvalue_one = 0;
  cp.mult_eigenvalue_zero = 0;
  constexpr double kMultTol = 1e-6;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    std::complex<double> lam = es.eigenvalues()(k);
    if (std::abs(lam - 1.0) < kMultTol) ++cp.mult_eigenvalue_one;
    if (std::abs(lam) < kMultTol) ++cp.mult_eigenvalue_zero;
  }
  return cp;
}

double effective_resistance_check(const Graph& g) {
  const Eigen::MatrixXd& B = g.incidence();
  const int n = g.node_count();
  LaplacianBundle lb = laplacian_bundle(g);
  Eigen::MatrixXd Reff(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Reff(i, j) = lb.Ldag(i, i) + lb.Ldag(j, j) - 2.0 * lb.Ldag(i, j);
    }
  }
  Eigen::MatrixXd BA = B * g.weights().asDiagonal();
  Eigen::MatrixXd from_resistance = -0.5 * B.transpose() * Reff * BA;
  Eigen::MatrixXd P = B.transpose() * lb.Ldag * BA;
  return (from_resistance - P).cwiseAbs().maxCoeff();
}

MinimalAngleResult minimal_angle_check(const Graph& g) {
  if (g.edge_count() == g.node_count() - 1) {
    throw Error(ErrorCode::TrivialCycleSpace,
                "cycle space is trivial for an acyclic graph");
  }
  const Eigen::MatrixXd& B = g.incidence();
  Eigen::MatrixXd cutset_basis = column_space_basis(B.transpose());
  Eigen::MatrixXd cycle_basis =
      null_space_basis(B * g.weights().asDiagonal());
  MinimalAngleResult res;
  res.angle = min_principal_angle(cutset_basis, cycle_basis);
  CutsetProjection cp = cutset_projection(g);
  res.deviation = std::abs(std::sin(res.angle) - 1.0 / cp.norm2);
  return res;
}

}  // namespace cutsync
