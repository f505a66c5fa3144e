#include "cutsync/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "cutsync/errors.hpp"

namespace cutsync {

Eigen::MatrixXd pinv_symmetric(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigSolveFailure, "symmetric eigensolve failed");
  }
  const Eigen::VectorXd& vals = es.eigenvalues();
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1.0);
  const double cutoff = kPinvRelThreshold * scale;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
  for (int i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) > cutoff) inv(i) = 1.0 / vals(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

double induced_norm_1(const Eigen::MatrixXd& M) {
  return M.cwiseAbs().colwise().sum().maxCoeff();
}

double induced_norm_2(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(0);
}

double induced_norm_inf(const Eigen::MatrixXd& M) {
  return M.cwiseAbs().rowwise().sum().maxCoeff();
}

double vector_norm(const Eigen::VectorXd& v, NormP p) {
  switch (p) {
    case NormP::one:
      return v.lpNorm<1>();
    case NormP::two:
      return v.norm();
    case NormP::inf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  throw Error(ErrorCode::UnsupportedNorm, "unsupported vector norm");
}

double induced_norm(const Eigen::MatrixXd& M, NormP p) {
  switch (p) {
    case NormP::one:
      return induced_norm_1(M);
    case NormP::two:
      return induced_norm_2(M);
    case NormP::inf:
      return induced_norm_inf(M);
  }
  throw Error(ErrorCode::UnsupportedNorm, "unsupported induced norm");
}

Eigen::MatrixXd ones_complement_basis(int n) {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.rightCols(n - 1);
}

namespace {

// Shared rank cutoff for the subspace helpers: relative to the largest
// singular value, matching Eigen's default heuristic but fixed explicitly.
double svd_cutoff(const Eigen::VectorXd& sv, int rows, int cols) {
  if (sv.size() == 0) return 0.0;
  return sv(0) * 1e-12 * std::max(rows, cols) + 1e-300;
}

}  // namespace

Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = svd_cutoff(sv, M.rows(), M.cols());
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = svd_cutoff(sv, M.rows(), M.cols());
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(M.cols() - rank);
}

int matrix_rank(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = svd_cutoff(sv, M.rows(), M.cols());
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return rank;
}

double min_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) {
  if (U.cols() == 0 || V.cols() == 0) return M_PI_2;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(U.transpose() * V);
  double c = std::min(svd.singularValues()(0), 1.0);
  return std::acos(c);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::string_view op) {
  // FNV-1a over the label, then splitmix64 to spread the combined state.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : op) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t x = seed ^ h;
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x = x ^ (x >> 31);
  return std::mt19937_64(x);
}

double uniform_real(std::mt19937_64& rng, double a, double b) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

double normal(std::mt19937_64& rng) {
  double u1 = uniform_real(rng, 0.0, 1.0);
  double u2 = uniform_real(rng, 0.0, 1.0);
  u1 = std::max(u1, 0x1.0p-60);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace cutsync
