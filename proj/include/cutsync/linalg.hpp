#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string_view>

namespace cutsync {

// Eigenvalues below 1e-9 * max(lambda_max, 1) are treated as zero when
// pseudo-inverting; keeps the cutoff meaningful across weight scales.
inline constexpr double kPinvRelThreshold = 1e-9;

// Moore-Penrose pseudoinverse of a symmetric matrix via eigendecomposition.
Eigen::MatrixXd pinv_symmetric(const Eigen::MatrixXd& M);

// Induced matrix norms for p in {1, 2, inf}.
double induced_norm_1(const Eigen::MatrixXd& M);
double induced_norm_2(const Eigen::MatrixXd& M);
double induced_norm_inf(const Eigen::MatrixXd& M);

enum class NormP { one, two, inf };

double vector_norm(const Eigen::VectorXd& v, NormP p);
double induced_norm(const Eigen::MatrixXd& M, NormP p);

// Orthonormal basis of the subspace orthogonal to the all-ones vector,
// returned as an n x (n-1) matrix.
Eigen::MatrixXd ones_complement_basis(int n);

// Orthonormal basis of the column space of M (rank detected from singular
// values with relative threshold).
Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& M);

// Orthonormal basis of the null space of M.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& M);

// Numerical rank via SVD with relative threshold.
int matrix_rank(const Eigen::MatrixXd& M);

// Smallest principal angle (radians) between the column spaces of two
// orthonormal bases. Returns pi/2 when either subspace is trivial.
double min_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V);

// Deterministic RNG stream derived from a seed and an operation label, so
// independent operations never share a stream.
std::mt19937_64 make_rng(std::uint64_t seed, std::string_view op);

// Uniform double in [a, b) with generator-independent bit handling, so
// sequences are reproducible across standard library implementations.
double uniform_real(std::mt19937_64& rng, double a, double b);

// Standard normal via Box-Muller on uniform_real draws.
double normal(std::mt19937_64& rng);

}  // namespace cutsync
