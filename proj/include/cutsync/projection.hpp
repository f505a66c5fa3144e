#pragma once

#include <Eigen/Dense>

#include "cutsync/graph.hpp"
#include "cutsync/linalg.hpp"

namespace cutsync {

// Oblique projection P = B^T Ldag B diag(a) onto the cutset space Img(B^T)
// parallel to the weighted cycle space Ker(B diag(a)). Norms and spectral
// diagnostics are computed once at construction.
struct CutsetProjection {
  Eigen::MatrixXd P;  // m x m
  double norm1;
  double norm2;
  double norminf;
  double idempotency_deviation;  // ||P^2 - P||_2
  int mult_eigenvalue_one;       // expected n - 1
  int mult_eigenvalue_zero;      // expected m - n + 1

  double norm(NormP p) const;
};

CutsetProjection cutset_projection(const Graph& g);

// Max absolute entry of P + (1/2) B^T R_eff B diag(a), where R_eff is the
// effective-resistance matrix assembled from the Laplacian pseudoinverse.
// Zero (to rounding) because the two expressions are algebraically equal.
double effective_resistance_check(const Graph& g);

// Smallest principal angle between Img(B^T) and Ker(B diag(a)), together
// with |sin(angle) - 1/||P||_2|, which vanishes in exact arithmetic.
struct MinimalAngleResult {
  double angle;
  double deviation;
};

MinimalAngleResult minimal_angle_check(const Graph& g);

}  // namespace cutsync
