#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cutsync/sync_tests.hpp"

namespace cutsync {

// Sampled solution of theta' = omega - B diag(a) sin(B^T theta). States are
// stored both wrapped to [0, 2*pi) and unwrapped (the integrator works on
// the unwrapped angles).
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;            // wrapped
  std::vector<Eigen::VectorXd> states_unwrapped;
  std::vector<Eigen::VectorXd> freq;              // right-hand side
};

// Classic fixed-step fourth-order Runge-Kutta; step size is guarded against
// instability via dt * (||omega||_inf + 2 max row sum of the weights).
Trajectory simulate(const OscillatorSystem& sys, const Eigen::VectorXd& theta0,
                    double dt, double t_end, int stride = 1);

double default_dt(const OscillatorSystem& sys);

struct FrequencySyncResult {
  bool synced;
  double omega_syn;        // mean of the raw frequencies
  double max_deviation;    // over the inspected window
};

// All instantaneous frequencies within tol of the synchronous frequency
// over the trailing `window` time units.
FrequencySyncResult detect_frequency_sync(const Trajectory& traj,
                                          double window, double tol);

enum class SolveStatus {
  converged,
  no_convergence,
  iterate_left_domain,
  singular_jacobian,
};

const char* solve_status_name(SolveStatus s);

struct EquilibriumResult {
  SolveStatus status = SolveStatus::no_convergence;
  Eigen::VectorXd x_star;        // zero-mean, meaningful when converged
  double residual = 0.0;         // ||omega - B diag(a) sin(B^T x)||_inf
  bool stable = false;
  double jacobian_lambda2 = 0.0; // smallest eigenvalue of the negated
                                 // Jacobian restricted to the zero-mean
                                 // subspace
  std::string solver;
  int iterations = 0;
  int fail_iteration = -1;       // iteration where the iterate left the
                                 // feasible ball, if it did
};

// Fixed-point iteration y <- B^T pinv(L_sinc(y)) omega from y = 0. Each
// iterate must stay inside {||y||_p <= gamma}; on convergence the angle
// vector is recovered by a least-squares solve of B^T x = y plus a Newton
// polish.
EquilibriumResult solve_fixed_point(const OscillatorSystem& sys, NormP p,
                                    double gamma, int max_iter = 500,
                                    double tol = 1e-13);

// Damped Newton on F(x) = B diag(a) sin(B^T x) - omega restricted to the
// zero-mean subspace.
EquilibriumResult solve_newton(const OscillatorSystem& sys,
                               const Eigen::VectorXd& x_init,
                               int max_iter = 100, double tol = 1e-12);

struct StabilityResult {
  bool stable;
  double jacobian_lambda2;
};

// Linearization at an equilibrium: stable when the Laplacian weighted by
// cos(B^T x) is positive definite on the zero-mean subspace.
StabilityResult check_stability(const OscillatorSystem& sys,
                                const Eigen::VectorXd& x_star);

struct EquivalenceReport {
  bool equilibrium_found = false;
  Eigen::VectorXd x_star;
  int trials = 0;
  int synced = 0;
  int matched = 0;        // synced and settled onto the found manifold
  int inconclusive = 0;
  int contradictions = 0;
};

// Empirical check that frequency synchronization from nearby starts occurs
// exactly when a stable equilibrium exists: perturbed starts must settle
// onto the manifold; when no equilibrium exists anywhere (Newton multistart
// exhausted), no random start may synchronize.
EquivalenceReport equivalence_experiment(const OscillatorSystem& sys,
                                         double gamma, int trials,
                                         std::uint64_t seed);

}  // namespace cutsync
