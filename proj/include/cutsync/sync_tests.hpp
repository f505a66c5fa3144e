#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cutsync/graph.hpp"
#include "cutsync/linalg.hpp"
#include "cutsync/maf.hpp"

namespace cutsync {

// Connected graph plus zero-mean natural frequencies. The mean of the raw
// frequencies is the synchronous frequency and is stored separately.
struct OscillatorSystem {
  Graph graph;
  Eigen::VectorXd omega;  // zero mean
  double omega_syn;

  Eigen::VectorXd omega_raw() const {
    return omega.array() + omega_syn;
  }
};

OscillatorSystem make_system(Graph g, const Eigen::VectorXd& omega_raw);

// Shift to zero mean; returns the zero-mean vector and the subtracted mean.
std::pair<Eigen::VectorXd, double> normalize_frequencies(
    const Eigen::VectorXd& omega_raw);

// The edge flow B^T Ldag omega whose p-norm every sufficient test bounds.
Eigen::VectorXd edge_flow(const OscillatorSystem& sys);

// One test verdict. `rigorous` distinguishes theorem-backed tests from the
// approximate ones carried for comparison. `gamma_domain` is the angle for
// which a passing verdict certifies an equilibrium (NaN when none).
struct TestRecord {
  std::string name;
  bool applicable = true;
  bool rigorous = true;
  bool passed = false;
  double lhs = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // threshold - lhs
  double gamma_domain = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

// ||B^T omega||_2 < lambda_2 (strict).
TestRecord test_T0(const OscillatorSystem& sys);

// ||B^T Ldag omega||_2 <= sin(gamma); stated for unweighted graphs only, so
// weighted inputs get applicable = false rather than an extrapolation.
TestRecord test_T2(const OscillatorSystem& sys, double gamma);

// Largest angle for which the norm-based test certifies an equilibrium.
double gamma_star(double p_norm_of_P);

// Threshold g(x) = ((1+x) sin y - (x-1) y) / 2 at y = arccos((x-1)/(x+1)),
// algebraically identical to (y + sin y)/2 - x (y - sin y)/2 but exact at
// x = 1. Strictly decreasing from g(1) = 1 toward 0.
double g_function(double x);

// ||B^T Ldag omega||_p <= g(||P||_p), certifying an equilibrium in the
// embedded-cohesive set at gamma_star(||P||_p).
TestRecord test_T3(const OscillatorSystem& sys, NormP p);

// ||B^T Ldag omega||_p <= alpha_p(gamma) * gamma, evaluated twice: with the
// theorem lower bound on alpha (rigorous) and with the multistart estimate
// (heuristic).
struct T1Result {
  TestRecord rigorous;
  TestRecord heuristic;
};

T1Result test_T1(const OscillatorSystem& sys, NormP p, double gamma,
                 const MafEstimate& alpha);

// ||B^T Ldag omega||_inf <= 1; known to admit counterexamples, carried for
// comparison and always flagged non-rigorous.
TestRecord test_AT0(const OscillatorSystem& sys);

// Exact existence characterization for acyclic graphs, with the explicit
// equilibrium when it exists.
struct AcyclicResult {
  bool exists;
  TestRecord record;
  std::optional<Eigen::VectorXd> x_star;  // zero-mean
};

AcyclicResult acyclic_characterization(const OscillatorSystem& sys,
                                       double gamma);

// h_n(gamma) = sin(gamma) - ((n-2)/(2n)) (gamma - sin(gamma)).
double h_n(int n, double gamma);

// ||B^T Ldag omega||_inf <= h_n(gamma) for unweighted complete and ring
// topologies (auto-detected).
TestRecord h_n_test(const OscillatorSystem& sys, double gamma);

// Equilibrium evidence attached to a report: produced by the dynamics
// solvers for the smallest gamma whose tests pass.
struct EquilibriumSummary {
  std::string solver;
  double gamma;
  Eigen::VectorXd x_star;
  double residual;
  bool stable;
  double jacobian_lambda2;
};

struct SyncReport {
  Eigen::VectorXd edge_flow;
  double omega_syn;
  std::vector<TestRecord> records;
  std::optional<EquilibriumSummary> equilibrium;
};

// Evaluates every applicable test at each gamma in the grid and, when some
// gamma-dependent test passes, attaches solver-verified equilibrium data.
SyncReport run_all(const OscillatorSystem& sys,
                   const std::vector<double>& gamma_grid, NormP p,
                   const MafConfig& maf_cfg = {});

}  // namespace cutsync
