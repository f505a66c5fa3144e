#include <algorithm>
#include <cmath>
#include <limits>

#include "cutsync/dynamics.hpp"
#include "cutsync/sync_tests.hpp"

namespace cutsync {

SyncReport run_all(const OscillatorSystem& sys,
                   const std::vector<double>& gamma_grid, NormP p,
                   const MafConfig& maf_cfg) {
  SyncReport rep;
  rep.edge_flow = edge_flow(sys);
  rep.omega_syn = sys.omega_syn;

  rep.records.push_back(test_T0(sys));
  rep.records.push_back(test_T3(sys, p));
  rep.records.push_back(test_AT0(sys));

  for (double gamma : gamma_grid) {
    rep.records.push_back(test_T2(sys, gamma));
    MafEstimate alpha = estimate_alpha(sys.graph, p, gamma, maf_cfg);
    T1Result t1 = test_T1(sys, p, gamma, alpha);
    rep.records.push_back(t1.rigorous);
    rep.records.push_back(t1.heuristic);
    if (sys.graph.acyclic()) {
      rep.records.push_back(acyclic_characterization(sys, gamma).record);
    }
    if (sys.graph.is_complete_unweighted() ||
        sys.graph.is_ring_unweighted()) {
      rep.records.push_back(h_n_test(sys, gamma));
    }
  }

  // Attach equilibrium evidence at the tightest angle certified by a
  // passing rigorous test.
  double gamma_best = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.records) {
    if (r.applicable && r.rigorous && r.passed &&
        std::isfinite(r.gamma_domain)) {
      gamma_best = std::min(gamma_best, r.gamma_domain);
    }
  }
  if (std::isfinite(gamma_best)) {
    EquilibriumResult eq = solve_fixed_point(sys, p, gamma_best);
    if (eq.status != SolveStatus::converged) {
      eq = solve_newton(sys, Eigen::VectorXd::Zero(sys.graph.node_count()));
    }
    if (eq.status == SolveStatus::converged) {
      EquilibriumSummary summary;
      summary.solver = eq.solver;
      summary.gamma = gamma_best;
      summary.x_star = eq.x_star;
      summary.residual = eq.residual;
      summary.stable = eq.stable;
      summary.jacobian_lambda2 = eq.jacobian_lambda2;
      rep.equilibrium = summary;
    }
  }
  return rep;
}

}  // namespace cutsync
