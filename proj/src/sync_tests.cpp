#include "cutsync/sync_tests.hpp"

#include <cmath>

#include "cutsync/errors.hpp"
#include "cutsync/projection.hpp"

namespace cutsync {

std::pair<Eigen::VectorXd, double> normalize_frequencies(
    const Eigen::VectorXd& omega_raw) {
  double mean = omega_raw.size() == 0 ? 0.0 : omega_raw.mean();
  return {omega_raw.array() - mean, mean};
}

OscillatorSystem make_system(Graph g, const Eigen::VectorXd& omega_raw) {
  if (omega_raw.size() != g.node_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "frequency vector length does not match node count");
  }
  auto [omega, mean] = normalize_frequencies(omega_raw);
  return OscillatorSystem{std::move(g), std::move(omega), mean};
}

Eigen::VectorXd edge_flow(const OscillatorSystem& sys) {
  LaplacianBundle lb = laplacian_bundle(sys.graph);
  return sys.graph.incidence().transpose() * (lb.Ldag * sys.omega);
}

namespace {

TestRecord make_record(std::string name, double lhs, double threshold,
                       bool strict, bool rigorous, double gamma_domain) {
  TestRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.threshold = threshold;
  r.passed = strict ? (lhs < threshold) : (lhs <= threshold);
  r.margin = threshold - lhs;
  r.rigorous = rigorous;
  r.gamma_domain = gamma_domain;
  return r;
}

void require_gamma_range(double gamma) {
  if (gamma < 0.0 || gamma >= M_PI_2) {
    throw Error(ErrorCode::DomainError, "gamma must lie in [0, pi/2)");
  }
}

}  // namespace

TestRecord test_T0(const OscillatorSystem& sys) {
  LaplacianBundle lb = laplacian_bundle(sys.graph);
  double lhs = (sys.graph.incidence().transpose() * sys.omega).norm();
  return make_record("T0", lhs, lb.lambda2(), /*strict=*/true,
                     /*rigorous=*/true, M_PI_2);
}

TestRecord test_T2(const OscillatorSystem& sys, double gamma) {
  require_gamma_range(gamma);
  if (!sys.graph.unweighted()) {
    TestRecord r;
    r.name = "T2";
    r.applicable = false;
    r.note = "stated for unweighted graphs only";
    return r;
  }
  double lhs = edge_flow(sys).norm();
  TestRecord r = make_record("T2", lhs, std::sin(gamma), /*strict=*/false,
                             /*rigorous=*/true, gamma);
  return r;
}

double gamma_star(double p_norm_of_P) {
  if (p_norm_of_P < 1.0) {
    throw Error(ErrorCode::DomainError, "induced projection norms are >= 1");
  }
  return std::acos((p_norm_of_P - 1.0) / (p_norm_of_P + 1.0));
}

double g_function(double x) {
  if (x < 1.0) {
    throw Error(ErrorCode::DomainError, "g is defined for x >= 1");
  }
  double y = std::acos((x - 1.0) / (x + 1.0));
  return 0.5 * ((1.0 + x) * std::sin(y) - (x - 1.0) * y);
}

TestRecord test_T3(const OscillatorSystem& sys, NormP p) {
  CutsetProjection cp = cutset_projection(sys.graph);
  double pn = cp.norm(p);
  double lhs = vector_norm(edge_flow(sys), p);
  return make_record("T3", lhs, g_function(pn), /*strict=*/false,
                     /*rigorous=*/true, gamma_star(pn));
}

T1Result test_T1(const OscillatorSystem& sys, NormP p, double gamma,
                 const MafEstimate& alpha) {
  if (alpha.p != p || std::abs(alpha.gamma - gamma) > 1e-12) {
    throw Error(ErrorCode::GammaMismatch,
                "amplification estimate was computed for different (p, gamma)");
  }
  double lhs = vector_norm(edge_flow(sys), p);

  T1Result out;
  if (alpha.lower_bound_vacuous) {
    out.rigorous.name = "T1_rigorous";
    out.rigorous.applicable = false;
    out.rigorous.lhs = lhs;
    out.rigorous.note = "lower bound on the amplification factor is vacuous";
  } else {
    out.rigorous = make_record("T1_rigorous", lhs, alpha.lower_bound * gamma,
                               /*strict=*/false, /*rigorous=*/true, gamma);
  }
  out.heuristic =
      make_record("T1_heuristic", lhs, alpha.numeric_estimate * gamma,
                  /*strict=*/false, /*rigorous=*/false, gamma);
  out.heuristic.note = "threshold uses a non-certified numerical estimate";
  return out;
}

TestRecord test_AT0(const OscillatorSystem& sys) {
  double lhs = vector_norm(edge_flow(sys), NormP::inf);
  TestRecord r = make_record("AT0", lhs, 1.0, /*strict=*/false,
                             /*rigorous=*/false, M_PI_2);
  r.note = "approximate test; counterexamples exist";
  return r;
}

AcyclicResult acyclic_characterization(const OscillatorSystem& sys,
                                       double gamma) {
  if (!sys.graph.acyclic()) {
    throw Error(ErrorCode::NotAcyclic,
                "exact characterization requires an acyclic graph");
  }
  require_gamma_range(gamma);
  Eigen::VectorXd flow = edge_flow(sys);
  double lhs = flow.size() == 0 ? 0.0 : flow.lpNorm<Eigen::Infinity>();

  AcyclicResult res;
  res.record = make_record("acyclic_exact", lhs, std::sin(gamma),
                           /*strict=*/false, /*rigorous=*/true, gamma);
  res.record.note = "necessary and sufficient on acyclic graphs";
  res.exists = res.record.passed;
  if (res.exists) {
    LaplacianBundle lb = laplacian_bundle(sys.graph);
    Eigen::VectorXd asin_flow =
        flow.unaryExpr([](double v) { return std::asin(v); });
    Eigen::VectorXd x = lb.Ldag * (sys.graph.incidence() *
                                   sys.graph.weights().asDiagonal() *
                                   asin_flow);
    x.array() -= x.mean();
    res.x_star = x;
  }
  return res;
}

double h_n(int n, double gamma) {
  double s = std::sin(gamma);
  return s - (static_cast<double>(n - 2) / (2.0 * n)) * (gamma - s);
}

TestRecord h_n_test(const OscillatorSystem& sys, double gamma) {
  require_gamma_range(gamma);
  const Graph& g = sys.graph;
  if (!g.is_complete_unweighted() && !g.is_ring_unweighted()) {
    throw Error(ErrorCode::TopologyNotApplicable,
                "threshold applies to unweighted complete and ring graphs");
  }
  double lhs = vector_norm(edge_flow(sys), NormP::inf);
  TestRecord r = make_record("hn", lhs, h_n(g.node_count(), gamma),
                             /*strict=*/false, /*rigorous=*/true, gamma);
  return r;
}

}  // namespace cutsync
