#include "cutsync/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "cutsync/errors.hpp"
#include "cutsync/torus.hpp"

namespace cutsync {

namespace {

Eigen::VectorXd rhs(const Graph& g, const Eigen::VectorXd& omega_raw,
                    const Eigen::VectorXd& theta) {
  Eigen::VectorXd s =
      (g.incidence().transpose() * theta).array().sin().matrix();
  return omega_raw -
         g.incidence() * g.weights().cwiseProduct(s);
}

double max_row_sum(const Graph& g) {
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(g.node_count());
  for (const auto& e : g.edges()) {
    deg(e.i) += e.w;
    deg(e.j) += e.w;
  }
  return deg.maxCoeff();
}

double residual_inf(const OscillatorSystem& sys, const Eigen::VectorXd& x) {
  return (sys.omega - sys.graph.incidence() *
                          sys.graph.weights().cwiseProduct(
                              (sys.graph.incidence().transpose() * x)
                                  .array()
                                  .sin()
                                  .matrix()))
      .lpNorm<Eigen::Infinity>();
}

}  // namespace

double default_dt(const OscillatorSystem& sys) {
  double scale = std::max(1.0, sys.omega_raw().lpNorm<Eigen::Infinity>());
  return 1e-3 / scale;
}

Trajectory simulate(const OscillatorSystem& sys, const Eigen::VectorXd& theta0,
                    double dt, double t_end, int stride) {
  if (dt <= 0.0 || t_end <= 0.0 || stride < 1) {
    throw Error(ErrorCode::ConfigInvalid,
                "simulation needs dt > 0, t_end > 0, stride >= 1");
  }
  const Graph& g = sys.graph;
  if (theta0.size() != g.node_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "initial state length does not match node count");
  }
  Eigen::VectorXd omega_raw = sys.omega_raw();
  double speed = omega_raw.lpNorm<Eigen::Infinity>() + 2.0 * max_row_sum(g);
  if (dt * speed > 0.5) {
    throw Error(ErrorCode::StepTooLarge,
                "dt too large for the system's stiffness guard");
  }

  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  Trajectory traj;
  traj.times.reserve(steps / stride + 2);

  Eigen::VectorXd y = theta0;
  double t = 0.0;
  auto record = [&]() {
    traj.times.push_back(t);
    traj.states_unwrapped.push_back(y);
    traj.states.push_back(wrap_angles(y));
    traj.freq.push_back(rhs(g, omega_raw, y));
  };
  record();
  for (long k = 0; k < steps; ++k) {
    double h = std::min(dt, t_end - t);
    Eigen::VectorXd k1 = rhs(g, omega_raw, y);
    Eigen::VectorXd k2 = rhs(g, omega_raw, y + 0.5 * h * k1);
    Eigen::VectorXd k3 = rhs(g, omega_raw, y + 0.5 * h * k2);
    Eigen::VectorXd k4 = rhs(g, omega_raw, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if ((k + 1) % stride == 0 || k + 1 == steps) record();
  }
  return traj;
}

FrequencySyncResult detect_frequency_sync(const Trajectory& traj,
                                          double window, double tol) {
  if (traj.times.size() < 2) {
    throw Error(ErrorCode::ConfigInvalid, "trajectory too short");
  }
  double t_end = traj.times.back();
  if (window >= t_end) {
    throw Error(ErrorCode::WindowTooLong,
                "inspection window exceeds the trajectory duration");
  }
  // The synchronous frequency equals the mean of the right-hand side at any
  // state, since the coupling terms cancel pairwise.
  double omega_syn = traj.freq.front().mean();
  double start = t_end - window;
  double max_dev = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    if (traj.times[k] < start) continue;
    max_dev = std::max(
        max_dev,
        (traj.freq[k].array() - omega_syn).abs().maxCoeff());
  }
  return {max_dev < tol, omega_syn, max_dev};
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::no_convergence: return "no_convergence";
    case SolveStatus::iterate_left_domain: return "iterate_left_domain";
    case SolveStatus::singular_jacobian: return "singular_jacobian";
  }
  return "unknown";
}

StabilityResult check_stability(const OscillatorSystem& sys,
                                const Eigen::VectorXd& x_star) {
  if (residual_inf(sys, x_star) > 1e-6) {
    throw Error(ErrorCode::NotAnEquilibrium,
                "stability requested at a non-equilibrium point");
  }
  const Graph& g = sys.graph;
  Eigen::VectorXd cosines =
      (g.incidence().transpose() * x_star).array().cos().matrix();
  Eigen::MatrixXd Lcos = scaled_laplacian(g, cosines);
  Eigen::MatrixXd V = ones_complement_basis(g.node_count());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V.transpose() * Lcos * V);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigSolveFailure, "stability eigensolve failed");
  }
  double lam = es.eigenvalues()(0);
  return {lam > 1e-9, lam};
}

namespace {

// Fill stability fields of a converged result; marginal or unstable
// equilibria are reported, not errors.
void attach_stability(const OscillatorSystem& sys, EquilibriumResult& res) {
  StabilityResult st = check_stability(sys, res.x_star);
  res.stable = st.stable;
  res.jacobian_lambda2 = st.jacobian_lambda2;
}

}  // namespace

EquilibriumResult solve_newton(const OscillatorSystem& sys,
                               const Eigen::VectorXd& x_init, int max_iter,
                               double tol) {
  const Graph& g = sys.graph;
  const int n = g.node_count();
  Eigen::MatrixXd V = ones_complement_basis(n);

  EquilibriumResult res;
  res.solver = "newton";

  Eigen::VectorXd x = x_init;
  x.array() -= x.mean();

  auto F = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return g.incidence() * g.weights().cwiseProduct(
                               (g.incidence().transpose() * v)
                                   .array()
                                   .sin()
                                   .matrix()) -
           sys.omega;
  };

  Eigen::VectorXd f = F(x);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < max_iter; ++iter) {
    if (fnorm < tol) break;
    Eigen::VectorXd cosines =
        (g.incidence().transpose() * x).array().cos().matrix();
    Eigen::MatrixXd Jr =
        V.transpose() * scaled_laplacian(g, cosines) * V;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Jr);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::EigSolveFailure, "Newton eigensolve failed");
    }
    double max_abs = es.eigenvalues().cwiseAbs().maxCoeff();
    if (max_abs < 1e-14 ||
        es.eigenvalues().cwiseAbs().minCoeff() < 1e-14 * max_abs) {
      res.status = SolveStatus::singular_jacobian;
      res.iterations = iter;
      res.x_star = x;
      res.residual = fnorm;
      return res;
    }
    Eigen::VectorXd step_r = es.eigenvectors() *
                             (es.eigenvectors().transpose() *
                              (V.transpose() * f))
                                 .cwiseQuotient(es.eigenvalues());
    Eigen::VectorXd step = V * step_r;

    double damping = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 8; ++bt) {
      Eigen::VectorXd cand = x - damping * step;
      Eigen::VectorXd fc = F(cand);
      double fcnorm = fc.lpNorm<Eigen::Infinity>();
      if (fcnorm < fnorm) {
        x = cand;
        f = fc;
        fnorm = fcnorm;
        accepted = true;
        break;
      }
      damping *= 0.5;
    }
    res.iterations = iter + 1;
    if (!accepted) {
      res.status = SolveStatus::no_convergence;
      res.x_star = x;
      res.residual = fnorm;
      return res;
    }
  }

  res.x_star = x;
  res.residual = fnorm;
  if (fnorm < tol) {
    res.status = SolveStatus::converged;
    attach_stability(sys, res);
  } else {
    res.status = SolveStatus::no_convergence;
  }
  return res;
}

EquilibriumResult solve_fixed_point(const OscillatorSystem& sys, NormP p,
                                    double gamma, int max_iter, double tol) {
  if (gamma < 0.0 || gamma >= M_PI) {
    throw Error(ErrorCode::DomainError, "gamma out of range");
  }
  const Graph& g = sys.graph;
  const int m = g.edge_count();

  EquilibriumResult res;
  res.solver = "fixed_point";

  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  for (int iter = 1; iter <= max_iter; ++iter) {
    Eigen::VectorXd sinc_y = y.unaryExpr([](double v) { return sinc(v); });
    Eigen::MatrixXd Ls = scaled_laplacian(g, sinc_y);
    Eigen::VectorXd y_next =
        g.incidence().transpose() * (pinv_symmetric(Ls) * sys.omega);
    if (vector_norm(y_next, p) > gamma + 1e-12) {
      res.status = SolveStatus::iterate_left_domain;
      res.fail_iteration = iter;
      res.iterations = iter;
      return res;
    }
    double delta = (y_next - y).lpNorm<Eigen::Infinity>();
    y = y_next;
    res.iterations = iter;
    if (delta < tol) break;
    if (iter == max_iter) {
      res.status = SolveStatus::no_convergence;
      return res;
    }
  }

  // Lift edge coordinates back to angles: least squares for B^T x = y via
  // the unweighted Laplacian pseudoinverse, then polish the nodal residual.
  Eigen::MatrixXd BBt = g.incidence() * g.incidence().transpose();
  Eigen::VectorXd x = pinv_symmetric(BBt) * (g.incidence() * y);
  x.array() -= x.mean();
  EquilibriumResult polished = solve_newton(sys, x, 50, 1e-13);
  if (polished.status != SolveStatus::converged) {
    res.status = polished.status;
    res.x_star = polished.x_star;
    res.residual = polished.residual;
    return res;
  }
  res.status = SolveStatus::converged;
  res.x_star = polished.x_star;
  res.residual = polished.residual;
  attach_stability(sys, res);
  return res;
}

EquivalenceReport equivalence_experiment(const OscillatorSystem& sys,
                                         double gamma, int trials,
                                         std::uint64_t seed) {
  const Graph& g = sys.graph;
  const int n = g.node_count();
  if (n > 10) {
    throw Error(ErrorCode::TooLarge,
                "equivalence experiment is limited to small systems");
  }
  std::mt19937_64 rng = make_rng(seed, "equivalence_experiment");

  EquivalenceReport rep;
  rep.trials = trials;

  // Hunt for a stable equilibrium: fixed point inside the cohesive ball
  // first, then Newton from zero, then a seeded multistart.
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(n));
  for (int s = 0; s < 50; ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = uniform_real(rng, -M_PI, M_PI);
    starts.push_back(x);
  }

  EquilibriumResult found;
  EquilibriumResult fp = solve_fixed_point(sys, NormP::inf, gamma);
  if (fp.status == SolveStatus::converged && fp.stable) {
    found = fp;
  } else {
    for (const auto& x0 : starts) {
      EquilibriumResult nr = solve_newton(sys, x0);
      if (nr.status == SolveStatus::converged && nr.residual < 1e-9 &&
          nr.stable) {
        found = nr;
        break;
      }
    }
  }
  rep.equilibrium_found = found.status == SolveStatus::converged;
  if (rep.equilibrium_found) rep.x_star = found.x_star;

  double row = max_row_sum(g);
  double speed = sys.omega_raw().lpNorm<Eigen::Infinity>() + 2.0 * row;
  double dt = 0.2 / std::max(speed, 1.0);
  double t_end = 400.0;
  int stride = 16;
  double sync_tol = 1e-5;

  for (int trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd theta0(n);
    if (rep.equilibrium_found) {
      double shift = uniform_real(rng, 0.0, 2.0 * M_PI);
      for (int i = 0; i < n; ++i) {
        theta0(i) = found.x_star(i) + shift + uniform_real(rng, -0.05, 0.05);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        theta0(i) = uniform_real(rng, 0.0, 2.0 * M_PI);
      }
    }
    Trajectory traj = simulate(sys, theta0, dt, t_end, stride);
    FrequencySyncResult sync =
        detect_frequency_sync(traj, 0.1 * t_end, sync_tol);

    if (rep.equilibrium_found) {
      if (!sync.synced) {
        ++rep.contradictions;
        continue;
      }
      ++rep.synced;
      Eigen::VectorXd x_final = embed(traj.states.back(), g);
      Eigen::VectorXd x_ref = embed(wrap_angles(rep.x_star), g);
      if ((x_final - x_ref).lpNorm<Eigen::Infinity>() < 1e-3) {
        ++rep.matched;
      } else {
        // A different but valid stable manifold is not a contradiction of
        // the existence equivalence.
        ++rep.inconclusive;
      }
    } else {
      if (sync.synced) {
        ++rep.contradictions;
      }
    }
  }
  return rep;
}

}  // namespace cutsync
