#include "cutsync/maf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cutsync/errors.hpp"
#include "cutsync/projection.hpp"

namespace cutsync {

double sinc(double x) {
  double ax = std::abs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double alpha_lower_bound_2(double gamma) { return sinc(gamma); }

double alpha_lower_bound_general(double gamma, double p_norm_of_P) {
  double s = sinc(gamma);
  return 0.5 * (1.0 + s) - p_norm_of_P * 0.5 * (1.0 - s);
}

std::string maf_method_name(MafMethod m) {
  switch (m) {
    case MafMethod::theorem_2norm: return "theorem_2norm";
    case MafMethod::theorem_general: return "theorem_general";
    case MafMethod::multistart: return "multistart";
    case MafMethod::bruteforce: return "bruteforce";
  }
  return "unknown";
}

namespace {

constexpr double kDegenerate = 1e-14;

// Shared evaluation context: y = BtV * a and z = normalize(BtV * b) stay in
// the cutset space because BtV's columns span it.
struct Objective {
  const Eigen::MatrixXd& P;
  const Eigen::MatrixXd& BtV;
  NormP p;
  double gamma;

  double eval(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    Eigen::VectorXd y = BtV * a;
    Eigen::VectorXd zraw = BtV * b;
    double nz = vector_norm(zraw, p);
    if (nz < kDegenerate) return std::numeric_limits<double>::infinity();
    Eigen::VectorXd scaled =
        y.unaryExpr([](double v) { return sinc(v); }).cwiseProduct(zraw) / nz;
    return vector_norm(P * scaled, p);
  }

  // Scale a back onto the feasible set when ||y||_p exceeds gamma; valid
  // because y is linear in a and the feasible set is star-shaped around 0.
  void project(Eigen::VectorXd& a) const {
    double ny = vector_norm(BtV * a, p);
    if (ny <= gamma) return;
    if (gamma <= 0.0 || ny < kDegenerate) {
      a.setZero();
    } else {
      a *= gamma / ny;
    }
  }
};

}  // namespace

MafEstimate estimate_alpha(const Graph& g, NormP p, double gamma,
                           const MafConfig& cfg) {
  if (cfg.starts < 1) {
    throw Error(ErrorCode::ConfigInvalid, "multistart needs at least 1 start");
  }
  if (cfg.iters < 1) {
    throw Error(ErrorCode::ConfigInvalid, "multistart needs at least 1 sweep");
  }
  if (gamma < 0.0 || gamma > M_PI_2 + 1e-12) {
    throw Error(ErrorCode::DomainError,
                "gamma must lie in [0, pi/2] for amplification estimates");
  }

  const int n = g.node_count();
  const int dim = n - 1;
  CutsetProjection cp = cutset_projection(g);
  Eigen::MatrixXd V = ones_complement_basis(n);
  Eigen::MatrixXd BtV = g.incidence().transpose() * V;
  Objective obj{cp.P, BtV, p, gamma};

  std::mt19937_64 rng = make_rng(cfg.seed, "estimate_alpha");

  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_a = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd best_b = Eigen::VectorXd::Zero(dim);

  for (int s = 0; s < cfg.starts; ++s) {
    Eigen::VectorXd a(dim), b(dim);
    for (int i = 0; i < dim; ++i) a(i) = uniform_real(rng, -1.0, 1.0);
    double ny = vector_norm(BtV * a, p);
    if (gamma <= 0.0 || ny < kDegenerate) {
      a.setZero();
    } else {
      a *= gamma * uniform_real(rng, 0.0, 1.0) / ny;
    }
    double nz = 0.0;
    for (int tries = 0; tries < 64 && nz < 1e-8; ++tries) {
      for (int i = 0; i < dim; ++i) b(i) = uniform_real(rng, -1.0, 1.0);
      nz = vector_norm(BtV * b, p);
    }

    double f = obj.eval(a, b);
    double step_a = std::max(0.25 * gamma, 0.05);
    double step_b = 0.25;
    for (int sweep = 0; sweep < cfg.iters; ++sweep) {
      bool improved = false;
      for (int i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd cand = a;
          cand(i) += sign * step_a;
          obj.project(cand);
          double fc = obj.eval(cand, b);
          if (fc < f - 1e-15) {
            a = cand;
            f = fc;
            improved = true;
            break;
          }
        }
      }
      for (int i = 0; i < dim; ++i) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd cand = b;
          cand(i) += sign * step_b;
          double fc = obj.eval(a, cand);
          if (fc < f - 1e-15) {
            b = cand;
            f = fc;
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        step_a *= 0.5;
        step_b *= 0.5;
        if (std::max(step_a, step_b) < 1e-12) break;
      }
    }
    if (f < best_f) {
      best_f = f;
      best_a = a;
      best_b = b;
    }
  }

  // Evaluating the best z at y = 0 both caps the estimate by ||P||_p and
  // keeps the reported estimate at most the y = 0 value.
  double at_zero = obj.eval(Eigen::VectorXd::Zero(dim), best_b);
  if (at_zero < best_f) best_f = at_zero;

  MafEstimate est;
  est.p = p;
  est.gamma = gamma;
  est.numeric_estimate = best_f;
  est.value_at_zero = at_zero;
  est.method = MafMethod::multistart;
  if (p == NormP::two && g.unweighted()) {
    est.lower_bound = alpha_lower_bound_2(gamma);
  } else {
    est.lower_bound = alpha_lower_bound_general(gamma, cp.norm(p));
  }
  est.lower_bound_vacuous = !(est.lower_bound > 0.0);
  return est;
}

double brute_force_alpha(const Graph& g, NormP p, double gamma,
                         int points_per_dim) {
  const int n = g.node_count();
  if (n > 4) {
    throw Error(ErrorCode::TooLarge,
                "brute-force search is limited to graphs with at most 4 nodes");
  }
  if (points_per_dim < 3) {
    throw Error(ErrorCode::ConfigInvalid, "grid needs at least 3 points");
  }
  if (points_per_dim % 2 == 0) ++points_per_dim;  // keep 0 on the grid

  const int dim = n - 1;
  CutsetProjection cp = cutset_projection(g);
  Eigen::MatrixXd V = ones_complement_basis(n);
  Eigen::MatrixXd BtV = g.incidence().transpose() * V;

  std::vector<double> axis(points_per_dim);
  for (int i = 0; i < points_per_dim; ++i) {
    axis[i] = -M_PI + 2.0 * M_PI * i / (points_per_dim - 1);
  }

  // Enumerate one coordinate block as the cross product axis^dim.
  auto enumerate = [&](auto&& consume) {
    std::vector<int> idx(dim, 0);
    Eigen::VectorXd point(dim);
    while (true) {
      for (int d = 0; d < dim; ++d) point(d) = axis[idx[d]];
      consume(point);
      int d = 0;
      while (d < dim) {
        if (++idx[d] < points_per_dim) break;
        idx[d] = 0;
        ++d;
      }
      if (d == dim) break;
    }
  };

  std::vector<Eigen::VectorXd> sinc_factors;  // sinc(y) for feasible y
  enumerate([&](const Eigen::VectorXd& a) {
    Eigen::VectorXd y = BtV * a;
    if (vector_norm(y, p) <= gamma + 1e-12) {
      sinc_factors.push_back(
          y.unaryExpr([](double v) { return sinc(v); }));
    }
  });

  std::vector<Eigen::VectorXd> zs;
  enumerate([&](const Eigen::VectorXd& b) {
    Eigen::VectorXd zraw = BtV * b;
    double nz = vector_norm(zraw, p);
    if (nz >= 1e-12) zs.push_back(zraw / nz);
  });

  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : sinc_factors) {
    for (const auto& z : zs) {
      double f = vector_norm(cp.P * s.cwiseProduct(z), p);
      best = std::min(best, f);
    }
  }
  return best;
}

}  // namespace cutsync
