#include "cutsync/torus.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cutsync/errors.hpp"

namespace cutsync {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can return exactly 2*pi after the correction when a is a tiny
  // negative number; fold that case back to zero.
  if (w >= kTwoPi) w = 0.0;
  return w;
}

Eigen::VectorXd wrap_angles(const Eigen::VectorXd& theta) {
  return theta.unaryExpr([](double a) { return wrap_angle(a); });
}

GeodesicResult geodesic_distance(double a, double b) {
  double ccw = wrap_angle(b - a);       // arc length going counterclockwise
  double cw = kTwoPi - ccw;             // arc length going clockwise
  if (ccw == 0.0) cw = 0.0;
  if (ccw <= cw) return {ccw, true};
  return {cw, false};
}

Eigen::VectorXd embed(const Eigen::VectorXd& theta, const Graph& g) {
  const int n = g.node_count();
  if (theta.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "phase vector length does not match node count");
  }
  Eigen::VectorXd th = wrap_angles(theta);

  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> visited(n, false);
  visited[0] = true;
  for (int placed = 1; placed < n; ++placed) {
    int j = -1, k = -1;
    for (int cand = 0; cand < n && j < 0; ++cand) {
      if (!visited[cand]) continue;
      for (int nb : adj[cand]) {
        if (!visited[nb]) {
          j = cand;
          k = nb;
          break;
        }
      }
    }
    if (j < 0) {
      throw Error(ErrorCode::Disconnected, "unreachable node in embedding");
    }
    GeodesicResult geo = geodesic_distance(th(j), th(k));
    x(k) = x(j) + (geo.counterclockwise ? geo.distance : -geo.distance);
    visited[k] = true;
  }
  x.array() -= x.mean();
  return x;
}

bool in_arc_subset(const Eigen::VectorXd& theta, double gamma) {
  const int n = static_cast<int>(theta.size());
  if (n <= 1) return true;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = wrap_angle(theta(i));
  std::sort(s.begin(), s.end());
  double max_gap = s[0] + kTwoPi - s[n - 1];
  for (int i = 1; i < n; ++i) max_gap = std::max(max_gap, s[i] - s[i - 1]);
  return kTwoPi - max_gap <= gamma + kMembershipTol;
}

bool in_cohesive(const Eigen::VectorXd& theta, const Graph& g, double gamma) {
  for (const auto& e : g.edges()) {
    if (geodesic_distance(theta(e.i), theta(e.j)).distance >
        gamma + kMembershipTol) {
      return false;
    }
  }
  return true;
}

bool in_embedded_cohesive(const Eigen::VectorXd& theta, const Graph& g,
                          double gamma) {
  Eigen::VectorXd x = embed(theta, g);
  Eigen::VectorXd edge_diff = g.incidence().transpose() * x;
  double norm = edge_diff.size() == 0
                    ? 0.0
                    : edge_diff.lpNorm<Eigen::Infinity>();
  return norm <= gamma + kMembershipTol;
}

}  // namespace cutsync
