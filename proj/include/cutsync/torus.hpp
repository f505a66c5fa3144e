#pragma once

#include <Eigen/Dense>

#include "cutsync/graph.hpp"

namespace cutsync {

// Absolute tolerance for membership boundary comparisons, so fixtures that
// sit exactly on a set boundary evaluate deterministically as members.
inline constexpr double kMembershipTol = 1e-9;

// Wrap an angle into [0, 2*pi).
double wrap_angle(double a);
Eigen::VectorXd wrap_angles(const Eigen::VectorXd& theta);

struct GeodesicResult {
  double distance;        // in [0, pi]
  bool counterclockwise;  // direction of the shorter arc from a to b;
                          // ties at pi resolve to counterclockwise
};

GeodesicResult geodesic_distance(double a, double b);

// Lift of a torus point to a zero-mean vector in R^n: breadth-first
// traversal from node 0, assigning x_k = x_j + signed geodesic distance
// along each tree edge (positive when the shorter arc from theta_j to
// theta_k runs counterclockwise), then re-centering. Traversal order is
// fixed (lowest-index visited node first, then lowest-index neighbor) so
// the output is reproducible for any input.
Eigen::VectorXd embed(const Eigen::VectorXd& theta, const Graph& g);

// All angles inside some closed arc of length gamma.
bool in_arc_subset(const Eigen::VectorXd& theta, double gamma);

// Geodesic distance at most gamma across every edge.
bool in_cohesive(const Eigen::VectorXd& theta, const Graph& g, double gamma);

// The lift satisfies ||B^T x||_inf <= gamma; equivalent to membership of
// the rotation class in the embedded-cohesive set.
bool in_embedded_cohesive(const Eigen::VectorXd& theta, const Graph& g,
                          double gamma);

}  // namespace cutsync
