#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cutsync/errors.hpp"

namespace cutsync {

// Undirected edge with the canonical orientation low index -> high index.
struct Edge {
  int i;
  int j;
  double w;
};

// Connected weighted undirected graph. Edges are stored sorted
// lexicographically with i < j; every derived linear-algebra object uses
// that fixed orientation so reports are bit-reproducible.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Oriented incidence matrix, n x m: +1 at the source (lower index) row,
  // -1 at the sink row of each edge column.
  const Eigen::MatrixXd& incidence() const { return B_; }

  Eigen::VectorXd weights() const;

  bool unweighted() const { return unweighted_; }
  bool acyclic() const { return edge_count() == n_ - 1; }
  bool is_complete_unweighted() const;
  bool is_ring_unweighted() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  Eigen::MatrixXd B_;
  bool unweighted_;
};

// Laplacian together with its pseudoinverse and full eigendecomposition.
struct LaplacianBundle {
  Eigen::MatrixXd L;
  Eigen::MatrixXd Ldag;
  Eigen::VectorXd eigvals;  // ascending, eigvals(0) ~ 0
  Eigen::MatrixXd eigvecs;  // orthonormal columns

  double lambda2() const { return eigvals(1); }
};

LaplacianBundle laplacian_bundle(const Graph& g);

// L_v = B * diag(a) * diag(v) * B^T for an edge vector v of length m.
Eigen::MatrixXd scaled_laplacian(const Graph& g, const Eigen::VectorXd& v);

// Dimensions of the cutset space Img(B^T) and the weighted cycle space
// Ker(B diag(a)), plus the smallest principal angle between them. The two
// subspaces decompose edge space, so the angle must be strictly positive.
struct DecompositionReport {
  int dim_cutset;      // n - 1
  int dim_cycle;       // m - n + 1
  double min_angle;    // radians; pi/2 when the cycle space is trivial
};

DecompositionReport verify_decomposition(const Graph& g);

}  // namespace cutsync
