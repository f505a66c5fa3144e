#include "cutsync/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "cutsync/linalg.hpp"

namespace cutsync {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw Error(ErrorCode::DimensionMismatch, "graph needs at least one node");
  }
  for (auto& e : edges_) {
    if (e.i == e.j) {
      throw Error(ErrorCode::SelfLoop,
                  "self-loop at node " + std::to_string(e.i));
    }
    if (e.i < 0 || e.j < 0 || e.i >= n_ || e.j >= n_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "edge endpoint out of range: (" + std::to_string(e.i) +
                      ", " + std::to_string(e.j) + ")");
    }
    if (!(e.w > 0.0)) {
      throw Error(ErrorCode::NonpositiveWeight,
                  "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                      ") has nonpositive weight");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].i == edges_[k - 1].i && edges_[k].j == edges_[k - 1].j) {
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge (" + std::to_string(edges_[k].i) + ", " +
                      std::to_string(edges_[k].j) + ")");
    }
  }

  UnionFind uf(n_);
  for (const auto& e : edges_) uf.unite(e.i, e.j);
  for (int v = 1; v < n_; ++v) {
    if (uf.find(v) != uf.find(0)) {
      throw Error(ErrorCode::Disconnected, "graph is not connected");
    }
  }

  const int m = edge_count();
  B_ = Eigen::MatrixXd::Zero(n_, m);
  for (int k = 0; k < m; ++k) {
    B_(edges_[k].i, k) = 1.0;
    B_(edges_[k].j, k) = -1.0;
  }
  unweighted_ = std::all_of(edges_.begin(), edges_.end(),
                            [](const Edge& e) { return e.w == 1.0; });
}

Eigen::VectorXd Graph::weights() const {
  Eigen::VectorXd a(edge_count());
  for (int k = 0; k < edge_count(); ++k) a(k) = edges_[k].w;
  return a;
}

bool Graph::is_complete_unweighted() const {
  return unweighted_ && n_ >= 3 &&
         edge_count() == n_ * (n_ - 1) / 2;
}

bool Graph::is_ring_unweighted() const {
  if (!unweighted_ || n_ < 3 || edge_count() != n_) return false;
  std::vector<int> degree(n_, 0);
  for (const auto& e : edges_) {
    ++degree[e.i];
    ++degree[e.j];
  }
  // Connected with every degree 2 means a single cycle through all nodes.
  return std::all_of(degree.begin(), degree.end(),
                     [](int d) { return d == 2; });
}

LaplacianBundle laplacian_bundle(const Graph& g) {
  LaplacianBundle lb;
  const Eigen::MatrixXd& B = g.incidence();
  lb.L = B * g.weights().asDiagonal() * B.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lb.L);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigSolveFailure, "Laplacian eigensolve failed");
  }
  lb.eigvals = es.eigenvalues();
  lb.eigvecs = es.eigenvectors();
  const double cutoff =
      kPinvRelThreshold * std::max(lb.eigvals(lb.eigvals.size() - 1), 1.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lb.eigvals.size());
  for (int i = 0; i < lb.eigvals.size(); ++i) {
    if (lb.eigvals(i) > cutoff) inv(i) = 1.0 / lb.eigvals(i);
  }
  lb.Ldag = lb.eigvecs * inv.asDiagonal() * lb.eigvecs.transpose();
  return lb;
}

Eigen::MatrixXd scaled_laplacian(const Graph& g, const Eigen::VectorXd& v) {
  if (v.size() != g.edge_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "edge vector has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(g.edge_count()));
  }
  const Eigen::MatrixXd& B = g.incidence();
  Eigen::VectorXd av = g.weights().cwiseProduct(v);
  return B * av.asDiagonal() * B.transpose();
}

DecompositionReport verify_decomposition(const Graph& g) {
  DecompositionReport rep;
  const Eigen::MatrixXd& B = g.incidence();
  Eigen::MatrixXd Bt = B.transpose();
  Eigen::MatrixXd BA = B * g.weights().asDiagonal();
  rep.dim_cutset = matrix_rank(Bt);
  rep.dim_cycle = g.edge_count() - matrix_rank(BA);
  Eigen::MatrixXd cutset_basis = column_space_basis(Bt);
  Eigen::MatrixXd cycle_basis = null_space_basis(BA);
  rep.min_angle = min_principal_angle(cutset_basis, cycle_basis);
  return rep;
}

}  // namespace cutsync
