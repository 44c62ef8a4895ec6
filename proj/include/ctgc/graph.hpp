#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ctgc/errors.hpp"

namespace ctgc {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

inline std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Undirected weighted graph with dense node features and optional class
// labels. The adjacency is stored CSR (row-major sparse), symmetric by
// construction; duplicate input edges collapse to the max weight.
//
// Labels are evaluation-only. Every read through labels() is counted so
// tests can prove the condensation path never touches them.
class SparseGraph {
 public:
  SparseGraph() = default;
  SparseGraph(int n, const std::vector<Edge>& edges, Eigen::MatrixXf features,
              std::optional<std::vector<int>> labels = std::nullopt);

  int n() const { return n_; }
  const SparseMat& adjacency() const { return adj_; }
  const Eigen::MatrixXf& features() const { return feat_; }
  Eigen::MatrixXd features_f64() const { return feat_.cast<double>(); }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const;
  int num_classes() const;

  std::size_t label_access_count() const { return label_reads_; }
  void reset_label_access_count() const { label_reads_ = 0; }

  // Unique undirected edges (u < v) with weights.
  std::vector<Edge> edge_list() const;
  std::int64_t num_edges() const;
  std::unordered_set<std::uint64_t> edge_keys() const;

  // Same nodes/features/labels, different edge set.
  SparseGraph with_edges(const std::vector<Edge>& edges) const;

 private:
  int n_ = 0;
  SparseMat adj_;
  Eigen::MatrixXf feat_;
  std::optional<std::vector<int>> labels_;
  mutable std::size_t label_reads_ = 0;
};

enum class OperatorKind { GcnAdjacency, Laplacian };

// Symmetric normalized propagation operator.
//   GcnAdjacency:  A_hat = D~^{-1/2} (A + I) D~^{-1/2}
//   Laplacian:     L     = I - D^{-1/2} A D^{-1/2}   (no self-loops)
// Degree-zero rows get a zero D^{-1/2} entry instead of erroring.
struct NormalizedOperator {
  OperatorKind kind = OperatorKind::Laplacian;
  SparseMat matrix;
};

NormalizedOperator normalize(const SparseGraph& graph, OperatorKind kind);
NormalizedOperator normalize_adjacency(const SparseMat& adjacency, OperatorKind kind);

SparseMat sparse_from_dense(const Eigen::MatrixXd& dense, double prune_below = 0.0);

SparseGraph load_graph(const std::filesystem::path& edge_path,
                       const std::filesystem::path& feature_path,
                       const std::optional<std::filesystem::path>& label_path = std::nullopt);

// Stochastic block model fixture. Labels are block ids; features are the
// block one-hot (plus small noise) with 8 extra pure-noise columns.
SparseGraph generate_sbm(const std::vector<int>& block_sizes, double p_in, double p_out,
                         std::uint64_t seed);

// Mutual-union KNN graph under cosine similarity. 0/1 weights, zero
// diagonal; ties broken by lowest index; zero rows guarded by eps=1e-12.
SparseMat knn_graph(const Eigen::MatrixXd& vectors, int k);

// Link-prediction split per the evaluation protocol: 100 training links,
// 5% validation, 15% test; negatives are true non-edges of the full graph,
// one per positive. Validation/test edges are removed from message_graph.
struct LinkSplit {
  std::vector<std::pair<int, int>> train_links;
  std::vector<std::pair<int, int>> val_links;
  std::vector<std::pair<int, int>> test_links;
  std::vector<std::pair<int, int>> train_neg;
  std::vector<std::pair<int, int>> val_neg;
  std::vector<std::pair<int, int>> test_neg;
  SparseGraph message_graph;
  std::unordered_set<std::uint64_t> full_edge_keys;

  const std::vector<std::pair<int, int>>& val_positives() const {
    ++val_reads_;
    return val_links;
  }
  const std::vector<std::pair<int, int>>& test_positives() const {
    ++test_reads_;
    return test_links;
  }
  std::size_t val_access_count() const { return val_reads_; }
  std::size_t test_access_count() const { return test_reads_; }
  void reset_access_counts() const { val_reads_ = test_reads_ = 0; }

 private:
  mutable std::size_t val_reads_ = 0;
  mutable std::size_t test_reads_ = 0;
};

LinkSplit split_links(const SparseGraph& graph, std::uint64_t seed);

}  // namespace ctgc
