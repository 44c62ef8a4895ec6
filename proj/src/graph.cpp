#include "ctgc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "ctgc/io.hpp"

namespace ctgc {

namespace {

SparseMat build_symmetric_csr(int n, const std::vector<Edge>& edges) {
  // Duplicate undirected edges collapse to the max weight; self loops kept
  // as single diagonal entries.
  std::map<std::pair<int, int>, double> collapsed;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw IndexOutOfRange("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") out of range for n=" + std::to_string(n));
    if (!(e.w >= 0.0) || !std::isfinite(e.w))
      throw InvalidValue("negative or non-finite edge weight");
    const auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = collapsed.emplace(key, e.w);
    if (!inserted) it->second = std::max(it->second, e.w);
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(collapsed.size() * 2);
  for (const auto& [uv, w] : collapsed) {
    trips.emplace_back(uv.first, uv.second, w);
    if (uv.first != uv.second) trips.emplace_back(uv.second, uv.first, w);
  }
  SparseMat adj(n, n);
  adj.setFromTriplets(trips.begin(), trips.end());
  adj.makeCompressed();
  return adj;
}

}  // namespace

SparseGraph::SparseGraph(int n, const std::vector<Edge>& edges, Eigen::MatrixXf features,
                         std::optional<std::vector<int>> labels)
    : n_(n), feat_(std::move(features)), labels_(std::move(labels)) {
  if (n < 0) throw InvalidConfig("negative node count");
  if (feat_.rows() != n)
    throw ShapeMismatch("feature rows (" + std::to_string(feat_.rows()) +
                        ") do not match node count (" + std::to_string(n) + ")");
  if (!feat_.allFinite()) throw InvalidValue("non-finite feature entry");
  if (labels_) {
    if (static_cast<int>(labels_->size()) != n)
      throw ShapeMismatch("label count does not match node count");
    for (int y : *labels_)
      if (y < 0) throw InvalidValue("negative class label");
  }
  adj_ = build_symmetric_csr(n, edges);
}

const std::vector<int>& SparseGraph::labels() const {
  if (!labels_) throw InvalidValue("graph has no labels");
  ++label_reads_;
  return *labels_;
}

int SparseGraph::num_classes() const {
  const auto& y = labels();
  int c = 0;
  for (int v : y) c = std::max(c, v + 1);
  return c;
}

std::vector<Edge> SparseGraph::edge_list() const {
  std::vector<Edge> edges;
  for (int i = 0; i < adj_.outerSize(); ++i)
    for (SparseMat::InnerIterator it(adj_, i); it; ++it)
      if (it.row() <= it.col())
        edges.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
  return edges;
}

std::int64_t SparseGraph::num_edges() const {
  return static_cast<std::int64_t>(edge_list().size());
}

std::unordered_set<std::uint64_t> SparseGraph::edge_keys() const {
  std::unordered_set<std::uint64_t> keys;
  for (const Edge& e : edge_list()) keys.insert(edge_key(e.u, e.v));
  return keys;
}

SparseGraph SparseGraph::with_edges(const std::vector<Edge>& edges) const {
  std::optional<std::vector<int>> labels;
  if (labels_) labels = *labels_;
  return SparseGraph(n_, edges, feat_, std::move(labels));
}

NormalizedOperator normalize_adjacency(const SparseMat& adjacency, OperatorKind kind) {
  const int n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n) throw ShapeMismatch("adjacency must be square");

  SparseMat base = adjacency;
  if (kind == OperatorKind::GcnAdjacency) {
    SparseMat eye(n, n);
    eye.setIdentity();
    base = adjacency + eye;
  }

  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < base.outerSize(); ++i)
    for (SparseMat::InnerIterator it(base, i); it; ++it) {
      if (it.value() < 0.0) throw InvalidValue("negative weight in adjacency");
      deg[it.row()] += it.value();
    }
  Eigen::VectorXd dinv_sqrt(n);
  for (int i = 0; i < n; ++i) dinv_sqrt[i] = deg[i] > 0.0 ? 1.0 / std::sqrt(deg[i]) : 0.0;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(base.nonZeros()) + (kind == OperatorKind::Laplacian ? n : 0));
  for (int i = 0; i < base.outerSize(); ++i)
    for (SparseMat::InnerIterator it(base, i); it; ++it) {
      const double scaled = dinv_sqrt[it.row()] * it.value() * dinv_sqrt[it.col()];
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                         kind == OperatorKind::Laplacian ? -scaled : scaled);
    }
  if (kind == OperatorKind::Laplacian)
    for (int i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);

  SparseMat out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  out.prune([](int, int, double v) { return v != 0.0; });
  return {kind, std::move(out)};
}

NormalizedOperator normalize(const SparseGraph& graph, OperatorKind kind) {
  return normalize_adjacency(graph.adjacency(), kind);
}

SparseMat sparse_from_dense(const Eigen::MatrixXd& dense, double prune_below) {
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < dense.rows(); ++i)
    for (int j = 0; j < dense.cols(); ++j)
      if (std::abs(dense(i, j)) > prune_below) trips.emplace_back(i, j, dense(i, j));
  SparseMat out(static_cast<int>(dense.rows()), static_cast<int>(dense.cols()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

SparseGraph load_graph(const std::filesystem::path& edge_path,
                       const std::filesystem::path& feature_path,
                       const std::optional<std::filesystem::path>& label_path) {
  Eigen::MatrixXf features = io::read_features(feature_path);
  const int n = static_cast<int>(features.rows());

  std::ifstream is(edge_path);
  if (!is) throw FormatError("cannot open " + edge_path.string());
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    long long u, v;
    if (!(ss >> u >> v)) continue;
    double w = 1.0;
    ss >> w;
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw IndexOutOfRange("edge node index out of range in " + edge_path.string());
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }

  std::optional<std::vector<int>> labels;
  if (label_path) {
    labels = io::read_labels(*label_path);
    if (static_cast<int>(labels->size()) != n)
      throw ShapeMismatch("label count does not match feature rows");
  }
  return SparseGraph(n, edges, std::move(features), std::move(labels));
}

SparseGraph generate_sbm(const std::vector<int>& block_sizes, double p_in, double p_out,
                         std::uint64_t seed) {
  if (block_sizes.empty()) throw InvalidConfig("empty block list");
  if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
    throw InvalidConfig("require 0 <= p_out < p_in <= 1");
  const int num_blocks = static_cast<int>(block_sizes.size());
  int n = 0;
  std::vector<int> block_of;
  for (int b = 0; b < num_blocks; ++b) {
    if (block_sizes[b] <= 0) throw InvalidConfig("non-positive block size");
    for (int i = 0; i < block_sizes[b]; ++i) block_of.push_back(b);
    n += block_sizes[b];
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double p = block_of[i] == block_of[j] ? p_in : p_out;
      if (unif(rng) < p) edges.push_back({i, j, 1.0});
    }

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXf features(n, num_blocks + 8);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < num_blocks + 8; ++j) {
      double v = 0.1 * gauss(rng);
      if (j == block_of[i]) v += 1.0;
      if (j >= num_blocks) v = gauss(rng);
      features(i, j) = static_cast<float>(v);
    }

  return SparseGraph(n, edges, std::move(features), block_of);
}

SparseMat knn_graph(const Eigen::MatrixXd& vectors, int k) {
  const int n = static_cast<int>(vectors.rows());
  if (k >= n) throw InvalidConfig("k must be < n");
  if (k < 1) throw InvalidConfig("k must be >= 1");

  constexpr double kEps = 1e-12;
  Eigen::VectorXd norms(n);
  for (int i = 0; i < n; ++i) norms[i] = std::max(vectors.row(i).norm(), kEps);

  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> sims;
    sims.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double s = vectors.row(i).dot(vectors.row(j)) / (norms[i] * norms[j]);
      sims.emplace_back(s, j);
    }
    // k best by similarity; ties resolved toward the lowest index.
    std::partial_sort(sims.begin(), sims.begin() + k, sims.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    for (int t = 0; t < k; ++t) {
      const int j = sims[t].second;
      trips.emplace_back(i, j, 1.0);
      trips.emplace_back(j, i, 1.0);
    }
  }
  SparseMat out(n, n);
  out.setFromTriplets(trips.begin(), trips.end(),
                      [](const double&, const double&) { return 1.0; });
  out.makeCompressed();
  return out;
}

LinkSplit split_links(const SparseGraph& graph, std::uint64_t seed) {
  const auto edges = graph.edge_list();
  const auto num_edges = static_cast<std::int64_t>(edges.size());
  if (num_edges < 200)
    throw InsufficientEdges("need >= 200 edges, have " + std::to_string(num_edges));

  const int n_val = static_cast<int>(std::lround(0.05 * static_cast<double>(num_edges)));
  const int n_test = static_cast<int>(std::lround(0.15 * static_cast<double>(num_edges)));
  const int n_train = 100;
  if (num_edges - n_val - n_test < n_train)
    throw InsufficientEdges("not enough edges left for the 100 training links");

  std::mt19937_64 rng(seed);
  std::vector<int> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);

  LinkSplit split;
  auto take = [&](int from, int count) {
    std::vector<std::pair<int, int>> out;
    out.reserve(count);
    for (int t = 0; t < count; ++t) {
      const Edge& e = edges[order[from + t]];
      out.emplace_back(e.u, e.v);
    }
    return out;
  };
  split.val_links = take(0, n_val);
  split.test_links = take(n_val, n_test);
  split.train_links = take(n_val + n_test, n_train);

  std::vector<Edge> message_edges;
  for (std::size_t t = n_val + n_test; t < edges.size(); ++t)
    message_edges.push_back(edges[order[t]]);
  split.message_graph = graph.with_edges(message_edges);
  split.full_edge_keys = graph.edge_keys();

  const int n = graph.n();
  std::unordered_set<std::uint64_t> used;
  std::uniform_int_distribution<int> pick(0, n - 1);
  auto sample_negatives = [&](std::size_t count) {
    std::vector<std::pair<int, int>> out;
    while (out.size() < count) {
      const int u = pick(rng);
      const int v = pick(rng);
      if (u == v) continue;
      const auto key = edge_key(u, v);
      if (split.full_edge_keys.count(key) || used.count(key)) continue;
      used.insert(key);
      out.emplace_back(std::min(u, v), std::max(u, v));
    }
    return out;
  };
  split.val_neg = sample_negatives(split.val_links.size());
  split.test_neg = sample_negatives(split.test_links.size());
  split.train_neg = sample_negatives(split.train_links.size());
  return split;
}

}  // namespace ctgc
