#include "fractalnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "fractalnet/errors.hpp"
#include "fractalnet/format.hpp"

namespace fractalnet {
namespace {

bool all_equal(const std::vector<double>& values) {
  return std::adjacent_find(values.begin(), values.end(),
                            std::not_equal_to<>()) == values.end();
}

}  // namespace

std::optional<double> assortativity(const Graph& g) {
  if (g.edge_count() == 0) {
    throw InvalidParameter("assortativity needs at least one edge");
  }
  std::vector<double> endpoint_degree;
  endpoint_degree.reserve(2 * g.edge_count());
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_prod = 0.0;
  for (const Edge& e : g.edges()) {
    const auto du = static_cast<double>(g.degree(e.u));
    const auto dv = static_cast<double>(g.degree(e.v));
    endpoint_degree.push_back(du);
    endpoint_degree.push_back(dv);
    sum += du + dv;
    sum_sq += du * du + dv * dv;
    sum_prod += 2.0 * du * dv;
  }
  if (all_equal(endpoint_degree)) return std::nullopt;
  const double count = static_cast<double>(endpoint_degree.size());
  const double mean = sum / count;
  const double variance = sum_sq / count - mean * mean;
  const double covariance = sum_prod / count - mean * mean;
  return std::clamp(covariance / variance, -1.0, 1.0);
}

double local_clustering(const Graph& g, NodeId v) {
  const auto nbrs = g.neighbors(v);
  const std::size_t k = nbrs.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto other = g.neighbors(nbrs[i]);
    // Count neighbors of nbrs[i] that are also neighbors of v and > nbrs[i].
    auto a = std::upper_bound(nbrs.begin(), nbrs.end(), nbrs[i]);
    auto b = std::upper_bound(other.begin(), other.end(), nbrs[i]);
    while (a != nbrs.end() && b != other.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++links;
        ++a;
        ++b;
      }
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
}

double avg_clustering(const Graph& g) {
  if (g.node_count() == 0) throw InvalidParameter("clustering of an empty graph");
  double total = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) total += local_clustering(g, v);
  return total / static_cast<double>(g.node_count());
}

Eigen::VectorXd eigenvector_centrality(const Graph& g, double tolerance,
                                       long max_iterations) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (n == 0) throw InvalidParameter("eigenvector centrality of an empty graph");
  if (!is_connected(g)) throw DisconnectedGraph("graph is disconnected");

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.edge_count() + g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    entries.emplace_back(v, v, 1.0);
    for (NodeId w : g.neighbors(v)) entries.emplace_back(v, w, 1.0);
  }
  Eigen::SparseMatrix<double> shifted(n, n);
  shifted.setFromTriplets(entries.begin(), entries.end());

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd next(n);
  for (long iter = 1; iter <= max_iterations; ++iter) {
    next.noalias() = shifted * x;
    next.normalize();
    const double change = (next - x).norm();
    x.swap(next);
    if (change < tolerance) return x;
  }
  throw ConvergenceError("eigenvector centrality did not converge", max_iterations);
}

double max_eigenvector_centrality(const Graph& g) {
  try {
    return eigenvector_centrality(g).maxCoeff();
  } catch (const ConvergenceError&) {
    // Two far-apart hubs can leave lambda_1 - lambda_2 near 1e-5, which needs
    // millions of power steps. The Perron vector itself is still unique.
    const std::size_t n = g.node_count();
    if (n > kDenseEigenFallbackLimit) throw;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw;
    const Eigen::VectorXd v = solver.eigenvectors().col(n - 1).cwiseAbs();
    return v.maxCoeff() / v.norm();
  }
}

std::optional<double> degree_skewness(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw InvalidParameter("degree skewness needs at least two nodes");
  std::vector<double> deg(n);
  for (NodeId v = 0; v < n; ++v) deg[v] = static_cast<double>(g.degree(v));
  if (all_equal(deg)) return std::nullopt;
  double mean = 0.0;
  for (double d : deg) mean += d;
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double d : deg) {
    const double c = d - mean;
    m2 += c * c;
    m3 += c * c * c;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  return m3 / std::pow(m2, 1.5);
}

MetricRecord metric_suite(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) throw InvalidParameter("metric suite needs at least three nodes");
  const PathStatistics paths = path_statistics(g);  // throws if disconnected
  const double log_n = std::log(static_cast<double>(n));

  MetricRecord r;
  r.n = n;
  r.edges = g.edge_count();
  r.diameter = paths.diameter;
  r.avg_path_length = paths.average_path_length;
  r.norm_avg_path_length = paths.average_path_length / log_n;
  r.norm_diameter = static_cast<double>(paths.diameter) / log_n;
  r.norm_max_degree = static_cast<double>(g.max_degree()) / static_cast<double>(n - 1);
  r.avg_clustering = avg_clustering(g);
  r.assortativity = assortativity(g);
  r.max_eigenvector_centrality = max_eigenvector_centrality(g);
  r.degree_skewness = degree_skewness(g);
  return r;
}

std::array<std::optional<double>, kMetricColumns.size()> metric_values(
    const MetricRecord& r) {
  return {static_cast<double>(r.n),
          static_cast<double>(r.edges),
          r.avg_path_length,
          r.norm_avg_path_length,
          r.norm_diameter,
          r.norm_max_degree,
          r.avg_clustering,
          r.assortativity,
          r.max_eigenvector_centrality,
          r.degree_skewness};
}

void write_metric_csv(std::ostream& out, const MetricRecord& record) {
  for (std::size_t i = 0; i < kMetricColumns.size(); ++i) {
    if (i) out << ',';
    out << kMetricColumns[i];
  }
  out << '\n';
  const auto values = metric_values(record);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    if (values[i]) out << format_double(*values[i]);
  }
  out << '\n';
}

}  // namespace fractalnet
