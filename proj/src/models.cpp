#include "fractalnet/models.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "fractalnet/errors.hpp"
#include "fractalnet/format.hpp"
#include "fractalnet/rng.hpp"

namespace fractalnet {
namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void check_offspring_params(int m, int t) {
  if (m < 1) throw InvalidParameter("m must be a positive integer");
  if (t < 0) throw InvalidParameter("t must be non-negative");
}

void check_lswtm_params(std::span<const int> dims, double p, double a) {
  if (dims.empty()) throw InvalidParameter("dims must be non-empty");
  std::uint64_t n = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidParameter("grid side lengths must be >= 1");
    n *= static_cast<std::uint64_t>(d);
  }
  if (n < 3) throw InvalidParameter("LSwTM grid needs at least 3 nodes");
  if (!in_unit_interval(p)) throw InvalidParameter("p must lie in [0, 1]");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidParameter("a must be a positive finite number");
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InvalidParameter("predicted count overflows 64 bits");
  }
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

// One SHM/RBFM run from the two-node seed graph. Every iteration freezes the
// degree sequence first; growth quotas, rewiring probabilities and the
// within-offspring quotas all read that snapshot.
template <typename RewireProb>
Graph grow_offspring_model(int m, int t, bool within_offspring_edges,
                           std::uint64_t seed, RewireProb rewire_prob) {
  Rng rng(seed);
  Graph g(2);
  g.add_edge(0, 1);
  const auto mm = static_cast<std::size_t>(m);
  for (int step = 0; step < t; ++step) {
    const std::size_t old_n = g.node_count();
    const std::vector<std::size_t> deg = g.degrees();
    const std::size_t deg_max = *std::max_element(deg.begin(), deg.end());
    const std::vector<Edge> old_edges = g.edges();

    // Growth: offspring of v occupy [first[v], first[v] + m * deg[v]).
    std::vector<NodeId> first(old_n);
    for (NodeId v = 0; v < old_n; ++v) {
      const std::size_t count = mm * deg[v];
      first[v] = g.add_nodes(count);
      for (std::size_t k = 0; k < count; ++k) {
        g.add_edge(v, static_cast<NodeId>(first[v] + k));
      }
    }

    // Rewiring, in lexicographic order of the old edges. Targets join
    // offspring of two different parents, so they never collide with each
    // other or with the within-offspring edges added below.
    for (const Edge& e : old_edges) {
      if (!rng.bernoulli(rewire_prob(deg[e.u], deg[e.v], deg_max))) continue;
      const auto x = static_cast<NodeId>(first[e.u] + rng.uniform_index(mm * deg[e.u]));
      const auto y = static_cast<NodeId>(first[e.v] + rng.uniform_index(mm * deg[e.v]));
      g.remove_edge(e.u, e.v);
      g.add_edge(x, y);
    }

    if (within_offspring_edges && m > 1) {
      for (NodeId v = 0; v < old_n; ++v) {
        const std::size_t count = mm * deg[v];
        std::size_t added = 0;
        while (added < deg[v]) {
          const auto a = static_cast<NodeId>(first[v] + rng.uniform_index(count));
          const auto b = static_cast<NodeId>(first[v] + rng.uniform_index(count));
          if (a == b || g.has_edge(a, b)) continue;
          g.add_edge(a, b);
          ++added;
        }
      }
    }
  }
  return g;
}

bool reaches(const Graph& g, NodeId from, NodeId to,
             std::vector<std::uint8_t>& seen, std::vector<NodeId>& queue) {
  if (from == to) return true;
  seen.assign(g.node_count(), 0);
  queue.clear();
  queue.push_back(from);
  seen[from] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId w : g.neighbors(queue[head])) {
      if (seen[w]) continue;
      if (w == to) return true;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

// Candidate set V \ (N(v) ∪ {v}) with logistic weights from the current
// degrees. Returns false when the set is empty.
bool attachment_candidates(const Graph& g, NodeId v, double a,
                           std::vector<NodeId>& nodes,
                           std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  const std::size_t deg_max = g.max_degree();
  auto nbrs = g.neighbors(v);
  auto it = nbrs.begin();
  for (NodeId k = 0; k < g.node_count(); ++k) {
    while (it != nbrs.end() && *it < k) ++it;
    if (k == v || (it != nbrs.end() && *it == k)) continue;
    nodes.push_back(k);
    weights.push_back(lswtm_attach_weight(g.degree(k), deg_max, a));
  }
  return !nodes.empty();
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::shm:
      return "shm";
    case ModelKind::rbfm:
      return "rbfm";
    case ModelKind::lswtm:
      return "lswtm";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "shm") return ModelKind::shm;
  if (lower == "rbfm") return ModelKind::rbfm;
  if (lower == "lswtm") return ModelKind::lswtm;
  throw InvalidParameter("unknown model '" + std::string(name) +
                         "' (expected shm, rbfm or lswtm)");
}

void validate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::shm:
      check_offspring_params(spec.m, spec.t);
      if (!in_unit_interval(spec.p)) throw InvalidParameter("p must lie in [0, 1]");
      break;
    case ModelKind::rbfm:
      check_offspring_params(spec.m, spec.t);
      if (!in_unit_interval(spec.y)) throw InvalidParameter("Y must lie in [0, 1]");
      break;
    case ModelKind::lswtm:
      check_lswtm_params(spec.dims, spec.p, spec.a);
      break;
  }
}

std::string describe(const ModelSpec& spec) {
  std::string out = "model=" + std::string(to_string(spec.kind));
  switch (spec.kind) {
    case ModelKind::shm:
      out += " m=" + std::to_string(spec.m) + " p=" + format_double(spec.p) +
             " t=" + std::to_string(spec.t);
      break;
    case ModelKind::rbfm:
      out += " m=" + std::to_string(spec.m) + " Y=" + format_double(spec.y) +
             " t=" + std::to_string(spec.t);
      break;
    case ModelKind::lswtm:
      out += " dims=" + format_dims(spec.dims) + " p=" + format_double(spec.p) +
             " a=" + format_double(spec.a);
      break;
  }
  out += " seed=" + std::to_string(spec.seed);
  return out;
}

Graph generate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::shm:
      return shm_generate(spec.m, spec.p, spec.t, spec.seed);
    case ModelKind::rbfm:
      return rbfm_generate(spec.m, spec.y, spec.t, spec.seed);
    case ModelKind::lswtm:
      return lswtm_generate(spec.dims, spec.p, spec.a, spec.seed);
  }
  throw InvalidParameter("unknown model kind");
}

Graph shm_generate(int m, double p, int t, std::uint64_t seed) {
  check_offspring_params(m, t);
  if (!in_unit_interval(p)) throw InvalidParameter("p must lie in [0, 1]");
  return grow_offspring_model(
      m, t, false, seed,
      [p](std::size_t, std::size_t, std::size_t) { return p; });
}

Graph rbfm_generate(int m, double y, int t, std::uint64_t seed) {
  check_offspring_params(m, t);
  if (!in_unit_interval(y)) throw InvalidParameter("Y must lie in [0, 1]");
  return grow_offspring_model(
      m, t, true, seed,
      [y](std::size_t du, std::size_t dv, std::size_t dmax) {
        return rbfm_rewire_prob(du, dv, dmax, y);
      });
}

double rbfm_rewire_prob(std::size_t deg_u, std::size_t deg_v,
                        std::size_t deg_max, double y) {
  if (deg_max == 0) throw InvalidParameter("deg_max must be positive");
  if (deg_u > deg_max || deg_v > deg_max) {
    throw InvalidParameter("endpoint degree exceeds deg_max");
  }
  if (!in_unit_interval(y)) throw InvalidParameter("Y must lie in [0, 1]");
  const double mean_norm = static_cast<double>(deg_u + deg_v) /
                           (2.0 * static_cast<double>(deg_max));
  return std::clamp(1.0 - std::abs(y - mean_norm), 0.0, 1.0);
}

double lswtm_attach_weight(std::size_t deg, std::size_t deg_max, double a) {
  if (deg_max == 0) throw InvalidParameter("deg_max must be positive");
  if (deg > deg_max) throw InvalidParameter("degree exceeds deg_max");
  if (!(a > 0.0)) throw InvalidParameter("a must be positive");
  const double x = static_cast<double>(deg) / static_cast<double>(deg_max) - 0.5;
  return 1.0 / (1.0 + std::exp(-a * x));
}

Graph lswtm_generate(std::span<const int> dims, double p, double a,
                     std::uint64_t seed) {
  check_lswtm_params(dims, p, a);
  Rng rng(seed);
  Graph g = grid_graph(dims);

  std::vector<Edge> pending = g.edges();
  rng.shuffle(pending);

  std::vector<NodeId> nodes;
  std::vector<double> weights;
  std::vector<std::uint8_t> seen;
  std::vector<NodeId> queue;

  // Per edge: one Bernoulli draw; if it fires, one orientation coin, then the
  // weighted draws. Grid edges are never re-created by rewiring (targets
  // exclude neighbors), so every pending edge is still present here.
  for (Edge e : pending) {
    if (!rng.bernoulli(p)) continue;
    NodeId keep = e.u;
    NodeId drop = e.v;
    if (rng.bernoulli(0.5)) std::swap(keep, drop);

    if (!attachment_candidates(g, keep, a, nodes, weights)) continue;
    NodeId target = nodes[rng.weighted_index(weights)];

    g.remove_edge(keep, drop);
    g.add_edge(keep, target);
    if (reaches(g, keep, drop, seen, queue)) continue;

    // The edge was a bridge: attach the other endpoint instead.
    g.remove_edge(keep, target);
    bool placed = false;
    if (!g.has_edge(drop, target)) {
      g.add_edge(drop, target);
      placed = true;
    } else if (attachment_candidates(g, drop, a, nodes, weights)) {
      for (std::size_t attempt = 0; attempt < nodes.size(); ++attempt) {
        const NodeId candidate = nodes[rng.weighted_index(weights)];
        if (candidate == keep) continue;
        g.add_edge(drop, candidate);
        if (reaches(g, drop, keep, seen, queue)) {
          placed = true;
          break;
        }
        g.remove_edge(drop, candidate);
      }
    }
    if (!placed) g.add_edge(keep, drop);
  }
  return g;
}

CountPrediction expected_counts_rbfm(int m, int t, std::uint64_t n0,
                                     std::uint64_t e0) {
  check_offspring_params(m, t);
  if (n0 < 2 || e0 < 1) throw InvalidParameter("need n0 >= 2 and e0 >= 1");
  CountPrediction out;
  const auto mm = static_cast<std::uint64_t>(m);
  if (m == 1) {
    const std::uint64_t growth = checked_pow(3, t);
    out.edges = checked_mul(e0, growth);
    out.nodes = n0 + checked_mul(e0, growth - 1);
  } else {
    // (2m+3)^t - 1 is divisible by m+1 since 2m+3 = 1 (mod m+1).
    const std::uint64_t growth = checked_pow(2 * mm + 3, t);
    out.edges = checked_mul(e0, growth);
    out.nodes = n0 + checked_mul(checked_mul(e0, mm), (growth - 1) / (mm + 1));
  }
  out.avg_degree = 2.0 * static_cast<double>(out.edges) /
                   static_cast<double>(out.nodes);
  return out;
}

CountPrediction expected_counts_grid(std::span<const int> dims) {
  if (dims.empty()) throw InvalidParameter("dims must be non-empty");
  std::uint64_t nodes = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidParameter("grid side lengths must be >= 1");
    nodes = checked_mul(nodes, static_cast<std::uint64_t>(d));
  }
  std::uint64_t edges = 0;
  double inverse_sum = 0.0;
  for (int d : dims) {
    edges += static_cast<std::uint64_t>(d - 1) * (nodes / static_cast<std::uint64_t>(d));
    inverse_sum += 1.0 / d;
  }
  CountPrediction out;
  out.nodes = nodes;
  out.edges = edges;
  out.avg_degree = 2.0 * static_cast<double>(dims.size()) - 2.0 * inverse_sum;
  return out;
}

std::vector<int> parse_dims(std::string_view text) {
  std::vector<int> dims;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = text.find_first_of("xX", start);
    const std::string_view token =
        text.substr(start, sep == std::string_view::npos ? sep : sep - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        value < 1) {
      throw InvalidParameter("invalid dims '" + std::string(text) +
                             "' (expected e.g. 32x32)");
    }
    dims.push_back(value);
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return dims;
}

std::string format_dims(std::span<const int> dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(dims[i]);
  }
  return out;
}

}  // namespace fractalnet
