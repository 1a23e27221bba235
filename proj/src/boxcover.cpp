#include "fractalnet/boxcover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>

#include "fractalnet/format.hpp"
#include "fractalnet/rng.hpp"

namespace fractalnet {
namespace {

// Above this the all-pairs matrix (2 bytes per pair) is skipped in favour of
// one BFS per node per ordering.
constexpr std::size_t kMatrixNodeLimit = 16384;

constexpr std::uint32_t kNoColour = 0xffffffffu;

// Distance rows on demand, either from a precomputed matrix or by BFS.
class DistanceRows {
 public:
  explicit DistanceRows(const Graph& g) : g_(g) {
    if (g.node_count() <= kMatrixNodeLimit) {
      matrix_.emplace(g);
      diameter_ = matrix_->diameter();
    } else {
      std::vector<NodeId> order;
      for (NodeId s = 0; s < g.node_count(); ++s) {
        if (bfs_into(g, s, dist_, order) != g.node_count()) {
          throw DisconnectedGraph("graph is disconnected");
        }
        for (std::uint32_t d : dist_) diameter_ = std::max(diameter_, d);
      }
      if (diameter_ >= 0xffffu) {
        throw SizeLimitExceeded("hop distance exceeds 16-bit storage");
      }
    }
  }

  std::uint32_t diameter() const { return diameter_; }

  std::span<const std::uint16_t> row(NodeId v) {
    if (matrix_) return matrix_->row(v);
    bfs_into(g_, v, dist_, order_);
    buffer_.resize(dist_.size());
    std::transform(dist_.begin(), dist_.end(), buffer_.begin(),
                   [](std::uint32_t d) { return static_cast<std::uint16_t>(d); });
    return buffer_;
  }

 private:
  const Graph& g_;
  std::optional<DistanceMatrix> matrix_;
  std::uint32_t diameter_ = 0;
  std::vector<std::uint32_t> dist_;
  std::vector<NodeId> order_;
  std::vector<std::uint16_t> buffer_;
};

// Greedy colouring state for one box size. A colour is feasible for node i
// when every member lies within box_size - 1 hops of i. Each colour keeps
// its first member as a reference and the largest distance from it, which
// settles most feasibility queries through the triangle inequality.
class LevelColouring {
 public:
  LevelColouring(std::uint32_t box_size, std::size_t n)
      : box_size_(box_size), colour_of_(n, kNoColour) {}

  // `near` lists already-coloured nodes sorted by distance from i; the first
  // `ball` of them are closer than box_size.
  void place(NodeId i, std::span<const std::uint16_t> row,
             std::span<const NodeId> near, std::size_t ball) {
    std::uint32_t chosen = kNoColour;
    if (ball > 0) {
      if (ball < members_.size()) {
        candidates_.clear();
        for (std::size_t k = 0; k < ball; ++k) {
          candidates_.push_back(colour_of_[near[k]]);
        }
        std::sort(candidates_.begin(), candidates_.end());
        candidates_.erase(std::unique(candidates_.begin(), candidates_.end()),
                          candidates_.end());
        for (std::uint32_t c : candidates_) {
          if (feasible(c, row)) {
            chosen = c;
            break;
          }
        }
      } else {
        for (std::uint32_t c = 0; c < members_.size(); ++c) {
          if (feasible(c, row)) {
            chosen = c;
            break;
          }
        }
      }
    }
    if (chosen == kNoColour) {
      chosen = static_cast<std::uint32_t>(members_.size());
      members_.emplace_back();
      radius_.push_back(0);
    }
    colour_of_[i] = chosen;
    members_[chosen].push_back(i);
    radius_[chosen] = std::max<std::uint32_t>(radius_[chosen], row[members_[chosen].front()]);
  }

  std::uint32_t box_size() const { return box_size_; }
  std::size_t colour_count() const { return members_.size(); }
  std::vector<std::vector<NodeId>> take_boxes() { return std::move(members_); }

 private:
  bool feasible(std::uint32_t c, std::span<const std::uint16_t> row) const {
    const auto& m = members_[c];
    const std::uint32_t to_ref = row[m.front()];
    if (to_ref >= box_size_) return false;
    if (to_ref + radius_[c] < box_size_) return true;
    for (std::size_t k = 1; k < m.size(); ++k) {
      if (row[m[k]] >= box_size_) return false;
    }
    return true;
  }

  std::uint32_t box_size_;
  std::vector<std::uint32_t> colour_of_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<std::uint32_t> radius_;
  std::vector<std::uint32_t> candidates_;
};

std::vector<NodeId> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

// Runs one ordering through every level at once.
void colour_in_order(std::span<const NodeId> order, DistanceRows& rows,
                     std::span<LevelColouring> levels) {
  if (levels.empty()) return;
  std::uint32_t max_size = 0;
  for (const auto& level : levels) max_size = std::max(max_size, level.box_size());
  const std::size_t span_len = std::max<std::size_t>(rows.diameter(), max_size) + 2;
  std::vector<std::size_t> within(span_len);
  std::vector<std::size_t> cursor(span_len);
  std::vector<NodeId> near(order.size());

  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const NodeId i = order[idx];
    const auto row = rows.row(i);
    // Counting sort of the already-placed nodes by distance from i.
    std::fill(within.begin(), within.end(), 0);
    for (std::size_t k = 0; k < idx; ++k) ++within[row[order[k]] + 1];
    std::partial_sum(within.begin(), within.end(), within.begin());
    // within[d] is now the number of placed nodes closer than d.
    std::copy(within.begin(), within.end(), cursor.begin());
    for (std::size_t k = 0; k < idx; ++k) {
      const NodeId j = order[k];
      near[cursor[row[j]]++] = j;
    }
    const std::span<const NodeId> placed(near.data(), idx);
    for (auto& level : levels) {
      const std::size_t ball = within[std::min<std::size_t>(level.box_size(), span_len - 1)];
      level.place(i, row, placed, ball);
    }
  }
}

}  // namespace

BoxCover greedy_box_cover(const Graph& g, std::uint32_t box_size,
                          std::uint64_t seed) {
  if (box_size == 0) throw InvalidParameter("box size must be positive");
  BoxCover cover;
  cover.box_size = box_size;
  if (g.node_count() == 0) return cover;
  DistanceRows rows(g);
  LevelColouring level(box_size, g.node_count());
  const auto order = shuffled_order(g.node_count(), seed);
  colour_in_order(order, rows, std::span<LevelColouring>(&level, 1));
  cover.boxes = level.take_boxes();
  return cover;
}

std::uint32_t exact_min_boxes(const Graph& g, std::uint32_t box_size) {
  if (box_size == 0) throw InvalidParameter("box size must be positive");
  const std::size_t n = g.node_count();
  if (n > kExactBoxNodeLimit) {
    throw SizeLimitExceeded("exact box covering limited to " +
                            std::to_string(kExactBoxNodeLimit) + " nodes, got " +
                            std::to_string(n));
  }
  if (n == 0) return 0;
  const DistanceMatrix dist(g);

  std::vector<std::uint32_t> close(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (dist(u, v) < box_size) close[u] |= 1u << v;
    }
  }
  const std::uint32_t full = (1u << n) - 1;
  // valid[s]: the nodes of s fit in one box.
  std::vector<std::uint8_t> valid(std::size_t{full} + 1, 0);
  valid[0] = 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(s));
    const std::uint32_t rest = s & (s - 1);
    valid[s] = valid[rest] && (rest & ~close[low]) == 0;
  }
  // best[s]: fewest boxes covering s; some box must hold the lowest node.
  constexpr std::uint8_t kInf = 0xff;
  std::vector<std::uint8_t> best(std::size_t{full} + 1, kInf);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    if (valid[s]) {
      best[s] = 1;
      continue;
    }
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t others = s ^ low;
    std::uint8_t result = kInf;
    // Submasks of `others` (including empty), each joined with the low bit.
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      const std::uint32_t box = sub | low;
      if (valid[box] && best[s ^ box] + 1 < result) {
        result = static_cast<std::uint8_t>(best[s ^ box] + 1);
      }
      if (sub == 0) break;
    }
    best[s] = result;
  }
  return best[full];
}

NbCurve nb_curve(const Graph& g, std::uint64_t seed, int n_orderings) {
  if (n_orderings < 1) throw InvalidParameter("n_orderings must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw InvalidParameter("box-count curve of an empty graph");
  DistanceRows rows(g);
  const std::uint32_t diam = rows.diameter();

  NbCurve curve;
  curve.push_back({1, n});
  if (diam == 0) return curve;

  std::vector<std::uint64_t> best(diam + 2, n);
  for (int k = 0; k < n_orderings; ++k) {
    std::vector<LevelColouring> levels;
    levels.reserve(diam);
    for (std::uint32_t size = 2; size <= diam; ++size) levels.emplace_back(size, n);
    const auto order = shuffled_order(n, seed + static_cast<std::uint64_t>(k));
    colour_in_order(order, rows, levels);
    for (const auto& level : levels) {
      best[level.box_size()] = std::min<std::uint64_t>(best[level.box_size()],
                                                       level.colour_count());
    }
  }
  // A cover for box size l is also a cover for l + 1.
  for (std::uint32_t size = 2; size <= diam; ++size) {
    curve.push_back({size, std::min(best[size], curve.back().box_count)});
  }
  curve.push_back({diam + 1, 1});
  return curve;
}

namespace {

void require_points(const NbCurve& curve, std::size_t minimum) {
  if (curve.size() < minimum) {
    throw InsufficientData("fit needs at least " + std::to_string(minimum) +
                           " curve points, got " + std::to_string(curve.size()));
  }
  for (const auto& pt : curve) {
    if (pt.box_size == 0 || pt.box_count == 0) {
      throw InvalidParameter("curve points must be positive");
    }
  }
}

}  // namespace

PowerLawFit fit_power_law(const NbCurve& curve) {
  require_points(curve, 3);
  Eigen::VectorXd x(curve.size());
  Eigen::VectorXd y(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    x[i] = std::log(static_cast<double>(curve[i].box_size));
    y[i] = std::log(static_cast<double>(curve[i].box_count));
  }
  const auto fit = fit_line(x, y);
  return {-fit.slope, fit.r2};
}

ExponentialFit fit_exponential(const NbCurve& curve) {
  require_points(curve, 3);
  Eigen::VectorXd x(curve.size());
  Eigen::VectorXd y(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    x[i] = static_cast<double>(curve[i].box_size);
    y[i] = std::log(static_cast<double>(curve[i].box_count));
  }
  const auto fit = fit_line(x, y);
  return {-fit.slope, fit.r2};
}

std::string_view to_string(FractalityLabel label) {
  switch (label) {
    case FractalityLabel::fractal:
      return "fractal";
    case FractalityLabel::non_fractal:
      return "non-fractal";
    case FractalityLabel::mixed:
      return "mixed";
  }
  return "mixed";
}

std::string_view to_string(FitWindow window) {
  return window == FitWindow::scaling ? "scaling" : "full";
}

FitWindow parse_fit_window(std::string_view name) {
  if (name == "scaling") return FitWindow::scaling;
  if (name == "full") return FitWindow::full;
  throw InvalidParameter("unknown fit window '" + std::string(name) +
                         "' (expected scaling or full)");
}

NbCurve fit_window(const NbCurve& curve, FitWindow window) {
  if (window == FitWindow::full || curve.empty()) return curve;
  const std::uint32_t half = curve.back().box_size / 2;
  // N_B(1) is the node count.
  const double few_boxes = std::pow(static_cast<double>(curve.front().box_count), 0.25);
  NbCurve out;
  for (const auto& pt : curve) {
    if (pt.box_size < 2) continue;
    if (pt.box_size <= half || static_cast<double>(pt.box_count) >= few_boxes) out.push_back(pt);
  }
  return out.size() >= 3 ? out : curve;
}

FractalityReport classify_fractality(const NbCurve& curve, double r2_cutoff,
                                     FitWindow window) {
  require_points(curve, 4);
  const NbCurve fitted = fit_window(curve, window);
  const auto power = fit_power_law(fitted);
  const auto expo = fit_exponential(fitted);
  FractalityReport report;
  report.dimension = power.dimension;
  report.r2_power = power.r2;
  report.r2_exp = expo.r2;
  if (power.r2 >= r2_cutoff && power.r2 > expo.r2) {
    report.label = FractalityLabel::fractal;
  } else if (expo.r2 >= r2_cutoff && expo.r2 > power.r2) {
    report.label = FractalityLabel::non_fractal;
  } else {
    report.label = FractalityLabel::mixed;
  }
  return report;
}

void write_curve_csv(std::ostream& out, const NbCurve& curve) {
  out << "l_b,n_b\n";
  for (const auto& pt : curve) out << pt.box_size << ',' << pt.box_count << '\n';
}

void write_report_csv(std::ostream& out, const FractalityReport& report) {
  out << "d_b,r2_power,r2_exp,label\n";
  out << format_double(report.dimension) << ',' << format_double(report.r2_power)
      << ',' << format_double(report.r2_exp) << ',' << to_string(report.label)
      << '\n';
}

}  // namespace fractalnet
