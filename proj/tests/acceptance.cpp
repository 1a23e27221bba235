// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fractalnet/boxcover.hpp"
#include "fractalnet/experiments.hpp"
#include "fractalnet/format.hpp"
#include "fractalnet/metrics.hpp"
#include "fractalnet/models.hpp"
#include "fractalnet/rng.hpp"
#include "support/oracles.hpp"

using namespace fractalnet;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool close(double a, double b, double tol = 1e-6) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// 1. Closed-form RBFM counts.
Outcome closed_form_counts() {
  Outcome o;
  int checked = 0;
  for (int m = 1; m <= 3; ++m) {
    for (double y : {0.0, 0.5, 1.0}) {
      for (int t = 0; t <= 4; ++t) {
        const auto want = expected_counts_rbfm(m, t);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          const Graph g = rbfm_generate(m, y, t, seed);
          ++checked;
          if (g.node_count() != want.nodes || g.edge_count() != want.edges) {
            o.pass = false;
            o.detail = "m=" + std::to_string(m) + " Y=" + fmt(y) + " t=" + std::to_string(t) +
                       " seed=" + std::to_string(seed) + " got " +
                       std::to_string(g.node_count()) + "/" + std::to_string(g.edge_count());
            return o;
          }
        }
      }
    }
  }
  o.detail = std::to_string(checked) + " graphs match";
  return o;
}

// 2. Average degree approaches 2(m+1)/m.
Outcome average_degree_limit() {
  const Graph g = rbfm_generate(2, 0.5, 6, 1);
  const double avg = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
  return {std::abs(avg - 3.0) < 0.01, "N=" + std::to_string(g.node_count()) +
                                          " E=" + std::to_string(g.edge_count()) +
                                          " 2E/N=" + fmt(avg, 8)};
}

// 3. Grid closed forms on random dimensions.
Outcome grid_closed_forms() {
  Outcome o;
  Rng rng(2024);
  int with_bound = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> dims;
    const std::size_t d = 1 + rng.uniform_index(4);
    std::size_t product = 1;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t cap = std::max<std::size_t>(1, 10000 / product);
      const int side = 1 + static_cast<int>(rng.uniform_index(std::min<std::size_t>(cap, 60)));
      dims.push_back(side);
      product *= static_cast<std::size_t>(side);
    }
    const Graph g = grid_graph(dims);
    const auto c = expected_counts_grid(dims);
    const double avg = g.node_count() ? 2.0 * g.edge_count() / g.node_count() : 0.0;
    if (c.nodes != g.node_count() || c.edges != g.edge_count() || !close(c.avg_degree, avg)) {
      o.pass = false;
      o.detail = "mismatch for dims " + format_dims(dims);
      return o;
    }
    if (std::all_of(dims.begin(), dims.end(), [](int n) { return n > 1; })) {
      ++with_bound;
      const double dd = static_cast<double>(d);
      if (!(dd <= c.avg_degree && c.avg_degree < 2 * dd)) {
        o.pass = false;
        o.detail = "degree bound fails for " + format_dims(dims);
        return o;
      }
    }
  }
  o.detail = "50 grids match, bound checked on " + std::to_string(with_bound);
  return o;
}

FractalityReport fractality_of(const Graph& g, std::uint64_t seed) {
  return classify_fractality(nb_curve(g, seed));
}

// 4. SHM: p = 1 fractal, p = 0 not.
Outcome shm_dichotomy() {
  int fractal_p1 = 0;
  int not_fractal_p0 = 0;
  std::string r2_p1, r2_p0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = fractality_of(shm_generate(2, 1.0, 5, seed), seed);
    if (a.r2_power >= 0.98 && a.label == FractalityLabel::fractal) ++fractal_p1;
    r2_p1 += " " + fmt(a.r2_power);
    const auto b = fractality_of(shm_generate(2, 0.0, 5, seed), seed);
    if (b.r2_power < b.r2_exp || b.r2_power < 0.98) ++not_fractal_p0;
    r2_p0 += " " + fmt(b.r2_power) + "/" + fmt(b.r2_exp);
  }
  return {fractal_p1 >= 4 && not_fractal_p0 >= 4,
          "p=1 fractal " + std::to_string(fractal_p1) + "/5 (r2" + r2_p1 + "); p=0 not fractal " +
              std::to_string(not_fractal_p0) + "/5 (r2 pow/exp" + r2_p0 + ")"};
}

// 5. RBFM fractal for every Y.
Outcome rbfm_fractal() {
  Outcome o;
  for (double y : {0.0, 0.5, 1.0}) {
    int fractal = 0;
    std::string r2;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rep = fractality_of(rbfm_generate(2, y, 5, seed), seed);
      if (rep.label == FractalityLabel::fractal) ++fractal;
      r2 += " " + fmt(rep.r2_power);
    }
    if (fractal < 4) o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "Y=" + fmt(y) + " " + std::to_string(fractal) + "/5 (r2" + r2 + ")";
  }
  return o;
}

// 6. Lattice box dimension.
Outcome lattice_dimension() {
  const int dims[] = {64, 64};
  const auto rep = fractality_of(lswtm_generate(dims, 0.0, 10.0, 0), 0);
  return {rep.dimension >= 1.75 && rep.dimension <= 2.25,
          "d_B=" + fmt(rep.dimension) + " r2=" + fmt(rep.r2_power) +
              " label=" + std::string(to_string(rep.label))};
}

std::vector<double> means_of(const StatsTable& table, std::string_view metric) {
  std::vector<double> v;
  for (const auto& row : table.rows) v.push_back(row.metric(metric).mean);
  return v;
}

std::size_t rises(const std::vector<double>& v) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < v.size(); ++i) n += v[i] > v[i - 1] ? 1 : 0;
  return n;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

// 7. Distances shrink as p grows.
Outcome transition() {
  const std::vector<std::vector<int>> dims = {{32, 32}};
  const std::vector<double> ps = {0, 0.01, 0.05, 0.1, 0.3, 1};
  const auto table = transition_study(dims, ps, 10.0, 10, 0);
  const auto diam = means_of(table, "norm_diameter");
  const auto apl = means_of(table, "norm_avg_path_length");
  const double rho_d = spearman(ps, diam);
  const double rho_a = spearman(ps, apl);
  const bool ratio = apl.back() <= 0.5 * apl.front();
  return {rho_d <= -0.9 && rho_a <= -0.9 && ratio,
          "rho(norm_diameter)=" + fmt(rho_d) + " rises=" + std::to_string(rises(diam)) +
              " rho(norm_apl)=" + fmt(rho_a) + " rises=" + std::to_string(rises(apl)) +
              " apl p=1/p=0=" + fmt(apl.back() / apl.front()) + " apl=[" + list(apl) + "]"};
}

// 8. Assortativity trends.
Outcome assortativity_trends() {
  Outcome o;
  SweepSpec rb;
  rb.model.kind = ModelKind::rbfm;
  rb.model.t = 3;
  const std::vector<double> ys = {0, 0.25, 0.5, 0.75, 1};
  rb.axes = {{"m", {1, 2, 3}}, {"Y", ys}};
  rb.n_reps = 30;
  const auto table = sweep_grid(rb);
  const auto r = means_of(table, "assortativity");
  for (std::size_t mi = 0; mi < 3; ++mi) {
    const std::vector<double> row(r.begin() + mi * 5, r.begin() + mi * 5 + 5);
    const double rho = spearman(ys, row);
    const bool negative = std::all_of(row.begin(), row.end(), [](double x) { return x < 0; });
    if (!negative || rho > -0.8) o.pass = false;
    o.detail += "m=" + std::to_string(mi + 1) + " rho=" + fmt(rho) + " [" + list(row) + "]; ";
  }

  SweepSpec ls;
  ls.model.kind = ModelKind::lswtm;
  ls.model.dims = {32, 32};
  std::vector<double> ps;
  for (int k = 0; k <= 10; ++k) ps.push_back(k / 10.0);
  ls.axes = {{"p", ps}};
  ls.n_reps = 10;
  const auto lt = means_of(sweep_grid(ls), "assortativity");
  const double rho = spearman(ps, lt);
  if (rho > -0.8) o.pass = false;
  o.detail += "lswtm rho=" + fmt(rho) + " [" + list(lt) + "]";
  return o;
}

// 9. Greedy covers never beat the exact optimum.
Outcome box_cover_oracle() {
  Outcome o;
  std::vector<Graph> corpus;
  for (int n = 2; n <= 8; ++n) {
    auto graphs = oracle::connected_graphs(n);
    corpus.insert(corpus.end(), graphs.begin(), graphs.end());
  }
  const std::size_t exhaustive = corpus.size();
  const auto family = oracle::path_cycle_star_family(16);
  corpus.insert(corpus.end(), family.begin(), family.end());

  std::size_t checks = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    const std::uint32_t top = diameter(g) + 1;
    for (std::uint32_t l = 1; l <= top; ++l) {
      const std::uint32_t exact = exact_min_boxes(g, l);
      const auto cover = greedy_box_cover(g, l, i);
      ++checks;
      if (cover.boxes.size() < exact || !oracle::valid_box_cover(g, cover.boxes, l)) {
        o.pass = false;
        o.detail = "greedy below exact or invalid at corpus index " + std::to_string(i);
        return o;
      }
      if (g.node_count() <= 8 &&
          exact != static_cast<std::uint32_t>(oracle::min_boxes_backtracking(g, l))) {
        o.pass = false;
        o.detail = "exact disagrees with backtracking at corpus index " + std::to_string(i);
        return o;
      }
    }
  }
  for (std::uint32_t n = 2; n <= 16; ++n) {
    const Graph p = path_graph(n);
    for (std::uint32_t l = 1; l <= n; ++l) {
      if (exact_min_boxes(p, l) != (n + l - 1) / l) {
        o.pass = false;
        o.detail = "path formula fails for n=" + std::to_string(n);
        return o;
      }
    }
  }
  o.detail = std::to_string(exhaustive) + " exhaustive graphs + " +
             std::to_string(family.size()) + " named, " + std::to_string(checks) + " box sizes";
  return o;
}

// 10. Metric suite against brute force.
Outcome metric_oracles() {
  Outcome o;
  std::size_t graphs = 0;
  double worst = 0.0;
  auto track = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
  for (int n = 3; n <= 7; ++n) {
    for (const Graph& g : oracle::connected_graphs(n)) {
      ++graphs;
      const auto rec = metric_suite(g);
      const auto d = oracle::floyd_warshall(g);
      const double ln = std::log(static_cast<double>(n));
      track(rec.avg_path_length, oracle::mean_distance(d));
      track(rec.norm_avg_path_length, oracle::mean_distance(d) / ln);
      track(rec.norm_diameter, oracle::max_distance(d) / ln);
      track(rec.norm_max_degree, static_cast<double>(g.max_degree()) / (n - 1));
      track(rec.avg_clustering, oracle::avg_clustering(g));
      track(rec.max_eigenvector_centrality, oracle::max_eigenvector_entry(g));
      double r = 0.0;
      if (rec.assortativity.has_value() != oracle::assortativity(g, r)) o.pass = false;
      if (rec.assortativity) track(*rec.assortativity, r);
      double s = 0.0;
      if (rec.degree_skewness.has_value() != oracle::degree_skewness(g, s)) o.pass = false;
      if (rec.degree_skewness) track(*rec.degree_skewness, s);
    }
  }
  if (worst > 1e-6) o.pass = false;

  std::vector<std::string> bad;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) bad.push_back(what);
  };
  const auto star4 = assortativity(star_graph(4));
  expect(star4 && close(*star4, -1.0), "star4 assortativity");
  expect(!assortativity(complete_graph(4)), "K4 assortativity");
  expect(!assortativity(cycle_graph(4)), "C4 assortativity");
  expect(close(avg_clustering(complete_graph(3)), 1.0), "triangle clustering");
  expect(avg_clustering(path_graph(3)) == 0.0, "path3 clustering");
  Graph k4e = complete_graph(4);
  k4e.remove_edge(0, 1);
  expect(close(avg_clustering(k4e), 5.0 / 6.0), "K4-e clustering");
  expect(close(max_eigenvector_centrality(complete_graph(4)), 0.5), "K4 centrality");
  expect(close(max_eigenvector_centrality(star_graph(5)), 1 / std::sqrt(2.0)), "star5 centrality");
  expect(close(max_eigenvector_centrality(path_graph(2)), 1 / std::sqrt(2.0)), "P2 centrality");
  expect(!degree_skewness(cycle_graph(6)), "regular skewness");
  const auto sk = degree_skewness(star_graph(4));
  expect(sk && close(*sk, 0.75 / std::pow(0.75, 1.5)), "star4 skewness");
  const auto sp = degree_skewness(path_graph(3));
  expect(sp && close(*sp, 1 / std::sqrt(2.0)), "path3 skewness");
  const auto k4 = metric_suite(complete_graph(4));
  expect(close(k4.norm_max_degree, 1.0) && close(k4.avg_clustering, 1.0) &&
             close(k4.norm_diameter, 1 / std::log(4.0)),
         "K4 record");
  const auto p5 = metric_suite(path_graph(5));
  expect(close(p5.norm_diameter, 4 / std::log(5.0)) && p5.avg_clustering == 0.0, "P5 record");
  const int d33[] = {3, 3};
  double r33 = 0.0;
  const Graph g33 = grid_graph(d33);
  const auto rec33 = metric_suite(g33);
  expect(oracle::assortativity(g33, r33) && rec33.assortativity &&
             close(*rec33.assortativity, r33),
         "3x3 grid assortativity");
  if (!bad.empty()) o.pass = false;

  o.detail = std::to_string(graphs) + " graphs, max deviation " + fmt(worst, 3);
  for (const auto& b : bad) o.detail += "; wrong: " + b;
  return o;
}

// 11. Replication stability.
Outcome replication_stability() {
  ModelSpec spec;
  spec.kind = ModelKind::rbfm;
  spec.m = 2;
  spec.y = 0.5;
  spec.t = 3;
  const auto row = run_replications(spec, 30, 0);
  const double cv_apl = row.metric("avg_path_length").cv;
  const double cv_diam = row.metric("norm_diameter").cv;
  const bool counts = row.metric("n").sd == 0.0 && row.metric("m_edges").sd == 0.0;
  return {cv_apl < 0.15 && cv_diam < 0.15 && counts,
          "cv(avg_path_length)=" + fmt(cv_apl) + " cv(norm_diameter)=" + fmt(cv_diam) +
              (counts ? " counts constant" : " counts vary")};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 12. Repeated CLI invocations give byte-identical files.
Outcome cli_determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "fractalnet_acceptance";
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> commands = {
      {"generate", "--model", "rbfm", "-m", "2", "-Y", "1", "-t", "3", "--seed", "7", "-o",
       path("g.edges")},
      {"generate", "--model", "lswtm", "--dims", "16x16", "-p", "0.2", "--seed", "3", "-o",
       path("l.edges")},
      {"metrics", "-i", path("g.edges"), "-o", path("metrics.csv")},
      {"boxdim", "-i", path("g.edges"), "-o", path("curve.csv"), "--report", path("report.csv"),
       "--svg", path("curve.svg")},
      {"sweep", "--model", "shm", "-m", "2", "-t", "3", "--axis", "p=0,0.5,1", "--axis",
       "m=1,2", "--reps", "4", "--fractality", "--orderings", "3", "-o", path("sweep.csv"),
       "--svg", path("sweep.svg"), "--metric", "avg_path_length"},
      {"transition", "--dims-list", "8x8,12x12", "--p-values", "0,0.1,1", "--reps", "3",
       "--orderings", "3", "-o", path("transition.csv"), "--svg", path("transition.svg")},
  };
  const std::vector<std::string> files = {"g.edges",   "l.edges",   "metrics.csv",
                                          "curve.csv", "report.csv", "curve.svg",
                                          "sweep.csv", "sweep.svg", "transition.csv",
                                          "transition.svg"};
  auto run_all = [&]() {
    std::vector<std::string> contents;
    for (auto args : commands) {
      args.insert(args.begin(), "fractalnet");
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0) {
        o.pass = false;
        o.detail = args[1] + " failed: " + err.str();
      }
    }
    for (const auto& f : files) contents.push_back(slurp(dir / f));
    return contents;
  };
  const auto first = run_all();
  const auto second = run_all();
  if (!o.pass) return o;
  std::size_t same = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (first[i] == second[i] && !first[i].empty()) {
      ++same;
    } else {
      o.pass = false;
      o.detail += files[i] + " differs; ";
    }
  }
  o.detail += std::to_string(same) + "/" + std::to_string(files.size()) + " files identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form RBFM counts", closed_form_counts},
      {"RBFM average degree limit", average_degree_limit},
      {"grid closed forms", grid_closed_forms},
      {"SHM fractal/non-fractal dichotomy", shm_dichotomy},
      {"RBFM fractal for all Y", rbfm_fractal},
      {"lattice box dimension", lattice_dimension},
      {"fractal to small-world transition", transition},
      {"assortativity trends", assortativity_trends},
      {"box-cover oracle dominance", box_cover_oracle},
      {"metric oracles", metric_oracles},
      {"replication stability", replication_stability},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
