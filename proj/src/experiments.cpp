#include "fractalnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "fractalnet/errors.hpp"
#include "fractalnet/format.hpp"

namespace fractalnet {
namespace {

struct Realization {
  MetricRecord metrics;
  std::optional<FractalityReport> fractality;
};

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception (by index) is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

FractalitySummary summarize_fractality(std::span<const FractalityReport> reports) {
  FractalitySummary out;
  std::vector<double> dims;
  double r2p = 0.0;
  double r2e = 0.0;
  for (const auto& r : reports) {
    dims.push_back(r.dimension);
    r2p += r.r2_power;
    r2e += r.r2_exp;
    switch (r.label) {
      case FractalityLabel::fractal:
        ++out.fractal;
        break;
      case FractalityLabel::mixed:
        ++out.mixed;
        break;
      case FractalityLabel::non_fractal:
        ++out.non_fractal;
        break;
    }
  }
  const Summary d = summarize(dims);
  out.dimension_mean = d.mean;
  out.dimension_sd = d.sd;
  const auto count = static_cast<double>(reports.size());
  out.r2_power_mean = r2p / count;
  out.r2_exp_mean = r2e / count;
  if (out.fractal > out.mixed && out.fractal > out.non_fractal) {
    out.label = FractalityLabel::fractal;
  } else if (out.non_fractal > out.mixed && out.non_fractal > out.fractal) {
    out.label = FractalityLabel::non_fractal;
  } else {
    out.label = FractalityLabel::mixed;
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::string csv_number(double value) {
  return std::isfinite(value) ? format_double(value) : std::string();
}

std::ofstream open_output(const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& destination) {
  out.flush();
  if (!out) throw IoError("write to '" + destination.string() + "' failed");
}

bool is_optional_metric(std::string_view name) {
  return name == "assortativity" || name == "degree_skewness";
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string fixed(double value, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << value;
  return os.str();
}

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

// Piecewise-linear approximation of the viridis colour map.
std::string colour_scale(double t) {
  static constexpr std::array<std::array<double, 3>, 5> stops = {{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(k);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.mean = s.sd = s.min = s.max = s.cv = nan;
    return s;
  }
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(sq / static_cast<double>(values.size()));
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.cv = s.mean != 0.0 ? s.sd / std::abs(s.mean)
                       : std::numeric_limits<double>::quiet_NaN();
  return s;
}

const Summary& StatsRow::metric(std::string_view name) const {
  for (std::size_t i = 0; i < kMetricColumns.size(); ++i) {
    if (kMetricColumns[i] == name) return metrics[i];
  }
  throw InvalidParameter("unknown metric '" + std::string(name) + "'");
}

StatsRow run_replications(const ModelSpec& spec, std::size_t n_reps,
                          std::uint64_t master_seed,
                          const ReplicationOptions& options) {
  if (n_reps < 1) throw InvalidParameter("n_reps must be >= 1");
  validate(spec);
  std::vector<Realization> results(n_reps);
  parallel_for(n_reps, options.jobs, [&](std::size_t r) {
    ModelSpec rep = spec;
    rep.seed = master_seed + r;
    try {
      const Graph g = generate(rep);
      results[r].metrics = metric_suite(g);
      if (options.fractality) {
        results[r].fractality = classify_fractality(
            nb_curve(g, rep.seed, options.n_orderings), options.r2_cutoff,
            options.window);
      }
    } catch (const Error& e) {
      throw Error("replication with seed " + std::to_string(rep.seed) + " (" +
                  describe(rep) + ") failed: " + e.what());
    }
  });

  StatsRow row;
  row.cell = spec;
  row.cell.seed = master_seed;
  row.n_reps = n_reps;
  for (std::size_t k = 0; k < kMetricColumns.size(); ++k) {
    std::vector<double> values;
    for (const auto& res : results) {
      const auto v = metric_values(res.metrics)[k];
      if (v) values.push_back(*v);
    }
    row.metrics[k] = summarize(values);
  }
  if (options.fractality) {
    std::vector<FractalityReport> reports;
    for (const auto& res : results) reports.push_back(*res.fractality);
    row.fractality = summarize_fractality(reports);
  }
  return row;
}

std::uint64_t cell_seed_stride(std::size_t n_reps) {
  constexpr std::uint64_t kStride = 1u << 20;
  return n_reps < kStride ? kStride : static_cast<std::uint64_t>(n_reps) + 1;
}

void set_parameter(ModelSpec& spec, std::string_view name, double value) {
  auto as_int = [&](const char* what) {
    if (value != std::floor(value) || std::abs(value) > 1e9) {
      throw InvalidParameter(std::string(what) + " axis values must be integers");
    }
    return static_cast<int>(value);
  };
  if (name == "m") {
    spec.m = as_int("m");
  } else if (name == "t") {
    spec.t = as_int("t");
  } else if (name == "Y" || name == "y") {
    spec.y = value;
  } else if (name == "p") {
    spec.p = value;
  } else if (name == "a") {
    spec.a = value;
  } else {
    throw InvalidParameter("unknown sweep axis '" + std::string(name) + "'");
  }
}

std::string parameter_text(const ModelSpec& spec, std::string_view name) {
  if (name == "m") return std::to_string(spec.m);
  if (name == "t") return std::to_string(spec.t);
  if (name == "Y" || name == "y") return format_double(spec.y);
  if (name == "p") return format_double(spec.p);
  if (name == "a") return format_double(spec.a);
  if (name == "dims") return format_dims(spec.dims);
  throw InvalidParameter("unknown parameter '" + std::string(name) + "'");
}

StatsTable sweep_grid(const SweepSpec& sweep, const ReplicationOptions& options) {
  if (sweep.axes.empty() || sweep.axes.size() > 2) {
    throw InvalidParameter("a sweep takes one or two axes");
  }
  const bool uses_offspring = sweep.model.kind != ModelKind::lswtm;
  for (const auto& axis : sweep.axes) {
    if (axis.values.empty()) {
      throw InvalidParameter("axis '" + axis.name + "' has no values");
    }
    const bool applies =
        axis.name == "p" ? sweep.model.kind != ModelKind::rbfm
        : axis.name == "Y" || axis.name == "y" ? sweep.model.kind == ModelKind::rbfm
        : axis.name == "m" || axis.name == "t" ? uses_offspring
        : axis.name == "a" ? sweep.model.kind == ModelKind::lswtm
                           : false;
    if (!applies) {
      throw InvalidParameter("axis '" + axis.name + "' is not a parameter of " +
                             std::string(to_string(sweep.model.kind)));
    }
  }

  std::vector<ModelSpec> cells;
  const auto& first = sweep.axes[0];
  for (double v0 : first.values) {
    ModelSpec cell = sweep.model;
    set_parameter(cell, first.name, v0);
    if (sweep.axes.size() == 1) {
      cells.push_back(cell);
      continue;
    }
    for (double v1 : sweep.axes[1].values) {
      ModelSpec inner = cell;
      set_parameter(inner, sweep.axes[1].name, v1);
      cells.push_back(inner);
    }
  }
  for (const auto& cell : cells) validate(cell);

  StatsTable table;
  for (const auto& axis : sweep.axes) table.axes.push_back(axis.name);
  const std::uint64_t stride = cell_seed_stride(sweep.n_reps);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    table.rows.push_back(run_replications(cells[c], sweep.n_reps,
                                          sweep.master_seed + c * stride, options));
  }
  return table;
}

StatsTable transition_study(std::span<const std::vector<int>> dims_list,
                            std::span<const double> p_values, double a,
                            std::size_t n_reps, std::uint64_t master_seed,
                            ReplicationOptions options) {
  if (dims_list.empty() || p_values.empty()) {
    throw InvalidParameter("transition study needs dims and p values");
  }
  options.fractality = true;
  StatsTable table;
  table.axes = {"dims", "p"};
  const std::uint64_t stride = cell_seed_stride(n_reps);
  std::size_t c = 0;
  for (const auto& dims : dims_list) {
    for (double p : p_values) {
      ModelSpec cell;
      cell.kind = ModelKind::lswtm;
      cell.dims = dims;
      cell.p = p;
      cell.a = a;
      table.rows.push_back(
          run_replications(cell, n_reps, master_seed + c * stride, options));
      ++c;
    }
  }
  return table;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidParameter("spearman needs two equal-length series of >= 2 values");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

void emit_csv(const StatsTable& table, std::ostream& out,
              std::span<const std::string> comments) {
  for (const auto& line : comments) out << "# " << line << '\n';
  const bool with_fractality =
      std::any_of(table.rows.begin(), table.rows.end(),
                  [](const StatsRow& r) { return r.fractality.has_value(); });

  out << "model,m,Y,p,a,t,dims,seed,n_reps";
  for (auto name : kMetricColumns) {
    out << ',' << name << "_mean," << name << "_sd," << name << "_min," << name
        << "_max," << name << "_cv";
    if (is_optional_metric(name)) out << ',' << name << "_defined";
  }
  if (with_fractality) {
    out << ",d_b_mean,d_b_sd,r2_power_mean,r2_exp_mean,n_fractal,n_mixed,"
           "n_non_fractal,label";
  }
  out << '\n';

  for (const auto& row : table.rows) {
    const ModelSpec& s = row.cell;
    const bool offspring = s.kind != ModelKind::lswtm;
    out << to_string(s.kind) << ',' << (offspring ? std::to_string(s.m) : "") << ','
        << (s.kind == ModelKind::rbfm ? format_double(s.y) : "") << ','
        << (s.kind != ModelKind::rbfm ? format_double(s.p) : "") << ','
        << (!offspring ? format_double(s.a) : "") << ','
        << (offspring ? std::to_string(s.t) : "") << ','
        << (!offspring ? format_dims(s.dims) : "") << ',' << s.seed << ','
        << row.n_reps;
    for (std::size_t k = 0; k < kMetricColumns.size(); ++k) {
      const Summary& m = row.metrics[k];
      out << ',' << csv_number(m.mean) << ',' << csv_number(m.sd) << ','
          << csv_number(m.min) << ',' << csv_number(m.max) << ','
          << csv_number(m.cv);
      if (is_optional_metric(kMetricColumns[k])) out << ',' << m.count;
    }
    if (with_fractality) {
      if (row.fractality) {
        const auto& f = *row.fractality;
        out << ',' << csv_number(f.dimension_mean) << ',' << csv_number(f.dimension_sd)
            << ',' << csv_number(f.r2_power_mean) << ','
            << csv_number(f.r2_exp_mean) << ',' << f.fractal << ',' << f.mixed
            << ',' << f.non_fractal << ',' << to_string(f.label);
      } else {
        out << ",,,,,,,,";
      }
    }
    out << '\n';
  }
}

void emit_csv(const StatsTable& table, const std::filesystem::path& destination,
              std::span<const std::string> comments) {
  auto out = open_output(destination);
  emit_csv(table, out, comments);
  finish_output(out, destination);
}

void emit_svg_loglog(std::span<const LabeledCurve> curves, std::ostream& out) {
  if (curves.empty()) throw InvalidParameter("log-log plot needs at least one curve");
  constexpr double kWidth = 640;
  constexpr double kHeight = 480;
  constexpr double kLeft = 70;
  constexpr double kRight = 470;
  constexpr double kTop = 20;
  constexpr double kBottom = 420;

  double lmin = std::numeric_limits<double>::infinity();
  double lmax = 0;
  double nmin = std::numeric_limits<double>::infinity();
  double nmax = 0;
  for (const auto& c : curves) {
    if (c.curve.empty()) throw InvalidParameter("curve '" + c.label + "' is empty");
    for (const auto& pt : c.curve) {
      lmin = std::min(lmin, static_cast<double>(pt.box_size));
      lmax = std::max(lmax, static_cast<double>(pt.box_size));
      nmin = std::min(nmin, static_cast<double>(pt.box_count));
      nmax = std::max(nmax, static_cast<double>(pt.box_count));
    }
  }
  const double lx0 = std::log10(lmin);
  const double lx1 = lmax > lmin ? std::log10(lmax) : lx0 + 1;
  const double ly0 = std::log10(nmin);
  const double ly1 = nmax > nmin ? std::log10(nmax) : ly0 + 1;
  auto map_x = [&](double l) {
    return kLeft + (std::log10(l) - lx0) / (lx1 - lx0) * (kRight - kLeft);
  };
  auto map_y = [&](double n) {
    return kTop + (ly1 - std::log10(n)) / (ly1 - ly0) * (kBottom - kTop);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << kWidth << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth
      << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect class=\"plot-area\" x=\"" << kLeft << "\" y=\"" << kTop
      << "\" width=\"" << kRight - kLeft << "\" height=\"" << kBottom - kTop
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Decade ticks.
  for (int e = static_cast<int>(std::floor(lx0)); e <= static_cast<int>(std::ceil(lx1)); ++e) {
    const double v = std::pow(10.0, e);
    if (v < lmin || v > lmax) continue;
    const double x = map_x(v);
    out << "<line x1=\"" << fixed(x) << "\" y1=\"" << kBottom << "\" x2=\"" << fixed(x)
        << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed(x) << "\" y=\"" << kBottom + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << format_double(v)
        << "</text>\n";
  }
  for (int e = static_cast<int>(std::floor(ly0)); e <= static_cast<int>(std::ceil(ly1)); ++e) {
    const double v = std::pow(10.0, e);
    if (v < nmin || v > nmax) continue;
    const double y = map_y(v);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fixed(y) << "\" stroke=\"black\"/>"
        << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(y + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << format_double(v)
        << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 20
      << "\" font-size=\"14\" text-anchor=\"middle\">box size l_B</text>\n"
      << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">box count N_B</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* colour = kPalette[i % kPalette.size()];
    out << "<polyline class=\"curve\" fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < curves[i].curve.size(); ++k) {
      const auto& pt = curves[i].curve[k];
      if (k) out << ' ';
      out << fixed(map_x(static_cast<double>(pt.box_size))) << ','
          << fixed(map_y(static_cast<double>(pt.box_count)));
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    out << "<line x1=\"" << kRight + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kRight + 35 << "\" y2=\"" << ly << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>"
        << "<text class=\"legend\" x=\"" << kRight + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << xml_escape(curves[i].label) << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_svg_loglog(std::span<const LabeledCurve> curves,
                     const std::filesystem::path& destination) {
  auto out = open_output(destination);
  emit_svg_loglog(curves, out);
  finish_output(out, destination);
}

void emit_svg_contour(const StatsTable& table, std::string_view metric,
                      std::ostream& out) {
  if (table.axes.size() != 2) {
    throw InvalidParameter("heatmap needs a two-axis table");
  }
  if (table.rows.empty()) throw InvalidParameter("heatmap of an empty table");
  std::vector<std::string> rows_axis;
  std::vector<std::string> cols_axis;
  auto index_of = [](std::vector<std::string>& seen, const std::string& v) {
    auto it = std::find(seen.begin(), seen.end(), v);
    if (it != seen.end()) return static_cast<std::size_t>(it - seen.begin());
    seen.push_back(v);
    return seen.size() - 1;
  };
  struct Cell {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Cell> cells;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : table.rows) {
    const double v = r.metric(metric).mean;
    cells.push_back({index_of(rows_axis, parameter_text(r.cell, table.axes[0])),
                     index_of(cols_axis, parameter_text(r.cell, table.axes[1])), v});
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  constexpr double kLeft = 80;
  constexpr double kTop = 40;
  constexpr double kPlotW = 400;
  constexpr double kPlotH = 300;
  const double cw = kPlotW / static_cast<double>(cols_axis.size());
  const double ch = kPlotH / static_cast<double>(rows_axis.size());
  const double width = kLeft + kPlotW + 120;
  const double height = kTop + kPlotH + 60;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"24\" font-size=\"14\" "
         "text-anchor=\"middle\">"
      << xml_escape(metric) << " (mean)</text>\n";
  for (const auto& c : cells) {
    const double t = std::isfinite(c.value) && hi > lo ? (c.value - lo) / (hi - lo) : 0.0;
    const std::string fill = std::isfinite(c.value) ? colour_scale(t) : "#cccccc";
    // First axis runs bottom to top.
    const double x = kLeft + cw * static_cast<double>(c.col);
    const double y = kTop + kPlotH - ch * static_cast<double>(c.row + 1);
    out << "<rect class=\"cell\" x=\"" << fixed(x) << "\" y=\"" << fixed(y)
        << "\" width=\"" << fixed(cw) << "\" height=\"" << fixed(ch) << "\" fill=\""
        << fill << "\"><title>" << xml_escape(table.axes[0]) << '='
        << rows_axis[c.row] << ' ' << xml_escape(table.axes[1]) << '='
        << cols_axis[c.col] << ": " << csv_number(c.value) << "</title></rect>\n";
  }
  for (std::size_t k = 0; k < cols_axis.size(); ++k) {
    out << "<text x=\"" << fixed(kLeft + cw * (static_cast<double>(k) + 0.5)) << "\" y=\""
        << kTop + kPlotH + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << xml_escape(cols_axis[k]) << "</text>\n";
  }
  for (std::size_t k = 0; k < rows_axis.size(); ++k) {
    out << "<text x=\"" << kLeft - 6 << "\" y=\""
        << fixed(kTop + kPlotH - ch * (static_cast<double>(k) + 0.5) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << xml_escape(rows_axis[k])
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kTop + kPlotH + 40
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(table.axes[1])
      << "</text>\n"
      << "<text x=\"20\" y=\"" << kTop + kPlotH / 2
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(table.axes[0])
      << "</text>\n";

  // Colour bar, bottom = min, top = max.
  constexpr int kSteps = 32;
  const double bx = kLeft + kPlotW + 30;
  for (int s = 0; s < kSteps; ++s) {
    const double t = (static_cast<double>(s) + 0.5) / kSteps;
    const double y = kTop + kPlotH - kPlotH * static_cast<double>(s + 1) / kSteps;
    out << "<rect class=\"scale\" x=\"" << bx << "\" y=\"" << fixed(y)
        << "\" width=\"16\" height=\"" << fixed(kPlotH / kSteps + 0.5) << "\" fill=\""
        << colour_scale(t) << "\"/>\n";
  }
  out << "<text x=\"" << bx + 20 << "\" y=\"" << kTop + 4
      << "\" font-size=\"11\">" << csv_number(hi) << "</text>\n"
      << "<text x=\"" << bx + 20 << "\" y=\"" << kTop + kPlotH
      << "\" font-size=\"11\">" << csv_number(lo) << "</text>\n"
      << "</svg>\n";
}

void emit_svg_contour(const StatsTable& table, std::string_view metric,
                      const std::filesystem::path& destination) {
  auto out = open_output(destination);
  emit_svg_contour(table, metric, out);
  finish_output(out, destination);
}

}  // namespace fractalnet
