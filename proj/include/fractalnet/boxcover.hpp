#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fractalnet/errors.hpp"
#include "fractalnet/graph.hpp"

namespace fractalnet {

/// Partition of the node set into boxes whose members are pairwise closer
/// than box_size hops.
struct BoxCover {
  std::uint32_t box_size = 0;
  std::vector<std::vector<NodeId>> boxes;
};

struct CurvePoint {
  std::uint32_t box_size;
  std::uint64_t box_count;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// N_B(l_B) for l_B = 1, 2, ... up to the first size covered by one box.
using NbCurve = std::vector<CurvePoint>;

inline constexpr int kDefaultOrderings = 10;
inline constexpr double kDefaultR2Cutoff = 0.98;

/// Greedy colouring of the "too far apart" graph (edges join nodes at
/// distance >= box_size) under a seed-shuffled node order; colour classes are
/// the boxes.
BoxCover greedy_box_cover(const Graph& g, std::uint32_t box_size,
                          std::uint64_t seed);

/// Exact minimum number of boxes, by subset dynamic programming. Limited to
/// 16 nodes.
std::uint32_t exact_min_boxes(const Graph& g, std::uint32_t box_size);

inline constexpr std::size_t kExactBoxNodeLimit = 16;

/// Ordering k uses seed + k, so each entry equals the minimum over
/// greedy_box_cover(g, l_B, seed + k) for k < n_orderings.
NbCurve nb_curve(const Graph& g, std::uint64_t seed,
                 int n_orderings = kDefaultOrderings);

template <typename Scalar>
struct LineFit {
  Scalar slope;
  Scalar intercept;
  Scalar r2;
};

/// Ordinary least squares y ~ slope * x + intercept with the coefficient of
/// determination. A fit with zero total variance (up to rounding) reports
/// r2 = 1 when the residual vanishes too.
template <typename DerivedX, typename DerivedY>
LineFit<typename DerivedX::Scalar> fit_line(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> design(n, 2);
  design.col(0) = x;
  design.col(1).setOnes();
  const Eigen::Matrix<Scalar, 2, 1> coef =
      design.colPivHouseholderQr().solve(y.template cast<Scalar>());
  const Vector residual = y.template cast<Scalar>() - design * coef;
  const Scalar ss_res = residual.squaredNorm();
  const Scalar ss_tot =
      (y.template cast<Scalar>().array() - Scalar(y.mean())).matrix().squaredNorm();
  // Rounding noise on constant data is not variance.
  const Scalar noise = Eigen::NumTraits<Scalar>::epsilon() * Scalar(n) *
                       (y.template cast<Scalar>().squaredNorm() + Scalar(1));
  Scalar r2;
  if (ss_tot > noise) {
    r2 = Scalar(1) - ss_res / ss_tot;
  } else {
    r2 = ss_res <= noise ? Scalar(1) : Scalar(0);
  }
  return {coef(0), coef(1), r2};
}

struct PowerLawFit {
  double dimension;  // d_B = -slope of log N_B against log l_B
  double r2;
};

struct ExponentialFit {
  double decay;  // -slope of log N_B against l_B
  double r2;
};

PowerLawFit fit_power_law(const NbCurve& curve);
ExponentialFit fit_exponential(const NbCurve& curve);

enum class FractalityLabel { fractal, non_fractal, mixed };

std::string_view to_string(FractalityLabel label);

struct FractalityReport {
  double dimension = 0.0;
  double r2_power = 0.0;
  double r2_exp = 0.0;
  FractalityLabel label = FractalityLabel::mixed;
};

/// Which part of an N_B curve the classifier fits.
///  - scaling: l_B >= 2, up to the later of l_max / 2 (l_max is the first size
///    covered by one box) and the last size that still needs n^(1/4) boxes.
///    Drops the trivial l_B = 1 point and the finite-size tail in which a few
///    boxes spanning half the graph cover everything. The count bound keeps
///    the exponential collapse of small-world graphs, whose l_max is short.
///    Falls back to the whole curve when fewer than three points remain.
///  - full: every point.
enum class FitWindow { scaling, full };

std::string_view to_string(FitWindow window);
FitWindow parse_fit_window(std::string_view name);

NbCurve fit_window(const NbCurve& curve, FitWindow window);

/// Fits both models on the selected window. fractal: power-law r2 >= cutoff
/// and above the exponential r2; non-fractal: the mirror image; anything else
/// is mixed.
FractalityReport classify_fractality(const NbCurve& curve,
                                     double r2_cutoff = kDefaultR2Cutoff,
                                     FitWindow window = FitWindow::scaling);

/// CSV with columns l_b,n_b.
void write_curve_csv(std::ostream& out, const NbCurve& curve);
/// CSV with columns d_b,r2_power,r2_exp,label.
void write_report_csv(std::ostream& out, const FractalityReport& report);

}  // namespace fractalnet
