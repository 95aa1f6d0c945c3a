#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mapper {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const noexcept {
    return (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  }
  double length() const noexcept { return hi - lo; }
};

enum class CoverKind { intervals, grid, simplex };

/// A finite cover of the lens codomain.
///
/// Interval and grid covers keep one list of intervals per axis; grid sets are
/// the Cartesian product in row-major order (first axis varies slowest).
/// Simplex covers hold K sets B_k = {x in the simplex : x_k > 0}.
class Cover {
 public:
  CoverKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept;
  /// Dimension of the points it accepts.
  std::size_t dim() const noexcept;

  const std::vector<std::vector<Interval>>& axes() const noexcept { return axes_; }
  /// Overlap fraction per axis; empty for simplex and hand-built covers.
  const std::vector<double>& overlaps() const noexcept { return overlaps_; }
  std::size_t simplex_k() const noexcept { return simplex_k_; }

  /// Per-axis interval index for grid set `set`.
  std::vector<std::size_t> axis_indices(std::size_t set) const;
  std::vector<Interval> box(std::size_t set) const;

  /// True when some axis was built with overlap >= 0.5 (triple overlaps).
  bool high_overlap() const noexcept;

  static Cover from_axes(std::vector<std::vector<Interval>> axes, std::vector<double> overlaps);
  static Cover simplex(std::size_t k);

 private:
  CoverKind kind_ = CoverKind::intervals;
  std::vector<std::vector<Interval>> axes_;
  std::vector<double> overlaps_;
  std::size_t simplex_k_ = 0;
};

/// n closed intervals of equal length L = (hi-lo)/(n-(n-1)g) with adjacent
/// intervals sharing g*L; the i-th starts at lo + i*L*(1-g).
Cover interval_cover(std::size_t n, double overlap, double lo, double hi);

/// Arbitrary 1-D cover, e.g. {(-inf, eps), (-eps, inf)}.
Cover custom_interval_cover(std::vector<Interval> intervals);

/// Product of per-axis interval covers, 1 <= d <= 3.
Cover grid_cover(std::span<const std::size_t> n_axes, std::span<const double> overlaps,
                 std::span<const std::pair<double, double>> ranges);

Cover simplex_cover(std::size_t k);

struct Membership {
  std::vector<std::size_t> sets;  ///< ascending
  bool out_of_range = false;
};

/// All sets containing `x`. For interval/grid covers a point in no set is
/// flagged out of range; for simplex covers points off the simplex are.
Membership membership(const Cover& cover, std::span<const double> x);

}  // namespace mapper
