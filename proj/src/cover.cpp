#include "mapper/cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mapper/errors.hpp"

namespace mapper {

std::size_t Cover::size() const noexcept {
  if (kind_ == CoverKind::simplex) return simplex_k_;
  std::size_t total = 1;
  for (const auto& axis : axes_) total *= axis.size();
  return axes_.empty() ? 0 : total;
}

std::size_t Cover::dim() const noexcept {
  return kind_ == CoverKind::simplex ? simplex_k_ : axes_.size();
}

std::vector<std::size_t> Cover::axis_indices(std::size_t set) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    idx[a] = set % axes_[a].size();
    set /= axes_[a].size();
  }
  return idx;
}

std::vector<Interval> Cover::box(std::size_t set) const {
  const auto idx = axis_indices(set);
  std::vector<Interval> out;
  out.reserve(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) out.push_back(axes_[a][idx[a]]);
  return out;
}

bool Cover::high_overlap() const noexcept {
  return std::any_of(overlaps_.begin(), overlaps_.end(), [](double g) { return g >= 0.5; });
}

Cover Cover::from_axes(std::vector<std::vector<Interval>> axes, std::vector<double> overlaps) {
  if (axes.empty() || axes.size() > 3) {
    throw ValidationError("cover must have between 1 and 3 axes");
  }
  for (const auto& axis : axes) {
    if (axis.empty()) throw ValidationError("cover axis has no intervals");
  }
  Cover c;
  c.kind_ = axes.size() == 1 ? CoverKind::intervals : CoverKind::grid;
  c.axes_ = std::move(axes);
  c.overlaps_ = std::move(overlaps);
  return c;
}

Cover Cover::simplex(std::size_t k) {
  if (k == 0) throw ValidationError("simplex cover needs K >= 1");
  Cover c;
  c.kind_ = CoverKind::simplex;
  c.simplex_k_ = k;
  return c;
}

namespace {

std::vector<Interval> axis_intervals(std::size_t n, double overlap, double lo, double hi) {
  if (n == 0) throw ValidationError("cover needs n >= 1 intervals");
  if (!(overlap >= 0.0 && overlap < 1.0)) {
    throw ValidationError("cover overlap must lie in [0, 1), got " + std::to_string(overlap));
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw ValidationError("cover range needs finite lo < hi");
  }
  const double nd = static_cast<double>(n);
  const double length = (hi - lo) / (nd - (nd - 1.0) * overlap);
  const double step = length * (1.0 - overlap);

  std::vector<Interval> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].lo = lo + static_cast<double>(i) * step;
    out[i].hi = out[i].lo + length;
  }
  out.front().lo = lo;
  out.back().hi = hi;
  // Rounding must never open a gap between neighbours.
  for (std::size_t i = 0; i + 1 < n; ++i) out[i].hi = std::max(out[i].hi, out[i + 1].lo);
  return out;
}

}  // namespace

Cover interval_cover(std::size_t n, double overlap, double lo, double hi) {
  return Cover::from_axes({axis_intervals(n, overlap, lo, hi)}, {overlap});
}

Cover custom_interval_cover(std::vector<Interval> intervals) {
  return Cover::from_axes({std::move(intervals)}, {});
}

Cover grid_cover(std::span<const std::size_t> n_axes, std::span<const double> overlaps,
                 std::span<const std::pair<double, double>> ranges) {
  if (n_axes.empty() || n_axes.size() > 3) {
    throw ValidationError("grid cover needs between 1 and 3 axes");
  }
  if (overlaps.size() != n_axes.size() || ranges.size() != n_axes.size()) {
    throw ValidationError("grid cover: " + std::to_string(n_axes.size()) + " axis counts but " +
                          std::to_string(overlaps.size()) + " overlaps and " +
                          std::to_string(ranges.size()) + " ranges");
  }
  std::vector<std::vector<Interval>> axes;
  for (std::size_t a = 0; a < n_axes.size(); ++a) {
    axes.push_back(axis_intervals(n_axes[a], overlaps[a], ranges[a].first, ranges[a].second));
  }
  return Cover::from_axes(std::move(axes), {overlaps.begin(), overlaps.end()});
}

Cover simplex_cover(std::size_t k) { return Cover::simplex(k); }

Membership membership(const Cover& cover, std::span<const double> x) {
  Membership out;
  if (x.size() != cover.dim()) {
    throw ValidationError("point of dimension " + std::to_string(x.size()) +
                          " queried against a cover of dimension " + std::to_string(cover.dim()));
  }

  if (cover.kind() == CoverKind::simplex) {
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sum += x[k];
      if (x[k] < -1e-12 || !std::isfinite(x[k])) out.out_of_range = true;
      if (x[k] > 0.0) out.sets.push_back(k);
    }
    if (std::abs(sum - 1.0) > 1e-9) out.out_of_range = true;
    return out;
  }

  const auto& axes = cover.axes();
  std::vector<std::vector<std::size_t>> per_axis(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    for (std::size_t i = 0; i < axes[a].size(); ++i) {
      if (axes[a][i].contains(x[a])) per_axis[a].push_back(i);
    }
    if (per_axis[a].empty()) {
      out.out_of_range = true;
      return out;
    }
  }
  // Row-major enumeration of the product keeps the result ascending.
  std::vector<std::size_t> pos(axes.size(), 0);
  while (true) {
    std::size_t set = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) set = set * axes[a].size() + per_axis[a][pos[a]];
    out.sets.push_back(set);
    std::size_t a = axes.size();
    while (a-- > 0) {
      if (++pos[a] < per_axis[a].size()) break;
      pos[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace mapper
