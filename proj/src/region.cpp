#include "spreadlab/region.hpp"

#include <cmath>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab {

namespace {

// Relative slack (in units of spacing) for snapping boundaries to samples.
constexpr double kSnap = 1e-9;

std::size_t first_sample_at_or_above(const Grid& grid, double x) {
  const double pos = (x - grid.x(0)) / grid.spacing();
  const double idx = std::ceil(pos - kSnap);
  if (idx <= 0.0) return 0;
  const auto n = static_cast<double>(grid.n_points());
  return static_cast<std::size_t>(idx < n ? idx : n);
}

}  // namespace

Region::Region(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw BadParams("region needs at least one interval");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw BadParams("region interval must satisfy lo < hi");
    }
    if (i > 0 && intervals_[i - 1].hi > iv.lo) {
      throw BadParams("region intervals must be ordered and disjoint");
    }
  }
}

Region Region::box(const Grid& grid) {
  return Region::interval(-0.5 * grid.length(), 0.5 * grid.length());
}

Region Region::shifted(double a) const {
  std::vector<Interval> out = intervals_;
  for (auto& iv : out) {
    iv.lo += a;
    iv.hi += a;
  }
  return Region(std::move(out));
}

Region Region::complement(const Grid& grid) const {
  const double eps = kSnap * grid.spacing();
  std::vector<Interval> gaps;
  double cursor = -0.5 * grid.length();
  for (const auto& iv : intervals_) {
    if (iv.lo > cursor + eps) gaps.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (0.5 * grid.length() > cursor + eps) gaps.push_back({cursor, 0.5 * grid.length()});
  if (gaps.empty()) throw BadParams("region covers the whole box; complement is empty");
  return Region(std::move(gaps));
}

std::vector<std::pair<std::size_t, std::size_t>> Region::index_ranges(const Grid& grid) const {
  const double half = 0.5 * grid.length();
  const double eps = kSnap * grid.spacing();
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(intervals_.size());
  for (const auto& iv : intervals_) {
    if (iv.lo < -half - eps || iv.hi > half + eps) {
      throw RegionOutOfBox("region [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                           ") leaves the box [-L/2, L/2)");
    }
    ranges.emplace_back(first_sample_at_or_above(grid, iv.lo),
                        first_sample_at_or_above(grid, iv.hi));
  }
  return ranges;
}

std::vector<bool> Region::mask(const Grid& grid) const {
  std::vector<bool> m(grid.n_points(), false);
  for (const auto& [b, e] : index_ranges(grid)) {
    for (std::size_t i = b; i < e; ++i) m[i] = true;
  }
  return m;
}

void Region::check_on(const Grid& grid) const {
  index_ranges(grid);
  const double min_len = 2.0 * grid.spacing() * (1.0 - kSnap);
  for (const auto& iv : intervals_) {
    if (iv.hi - iv.lo < min_len) {
      throw BadParams("region interval shorter than two grid spacings");
    }
  }
}

bool Region::meets(double lo, double hi) const {
  for (const auto& iv : intervals_) {
    if (iv.lo <= hi && lo <= iv.hi) return true;
  }
  return false;
}

}  // namespace spreadlab
