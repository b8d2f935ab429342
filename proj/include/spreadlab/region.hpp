#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spreadlab/grid.hpp"

namespace spreadlab {

struct Interval {
  double lo;
  double hi;
};

/**
 * Finite union of disjoint intervals inside the box.
 *
 * Boundaries snap to lattice points with a half-open convention: sample x_i
 * belongs to [lo, hi) iff lo <= x_i < hi. Adjacent intervals therefore never
 * share a sample, which makes probabilities exactly additive.
 */
class Region {
 public:
  explicit Region(std::vector<Interval> intervals);
  static Region interval(double lo, double hi) { return Region({{lo, hi}}); }
  // The whole box [-L/2, L/2).
  static Region box(const Grid& grid);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

  Region shifted(double a) const;
  Region complement(const Grid& grid) const;

  // Smallest and largest boundary.
  double lower() const noexcept { return intervals_.front().lo; }
  double upper() const noexcept { return intervals_.back().hi; }

  // Half-open sample ranges [begin, end). Throws RegionOutOfBox if an
  // interval leaves the box.
  std::vector<std::pair<std::size_t, std::size_t>> index_ranges(const Grid& grid) const;

  // Membership of a single sample, consistent with index_ranges.
  std::vector<bool> mask(const Grid& grid) const;

  // Enforces the per-grid invariant: each interval at least two spacings long.
  void check_on(const Grid& grid) const;

  // True if any interval meets the closed interval [lo, hi].
  bool meets(double lo, double hi) const;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace spreadlab
