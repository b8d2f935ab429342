#pragma once

#include <optional>
#include <variant>

#include "spreadlab/grid.hpp"
#include "spreadlab/region.hpp"

namespace spreadlab {

// Compactly supported C-infinity profile exp(-1 / (1 - ((x - c) / a)^2)).
struct Bump {
  double center = 0.0;
  double half_width = 1.0;
};

// |psi|^2 is a normal density with standard deviation `width`.
struct Gaussian {
  double center = 0.0;
  double width = 1.0;
};

// |psi|^2 proportional to exp(-K |x - c|), so the exterior probability of a
// ball of radius r falls off as exp(-K r). The amplitude decays at K / 2.
// Samples in the outer eighth of the box on either side are set to zero.
struct Exponential {
  double center = 0.0;
  double decay_rate = 1.0;
};

// Constant amplitude on the region's samples.
struct Uniform {
  Region region;
};

using InitialStateSpec = std::variant<Bump, Gaussian, Exponential, Uniform>;

/// Interval outside of which the state is exactly zero, for compact kinds.
std::optional<Interval> compact_support(const InitialStateSpec& spec);

/// Interval that must fit inside [-L/4, L/4]. For the non-compact kinds
/// this is center +/- 5 width (gaussian) or center +/- 16 / K (exponential).
Interval characteristic_extent(const InitialStateSpec& spec);

/// Center used for tail profiles and light-cone balls.
double spec_center(const InitialStateSpec& spec);

/// Rate K with P(|x - c| > r) <~ exp(-K r); +inf for compact and Gaussian tails.
double tail_rate(const InitialStateSpec& spec);

/// Normalized state. Throws SpecTooWide when the extent comes closer than
/// L/4 to a box edge, BadParams for non-positive widths.
WaveFunction make_state(const InitialStateSpec& spec, const Grid& grid);

}  // namespace spreadlab
