#include "spreadlab/initial_state.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw BadParams(std::string(what) + " must be positive and finite");
  }
}

double bump_profile(double u) {
  // u = (x - c) / a; exact zero on and outside |u| = 1.
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

}  // namespace

std::optional<Interval> compact_support(const InitialStateSpec& spec) {
  return std::visit(
      overloaded{
          [](const Bump& b) -> std::optional<Interval> {
            return Interval{b.center - b.half_width, b.center + b.half_width};
          },
          [](const Gaussian&) -> std::optional<Interval> { return std::nullopt; },
          [](const Exponential&) -> std::optional<Interval> { return std::nullopt; },
          [](const Uniform& u) -> std::optional<Interval> {
            return Interval{u.region.lower(), u.region.upper()};
          },
      },
      spec);
}

Interval characteristic_extent(const InitialStateSpec& spec) {
  return std::visit(
      overloaded{
          [](const Bump& b) { return Interval{b.center - b.half_width, b.center + b.half_width}; },
          [](const Gaussian& g) {
            return Interval{g.center - 5.0 * g.width, g.center + 5.0 * g.width};
          },
          [](const Exponential& e) {
            return Interval{e.center - 16.0 / e.decay_rate, e.center + 16.0 / e.decay_rate};
          },
          [](const Uniform& u) { return Interval{u.region.lower(), u.region.upper()}; },
      },
      spec);
}

double spec_center(const InitialStateSpec& spec) {
  return std::visit(overloaded{
                        [](const Bump& b) { return b.center; },
                        [](const Gaussian& g) { return g.center; },
                        [](const Exponential& e) { return e.center; },
                        [](const Uniform& u) { return 0.5 * (u.region.lower() + u.region.upper()); },
                    },
                    spec);
}

double tail_rate(const InitialStateSpec& spec) {
  if (const auto* e = std::get_if<Exponential>(&spec)) return e->decay_rate;
  return std::numeric_limits<double>::infinity();
}

WaveFunction make_state(const InitialStateSpec& spec, const Grid& grid) {
  std::visit(overloaded{
                 [](const Bump& b) { require_positive(b.half_width, "bump half_width"); },
                 [](const Gaussian& g) { require_positive(g.width, "gaussian width"); },
                 [](const Exponential& e) { require_positive(e.decay_rate, "exponential decay_rate"); },
                 [](const Uniform&) {},
             },
             spec);

  const Interval extent = characteristic_extent(spec);
  const double quarter = 0.25 * grid.length();
  if (extent.lo < -quarter || extent.hi > quarter) {
    throw SpecTooWide("initial state extent [" + std::to_string(extent.lo) + ", " +
                      std::to_string(extent.hi) + "] leaves the admissible window [-L/4, L/4]");
  }

  const std::size_t n = grid.n_points();
  CVector amps(n, cplx{0.0, 0.0});
  std::visit(overloaded{
                 [&](const Bump& b) {
                   for (std::size_t i = 0; i < n; ++i) {
                     amps[i] = bump_profile((grid.x(i) - b.center) / b.half_width);
                   }
                 },
                 [&](const Gaussian& g) {
                   for (std::size_t i = 0; i < n; ++i) {
                     const double d = (grid.x(i) - g.center) / g.width;
                     amps[i] = std::exp(-0.25 * d * d);
                   }
                 },
                 [&](const Exponential& e) {
                   const double edge = 0.375 * grid.length();
                   for (std::size_t i = 0; i < n; ++i) {
                     const double x = grid.x(i);
                     if (std::abs(x) > edge) continue;
                     amps[i] = std::exp(-0.5 * e.decay_rate * std::abs(x - e.center));
                   }
                 },
                 [&](const Uniform& u) {
                   for (const auto& [b, end] : u.region.index_ranges(grid)) {
                     for (std::size_t i = b; i < end; ++i) amps[i] = 1.0;
                   }
                 },
             },
             spec);

  WaveFunction raw(grid, std::move(amps));
  if (!(raw.norm() > 0.0)) throw BadParams("initial state has no samples on this grid");
  return raw.normalized();
}

}  // namespace spreadlab
