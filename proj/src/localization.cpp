#include "spreadlab/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spreadlab/errors.hpp"

namespace spreadlab {

namespace {

constexpr double kSnap = 1e-9;

template <class Density>
double region_sum(const Grid& grid, const Region& region, Density&& density) {
  double s = 0.0;
  for (const auto& [b, e] : region.index_ranges(grid)) {
    for (std::size_t i = b; i < e; ++i) s += density(i);
  }
  return s * grid.spacing();
}

template <class Density>
double exterior_sum(const Grid& grid, double center, double r, Density&& density) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw BadParams("radius must be >= 0");
  const double half = 0.5 * grid.length();
  const double eps = kSnap * grid.spacing();
  if (center - r < -half - eps || center + r > half + eps) {
    throw RadiusOutOfBox("ball of radius " + std::to_string(r) + " around " +
                         std::to_string(center) + " leaves the box");
  }
  const double lo = center - r - eps;
  const double hi = center + r - eps;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    const double x = grid.x(i);
    if (x < lo || x >= hi) s += density(i);
  }
  return s * grid.spacing();
}

template <class State>
TailProfile tail_profile_impl(const State& psi, double center, const std::vector<double>& radii,
                              auto&& density) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw BadParams("radii must be ascending");
  TailProfile p;
  p.center = center;
  p.radii = radii;
  p.exterior.reserve(radii.size());
  for (double r : radii) p.exterior.push_back(exterior_sum(psi.grid(), center, r, density));
  return p;
}

// Radii used to check the tail hypothesis: 33 points on [0, reach].
std::vector<double> hypothesis_radii(const Grid& grid, double center) {
  const double reach = 0.25 * grid.length() - std::abs(center);
  std::vector<double> radii;
  for (int i = 0; i <= 32; ++i) radii.push_back(reach * i / 32.0);
  return radii;
}

void check_tail_hypothesis(const Grid& grid, const InitialStateSpec& spec,
                           const WaveFunction& psi0, double mass) {
  if (compact_support(spec)) return;
  const double rate = tail_rate(spec);
  if (!(rate > mass)) {
    throw TailHypothesisViolated("tail decay rate " + std::to_string(rate) +
                                 " does not exceed the mass " + std::to_string(mass));
  }
  // Any rate strictly between m and K (or m + 1 for faster-than-exponential
  // tails) witnesses the hypothesis.
  const double witness = std::isfinite(rate) ? 0.5 * (rate + mass) : mass + 1.0;
  const double center = spec_center(spec);
  const TailProfile profile = tail_profile(psi0, center, hypothesis_radii(grid, center));
  if (!verify_tail_bound(profile, witness, 1.0)) {
    throw TailHypothesisViolated("sampled tail profile exceeds exp(-K r) with K = " +
                                 std::to_string(witness));
  }
}

void check_leakage_args(double t, double r0) {
  if (!(t >= 0.0)) throw BadParams("leakage needs t >= 0");
  if (!(r0 >= 0.0)) throw BadParams("leakage needs r0 >= 0");
}

}  // namespace

double probability(const WaveFunction& psi, const Region& region) {
  return region_sum(psi.grid(), region, [&](std::size_t i) { return std::norm(psi[i]); });
}

double probability(const DiracSpinor& psi, const Region& region) {
  return region_sum(psi.grid(), region, [&](std::size_t i) { return psi.density(i); });
}

double exterior_probability(const WaveFunction& psi, double center, double r) {
  return exterior_sum(psi.grid(), center, r, [&](std::size_t i) { return std::norm(psi[i]); });
}

double exterior_probability(const DiracSpinor& psi, double center, double r) {
  return exterior_sum(psi.grid(), center, r, [&](std::size_t i) { return psi.density(i); });
}

TailProfile tail_profile(const WaveFunction& psi, double center, const std::vector<double>& radii) {
  return tail_profile_impl(psi, center, radii, [&](std::size_t i) { return std::norm(psi[i]); });
}

TailProfile tail_profile(const DiracSpinor& psi, double center, const std::vector<double>& radii) {
  return tail_profile_impl(psi, center, radii, [&](std::size_t i) { return psi.density(i); });
}

bool verify_tail_bound(const TailProfile& profile, double K, double C) {
  if (!(K > 0.0)) throw BadParams("tail bound needs K > 0");
  const std::size_t start = profile.radii.size() / 4;
  for (std::size_t i = start; i < profile.radii.size(); ++i) {
    if (profile.exterior[i] > C * std::exp(-K * profile.radii[i])) return false;
  }
  return true;
}

LeakageResult lightcone_leakage(const Grid& grid, const InitialStateSpec& spec,
                                const Dispersion& disp, double t, double r0) {
  check_leakage_args(t, r0);
  check_time_guard(grid, t);
  const WaveFunction psi0 = make_state(spec, grid);
  check_tail_hypothesis(grid, spec, psi0, disp.mass());
  const double c = spec_center(spec);
  const WaveFunction psi_t = evolve(psi0, disp, t);
  LeakageResult res;
  res.t = t;
  res.r0 = r0;
  res.lhs = exterior_probability(psi_t, c, r0 + t);
  res.rhs = exterior_probability(psi0, c, r0);
  res.leakage = res.lhs - res.rhs;
  return res;
}

LeakageResult lightcone_leakage_dirac(const Grid& grid, const InitialStateSpec& spec,
                                      std::array<cplx, 2> polarization, const DiracParams& params,
                                      double t, double r0) {
  check_leakage_args(t, r0);
  check_time_guard(grid, t);
  check_tail_hypothesis(grid, spec, make_state(spec, grid), params.mass);
  const double c = spec_center(spec);
  const DiracSpinor psi0 = make_spinor(spec, grid, polarization);
  const DiracSpinor psi_t = dirac_evolve(psi0, params, t);
  LeakageResult res;
  res.t = t;
  res.r0 = r0;
  res.lhs = exterior_probability(psi_t, c, r0 + t);
  res.rhs = exterior_probability(psi0, c, r0);
  res.leakage = res.lhs - res.rhs;
  return res;
}

double dirac_control_exterior(const Grid& grid, double mass, double t) {
  const DiracParams params(mass);
  const InitialStateSpec bump = Bump{0.0, kControlHalfWidth};
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<std::array<cplx, 2>, 4> polarizations{{
      {cplx{1.0, 0.0}, cplx{0.0, 0.0}},
      {cplx{0.0, 0.0}, cplx{1.0, 0.0}},
      {cplx{r, 0.0}, cplx{r, 0.0}},
      {cplx{r, 0.0}, cplx{0.0, r}},
  }};
  double worst = 0.0;
  for (const auto& pol : polarizations) {
    const DiracSpinor psi_t = dirac_evolve(make_spinor(bump, grid, pol), params, t);
    worst = std::max(worst, exterior_probability(psi_t, 0.0, kControlHalfWidth + std::abs(t)));
  }
  return worst;
}

NoiseFloor calibrate_floor(const Grid& grid, double mass, double t_probe) {
  check_time_guard(grid, t_probe);
  NoiseFloor nf;
  nf.n_points = grid.n_points();
  nf.length = grid.length();
  nf.mass = mass;
  nf.t_probe = t_probe;
  double worst = 0.0;
  for (int q = 1; q <= 4; ++q) {
    worst = std::max(worst, dirac_control_exterior(grid, mass, t_probe * q / 4.0));
  }
  // Keep threshold > floor even if the control came out exactly zero.
  nf.floor = std::max(worst, std::numeric_limits<double>::min());
  nf.threshold = NoiseFloor::kDetectionFactor * nf.floor;
  if (nf.threshold >= NoiseFloor::kMaxThreshold) {
    throw GridTooCoarse("detection threshold " + std::to_string(nf.threshold) +
                        " >= 1e-10 on grid N=" + std::to_string(grid.n_points()) +
                        ", L=" + std::to_string(grid.length()));
  }
  return nf;
}

}  // namespace spreadlab
