#pragma once

#include <array>
#include <vector>

#include "spreadlab/dirac.hpp"
#include "spreadlab/dispersion.hpp"
#include "spreadlab/grid.hpp"
#include "spreadlab/initial_state.hpp"
#include "spreadlab/region.hpp"

namespace spreadlab {

/// P_psi(V) = <psi, chi_V psi>, a Riemann sum over the region's samples.
double probability(const WaveFunction& psi, const Region& region);
double probability(const DiracSpinor& psi, const Region& region);

/// Probability outside the half-open ball [c - r, c + r). r = 0 gives the
/// total probability. Throws RadiusOutOfBox if the ball leaves the box.
double exterior_probability(const WaveFunction& psi, double center, double r);
double exterior_probability(const DiracSpinor& psi, double center, double r);

struct TailProfile {
  double center = 0.0;
  std::vector<double> radii;     // ascending
  std::vector<double> exterior;  // P(|x - center| > r_i), non-increasing
};

TailProfile tail_profile(const WaveFunction& psi, double center, const std::vector<double>& radii);
TailProfile tail_profile(const DiracSpinor& psi, double center, const std::vector<double>& radii);

/// True iff P(r_i) <= C exp(-K r_i) for every radius past the first quartile
/// of the profile (index >= n / 4).
bool verify_tail_bound(const TailProfile& profile, double K, double C);

struct LeakageResult {
  double t = 0.0;
  double r0 = 0.0;
  double lhs = 0.0;      // P_{psi_t}(outside B_{r0 + t})
  double rhs = 0.0;      // P_{psi_0}(outside B_{r0})
  double leakage = 0.0;  // lhs - rhs; a speed <= 1 probability flow keeps this <= 0
};

/// Light-cone leakage for scalar dispersions, balls centred on the state.
/// Requires a compact state, or tails exp(-K r) with K > m (checked on the
/// sampled tail profile); otherwise TailHypothesisViolated.
LeakageResult lightcone_leakage(const Grid& grid, const InitialStateSpec& spec,
                                const Dispersion& disp, double t, double r0);

/// Same functional for the full-spectrum Dirac evolution of make_spinor(spec).
LeakageResult lightcone_leakage_dirac(const Grid& grid, const InitialStateSpec& spec,
                                      std::array<cplx, 2> polarization, const DiracParams& params,
                                      double t, double r0);

struct NoiseFloor {
  std::size_t n_points = 0;
  double length = 0.0;
  double mass = 0.0;
  double t_probe = 0.0;
  double floor = 0.0;      // largest exterior-light-cone probability in the control
  double threshold = 0.0;  // kDetectionFactor * floor

  static constexpr double kDetectionFactor = 100.0;
  // Grids whose threshold reaches this are rejected.
  static constexpr double kMaxThreshold = 1e-10;

  bool detects(double value) const noexcept { return value > threshold; }
};

/// Half-width of the compact bump used by the causal control.
inline constexpr double kControlHalfWidth = 1.0;

/// Largest probability found outside [-a - t, a + t) when evolving a compact
/// bump spinor with the Dirac equation (several polarizations, times
/// t_probe / 4, ..., t_probe). Exact hyperbolic propagation keeps this at zero,
/// so whatever shows up is spectral truncation and rounding.
double dirac_control_exterior(const Grid& grid, double mass, double t);

/// Throws GridTooCoarse if the resulting threshold is >= 1e-10.
NoiseFloor calibrate_floor(const Grid& grid, double mass, double t_probe);

}  // namespace spreadlab
