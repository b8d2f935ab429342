#pragma once

#include "spreadlab/grid.hpp"
#include "spreadlab/initial_state.hpp"
#include "spreadlab/region.hpp"

namespace spreadlab {

/// Free one-particle energy omega(p), always the non-negative branch.
class Dispersion {
 public:
  enum class Kind { nonrelativistic, relativistic };

  /// omega(p) = p^2 / (2m), m > 0.
  static Dispersion nonrelativistic(double mass);
  /// omega(p) = sqrt(p^2 + m^2), m >= 0.
  static Dispersion relativistic(double mass);

  Kind kind() const noexcept { return kind_; }
  double mass() const noexcept { return mass_; }
  double omega(double p) const noexcept;

 private:
  Dispersion(Kind kind, double mass) : kind_(kind), mass_(mass) {}
  Kind kind_;
  double mass_;
};

/// Throws TimeTooLarge when |t| exceeds grid.t_max().
void check_time_guard(const Grid& grid, double t);

/// psi_t = exp(-i omega(P) t) psi, applied exactly per momentum mode.
WaveFunction evolve(const WaveFunction& psi, const Dispersion& disp, double t);

/// f_t(x) = <phi, U(-x) psi_t> sampled at the lattice shifts x = x_i, so
/// values[i] belongs to the shift grid.x(i) (value N/2 is the zero shift).
struct OverlapFunction {
  Grid grid;
  double t;
  CVector values;

  cplx at_shift(long steps) const;
};

OverlapFunction overlap_function(const WaveFunction& phi, const WaveFunction& psi0,
                                 const Dispersion& disp, double t);

/// Probability of finding the evolved compact state in `region` at time t.
/// The region has to avoid the light cone [lo - |t|, hi + |t|] of the support;
/// otherwise RegionNotSpacelike.
double spreading_probe(const Grid& grid, const InitialStateSpec& spec, const Dispersion& disp,
                       double t, const Region& region);

}  // namespace spreadlab
