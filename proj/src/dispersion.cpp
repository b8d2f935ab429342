#include "spreadlab/dispersion.hpp"

#include <cmath>
#include <string>

#include "spreadlab/errors.hpp"
#include "spreadlab/fourier.hpp"
#include "spreadlab/localization.hpp"

namespace spreadlab {

Dispersion Dispersion::nonrelativistic(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw BadParams("nonrelativistic dispersion needs mass > 0");
  }
  return Dispersion(Kind::nonrelativistic, mass);
}

Dispersion Dispersion::relativistic(double mass) {
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw BadParams("relativistic dispersion needs mass >= 0");
  }
  return Dispersion(Kind::relativistic, mass);
}

double Dispersion::omega(double p) const noexcept {
  switch (kind_) {
    case Kind::nonrelativistic:
      return 0.5 * p * p / mass_;
    case Kind::relativistic:
      return std::hypot(p, mass_);
  }
  return 0.0;
}

void check_time_guard(const Grid& grid, double t) {
  if (!std::isfinite(t) || std::abs(t) > grid.t_max()) {
    throw TimeTooLarge("|t| = " + std::to_string(std::abs(t)) + " exceeds the wraparound guard " +
                       std::to_string(grid.t_max()) + " (L/4)");
  }
}

WaveFunction evolve(const WaveFunction& psi, const Dispersion& disp, double t) {
  check_time_guard(psi.grid(), t);
  if (t == 0.0) return psi;
  const Grid& grid = psi.grid();
  CVector coeffs = to_momentum(psi);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    coeffs[j] *= std::polar(1.0, -disp.omega(grid.k(j)) * t);
  }
  return from_momentum(grid, std::move(coeffs));
}

cplx OverlapFunction::at_shift(long steps) const {
  const long n = static_cast<long>(values.size());
  const long idx = steps + n / 2;
  if (idx < 0 || idx >= n) throw BadParams("shift outside the lattice of shifts");
  return values[static_cast<std::size_t>(idx)];
}

OverlapFunction overlap_function(const WaveFunction& phi, const WaveFunction& psi0,
                                 const Dispersion& disp, double t) {
  require_same_grid(phi.grid(), psi0.grid());
  check_time_guard(psi0.grid(), t);
  const Grid& grid = psi0.grid();
  const CVector phi_hat = to_momentum(phi);
  const CVector psi_hat = to_momentum(psi0);
  CVector product(grid.n_points());
  for (std::size_t j = 0; j < product.size(); ++j) {
    product[j] = std::conj(phi_hat[j]) * psi_hat[j] * std::polar(1.0, -disp.omega(grid.k(j)) * t);
  }
  // sum_j c_j exp(i k_j x_n) = sqrt(L) * (inverse transform of c)_n
  CVector values = from_momentum_samples(grid, product);
  const double scale = std::sqrt(grid.length());
  for (auto& v : values) v *= scale;
  return OverlapFunction{grid, t, std::move(values)};
}

double spreading_probe(const Grid& grid, const InitialStateSpec& spec, const Dispersion& disp,
                       double t, const Region& region) {
  const auto support = compact_support(spec);
  if (!support) throw BadParams("spreading_probe needs a compactly supported initial state");
  region.check_on(grid);
  const double reach = std::abs(t);
  if (region.meets(support->lo - reach, support->hi + reach)) {
    throw RegionNotSpacelike("probe region meets the light cone of the initial support");
  }
  const WaveFunction psi_t = evolve(make_state(spec, grid), disp, t);
  return probability(psi_t, region);
}

}  // namespace spreadlab
