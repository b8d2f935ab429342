#pragma once

#include <array>

#include "spreadlab/grid.hpp"
#include "spreadlab/initial_state.hpp"
#include "spreadlab/region.hpp"

namespace spreadlab {

/// Two-component 1+1-D Dirac state; ||Psi||^2 = dx * sum (|upper|^2 + |lower|^2).
class DiracSpinor {
 public:
  DiracSpinor(Grid grid, CVector upper, CVector lower);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> upper() const noexcept { return upper_; }
  std::span<const cplx> lower() const noexcept { return lower_; }

  double density(std::size_t i) const { return std::norm(upper_[i]) + std::norm(lower_[i]); }
  double norm_squared() const;
  double norm() const;
  DiracSpinor normalized() const;

 private:
  Grid grid_;
  CVector upper_;
  CVector lower_;
};

/**
 * One-particle Dirac Hamiltonian h(p) = alpha p + beta m with the fixed
 * representation alpha = sigma_1, beta = sigma_3:
 *
 *     h(p) = [  m   p ]
 *            [  p  -m ]
 *
 * Eigenvalues are +/- sqrt(p^2 + m^2). For m = 0 the chiral combinations
 * (upper +/- lower) / sqrt(2) move rigidly at speed +/- 1.
 */
struct DiracParams {
  double mass = 0.0;

  explicit DiracParams(double m);
};

using Matrix2c = std::array<std::array<cplx, 2>, 2>;

Matrix2c dirac_hamiltonian(double p, const DiracParams& params);

/// Profile of `spec` times the constant two-spinor `polarization`, normalized.
DiracSpinor make_spinor(const InitialStateSpec& spec, const Grid& grid,
                        std::array<cplx, 2> polarization);

/// Exact per-mode propagation exp(-i h(k) t) = cos(wt) - i sin(wt) h(k)/w.
DiracSpinor dirac_evolve(const DiracSpinor& spinor, const DiracParams& params, double t);

enum class EnergySign { positive, negative };

/// Unnormalized Lambda_(+/-)(k) = (1 +/- h(k)/w(k)) / 2 applied per mode.
/// At the massless zero mode both projectors are taken as 1/2.
DiracSpinor apply_energy_projector(const DiracSpinor& spinor, const DiracParams& params,
                                   EnergySign sign);

struct ProjectedSpinor {
  DiracSpinor spinor;  // renormalized
  double weight;       // <Psi, Lambda_+ Psi>
};

/// Throws ZeroProjection if less than 1e-14 of the probability survives.
ProjectedSpinor positive_energy_project(const DiracSpinor& spinor, const DiracParams& params);

struct LocalizationVerdict {
  bool strictly_localized;
  double defect;  // || chi_V psi - psi ||
};

/// Eigenvector test N(V) psi = psi with N(V) = chi_V acting componentwise.
LocalizationVerdict strict_localization_check(const WaveFunction& psi, const Region& region,
                                              double tol);
LocalizationVerdict strict_localization_check(const DiracSpinor& psi, const Region& region,
                                              double tol);

}  // namespace spreadlab
