#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "spreadlab/grid.hpp"
#include "spreadlab/region.hpp"

namespace spreadlab {

/**
 * Finite-dimensional system for the expectation dichotomy:
 * F(t) = <exp(-iHt) psi0, O exp(-iHt) psi0> with H Hermitian and
 * 0 <= O <= c_O.
 *
 * In finite dimension every Hermitian H is bounded below and F is a finite
 * trigonometric sum, hence real-analytic, so the dichotomy always holds here.
 * The failure mode for generators that are not bounded below is shown with
 * translation_control on the lattice.
 */
class DichotomySystem {
 public:
  static constexpr Eigen::Index kMaxDim = 256;

  /// Validates Hermiticity (1e-12), the spectral bound of O (NotPositive if
  /// an eigenvalue is below -1e-12) and ||psi0|| = 1 (1e-12).
  DichotomySystem(Eigen::MatrixXcd hamiltonian, Eigen::MatrixXcd observable,
                  Eigen::VectorXcd psi0);

  Eigen::Index dim() const noexcept { return psi0_.size(); }
  const Eigen::MatrixXcd& hamiltonian() const noexcept { return hamiltonian_; }
  const Eigen::MatrixXcd& observable() const noexcept { return observable_; }
  const Eigen::VectorXcd& initial_state() const noexcept { return psi0_; }
  double observable_bound() const noexcept { return observable_bound_; }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

  double zero_tolerance() const noexcept { return kZeroTolerance * observable_bound_; }
  static constexpr double kZeroTolerance = 1e-13;

  /// exp(-iHt) psi0 from the eigendecomposition of H.
  Eigen::VectorXcd state_at(double t) const;
  /// F(t) written as ||O^{1/2} psi_t||^2, so it is never negative.
  double expectation_at(double t) const;

 private:
  Eigen::MatrixXcd hamiltonian_;
  Eigen::MatrixXcd observable_;
  Eigen::VectorXcd psi0_;
  double observable_bound_ = 0.0;

  Eigen::VectorXd energies_;
  Eigen::MatrixXcd eigvecs_;
  Eigen::VectorXcd coeffs_;       // V^dagger psi0
  Eigen::VectorXd o_weights_;     // eigenvalues of O, clamped at 0
  Eigen::MatrixXcd o_amplitudes_; // W^dagger V diag(coeffs)
};

std::vector<double> expectation_scan(const DichotomySystem& sys, const std::vector<double>& t_grid);

enum class Alternative {
  alternative_i,   // F != 0 for almost all t
  alternative_ii,  // F == 0 for all t
};

const char* to_string(Alternative a);

struct DichotomyVerdict {
  Alternative classification = Alternative::alternative_i;
  std::vector<double> zero_times;  // isolated zeros found in the scan window
  double min_value = 0.0;
  double max_value = 0.0;
};

struct ZeroStructure {
  std::vector<double> isolated_zeros;
  std::vector<Interval> zero_intervals;  // stretches where F <= tol persists under refinement
};

using BatchEvaluator = std::function<std::vector<double>(const std::vector<double>&)>;

/// Groups samples with F <= tol into runs, rescans each run with ten times
/// the density and reports a zero interval when the refined run is at least
/// one coarse spacing long; otherwise an isolated zero at the refined minimum.
ZeroStructure analyze_zeros(const std::vector<double>& t_grid, const std::vector<double>& values,
                            double tol, const BatchEvaluator& evaluate);

/// Scans F on `samples` (>= 1000) uniform points of [t_begin, t_end].
/// Alternative (ii) iff sup F <= 1e-13 c_O, confirmed on a 10x finer scan.
/// A zero interval for a non-vanishing F throws DichotomyViolation.
DichotomyVerdict classify(const DichotomySystem& sys, double t_begin, double t_end,
                          std::size_t samples);

/// F(t) = P_{psi_t}(region) under rigid transport psi_t(x) = psi0(x - t),
/// i.e. generator H = P, which is not bounded below. Lattice-aligned times
/// use exact array rotation.
std::vector<double> translation_control(const Grid& grid, const WaveFunction& psi0,
                                        const Region& region, const std::vector<double>& t_grid);

/// Distance from the support of psi0 (nonzero samples) to the region, along
/// the direction of transport. Negative if they overlap.
double transport_gap(const WaveFunction& psi0, const Region& region);

enum class RandomObservable {
  zero_start_projector,  // rank-1 projector, psi0 orthogonal to its range
  positive_contraction,  // B^dagger B scaled to norm 1
};

/// H = A^dagger A with complex Gaussian A (seeded mt19937_64).
DichotomySystem random_system(std::uint64_t seed, Eigen::Index dim, RandomObservable kind);

/// Block-diagonal H, psi0 in the first block, O supported on the second:
/// F vanishes identically.
DichotomySystem block_invariant_system(std::uint64_t seed, Eigen::Index dim);

}  // namespace spreadlab
