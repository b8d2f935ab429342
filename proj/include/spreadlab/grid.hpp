#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spreadlab {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/**
 * Uniform periodic lattice on [-L/2, L/2) with its dual momentum lattice.
 *
 * Natural units c = hbar = 1. Sample i sits at x_i = -L/2 + i * dx, so the
 * origin is sample N/2. Momenta are stored in centered order,
 * k_j = 2 pi (j - N/2) / L, leaving the Nyquist point -pi/dx unpaired.
 */
class Grid {
 public:
  Grid(std::size_t n_points, double length);

  std::size_t n_points() const noexcept { return n_points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_points_); }

  double x(std::size_t i) const noexcept {
    return -0.5 * length_ + static_cast<double>(i) * spacing();
  }
  double k(std::size_t j) const noexcept;

  std::vector<double> positions() const;
  std::vector<double> momenta() const;

  // Largest |t| for which c t plus the admissible support radius (L/4)
  // stays inside half the box.
  double t_max() const noexcept { return 0.25 * length_; }

  // Same box, n_points multiplied by `factor` (a power of two).
  Grid refined(std::size_t factor) const;

  bool operator==(const Grid&) const = default;

 private:
  std::size_t n_points_;
  double length_;
};

/// Scalar state in position representation, ||psi||^2 = dx * sum |psi_i|^2.
class WaveFunction {
 public:
  WaveFunction(Grid grid, CVector amplitudes);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  double norm() const;
  WaveFunction normalized() const;

 private:
  Grid grid_;
  CVector amplitudes_;
};

void require_same_grid(const Grid& a, const Grid& b);

cplx inner(const WaveFunction& phi, const WaveFunction& psi);

enum class TranslationMode {
  automatic,  // exact array rotation when a is a lattice multiple, else spectral
  spectral,   // always multiply by exp(-i k a) in momentum space
};

/// (U(a) psi)(x) = psi(x - a).
WaveFunction translate(const WaveFunction& psi, double a,
                       TranslationMode mode = TranslationMode::automatic);

// Integer lattice shift equivalent to `a`, if `a` is one.
bool lattice_shift(const Grid& grid, double a, long& steps);

}  // namespace spreadlab
