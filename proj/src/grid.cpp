#include "spreadlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spreadlab/errors.hpp"
#include "spreadlab/fourier.hpp"

namespace spreadlab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(std::size_t n_points, double length) : n_points_(n_points), length_(length) {
  if (n_points < 8 || !is_power_of_two(n_points)) {
    throw BadParams("grid n_points must be a power of two >= 8, got " +
                    std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw BadParams("grid length must be positive and finite");
  }
}

double Grid::k(std::size_t j) const noexcept {
  const auto shifted = static_cast<double>(static_cast<long>(j) - static_cast<long>(n_points_ / 2));
  return 2.0 * std::numbers::pi * shifted / length_;
}

std::vector<double> Grid::positions() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = x(i);
  return xs;
}

std::vector<double> Grid::momenta() const {
  std::vector<double> ks(n_points_);
  for (std::size_t j = 0; j < n_points_; ++j) ks[j] = k(j);
  return ks;
}

Grid Grid::refined(std::size_t factor) const { return Grid(n_points_ * factor, length_); }

WaveFunction::WaveFunction(Grid grid, CVector amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.n_points()) {
    throw BadParams("amplitude array size does not match grid");
  }
}

double WaveFunction::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s * grid_.spacing();
}

double WaveFunction::norm() const { return std::sqrt(norm_squared()); }

WaveFunction WaveFunction::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw BadParams("cannot normalize the zero state");
  CVector out(amplitudes_);
  for (auto& a : out) a /= n;
  return WaveFunction(grid_, std::move(out));
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridMismatch("states live on different grids");
}

cplx inner(const WaveFunction& phi, const WaveFunction& psi) {
  require_same_grid(phi.grid(), psi.grid());
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < phi.size(); ++i) s += std::conj(phi[i]) * psi[i];
  return s * phi.grid().spacing();
}

bool lattice_shift(const Grid& grid, double a, long& steps) {
  const double ratio = a / grid.spacing();
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) > 1e-9) return false;
  steps = static_cast<long>(nearest);
  return true;
}

WaveFunction translate(const WaveFunction& psi, double a, TranslationMode mode) {
  const Grid& grid = psi.grid();
  const std::size_t n = grid.n_points();
  long steps = 0;
  if (mode == TranslationMode::automatic && lattice_shift(grid, a, steps)) {
    const long ln = static_cast<long>(n);
    const long s = ((steps % ln) + ln) % ln;
    CVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[(i + static_cast<std::size_t>(s)) % n] = psi[i];
    }
    return WaveFunction(grid, std::move(out));
  }
  CVector coeffs = to_momentum(psi);
  for (std::size_t j = 0; j < n; ++j) {
    coeffs[j] *= std::polar(1.0, -grid.k(j) * a);
  }
  return from_momentum(grid, std::move(coeffs));
}

}  // namespace spreadlab
