#include "spreadlab/dirac.hpp"

#include <cmath>

#include "spreadlab/dispersion.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fourier.hpp"

namespace spreadlab {

DiracSpinor::DiracSpinor(Grid grid, CVector upper, CVector lower)
    : grid_(grid), upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.size() != grid_.n_points() || lower_.size() != grid_.n_points()) {
    throw BadParams("spinor component size does not match grid");
  }
}

double DiracSpinor::norm_squared() const {
  double s = 0.0;
  for (std::size_t i = 0; i < upper_.size(); ++i) s += density(i);
  return s * grid_.spacing();
}

double DiracSpinor::norm() const { return std::sqrt(norm_squared()); }

DiracSpinor DiracSpinor::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw BadParams("cannot normalize the zero spinor");
  CVector u(upper_), l(lower_);
  for (auto& a : u) a /= n;
  for (auto& a : l) a /= n;
  return DiracSpinor(grid_, std::move(u), std::move(l));
}

DiracParams::DiracParams(double m) : mass(m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw BadParams("Dirac mass must be >= 0");
}

Matrix2c dirac_hamiltonian(double p, const DiracParams& params) {
  const double m = params.mass;
  return {{{cplx{m, 0.0}, cplx{p, 0.0}}, {cplx{p, 0.0}, cplx{-m, 0.0}}}};
}

DiracSpinor make_spinor(const InitialStateSpec& spec, const Grid& grid,
                        std::array<cplx, 2> polarization) {
  const double pnorm = std::sqrt(std::norm(polarization[0]) + std::norm(polarization[1]));
  if (!(pnorm > 0.0)) throw BadParams("spinor polarization must be nonzero");
  const WaveFunction profile = make_state(spec, grid);
  CVector u(grid.n_points()), l(grid.n_points());
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    u[i] = profile[i] * polarization[0] / pnorm;
    l[i] = profile[i] * polarization[1] / pnorm;
  }
  return DiracSpinor(grid, std::move(u), std::move(l));
}

namespace {

// Applies a per-mode 2x2 matrix in momentum space.
template <class ModeMatrix>
DiracSpinor apply_per_mode(const DiracSpinor& s, ModeMatrix&& matrix_at) {
  const Grid& grid = s.grid();
  CVector u = to_momentum(grid, s.upper());
  CVector l = to_momentum(grid, s.lower());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const Matrix2c a = matrix_at(grid.k(j));
    const cplx nu = a[0][0] * u[j] + a[0][1] * l[j];
    const cplx nl = a[1][0] * u[j] + a[1][1] * l[j];
    u[j] = nu;
    l[j] = nl;
  }
  return DiracSpinor(grid, from_momentum_samples(grid, u), from_momentum_samples(grid, l));
}

}  // namespace

DiracSpinor dirac_evolve(const DiracSpinor& spinor, const DiracParams& params, double t) {
  check_time_guard(spinor.grid(), t);
  if (t == 0.0) return spinor;
  const double m = params.mass;
  return apply_per_mode(spinor, [&](double k) -> Matrix2c {
    const double w = std::hypot(k, m);
    if (w == 0.0) return {{{1.0, 0.0}, {0.0, 1.0}}};
    const double c = std::cos(w * t);
    const cplx s = cplx{0.0, -std::sin(w * t) / w};
    return {{{c + s * m, s * k}, {s * k, c - s * m}}};
  });
}

DiracSpinor apply_energy_projector(const DiracSpinor& spinor, const DiracParams& params,
                                   EnergySign sign) {
  const double m = params.mass;
  const double sgn = sign == EnergySign::positive ? 1.0 : -1.0;
  return apply_per_mode(spinor, [&](double k) -> Matrix2c {
    const double w = std::hypot(k, m);
    if (w == 0.0) return {{{0.5, 0.0}, {0.0, 0.5}}};
    const double hm = sgn * m / w;
    const double hk = sgn * k / w;
    return {{{0.5 * (1.0 + hm), 0.5 * hk}, {0.5 * hk, 0.5 * (1.0 - hm)}}};
  });
}

ProjectedSpinor positive_energy_project(const DiracSpinor& spinor, const DiracParams& params) {
  DiracSpinor projected = apply_energy_projector(spinor, params, EnergySign::positive);
  // Lambda_+ is an orthogonal projector, so <Psi, Lambda_+ Psi> = ||Lambda_+ Psi||^2.
  const double weight = projected.norm_squared();
  if (weight < 1e-14) throw ZeroProjection("positive-energy component carries < 1e-14 probability");
  return ProjectedSpinor{projected.normalized(), weight};
}

namespace {

double outside_sum(const Grid& grid, const Region& region, auto&& density) {
  const auto inside = region.mask(grid);
  double s = 0.0;
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    if (!inside[i]) s += density(i);
  }
  return s * grid.spacing();
}

}  // namespace

LocalizationVerdict strict_localization_check(const WaveFunction& psi, const Region& region,
                                              double tol) {
  if (!(tol > 0.0)) throw BadParams("tolerance must be positive");
  const double defect =
      std::sqrt(outside_sum(psi.grid(), region, [&](std::size_t i) { return std::norm(psi[i]); }));
  return {defect <= tol, defect};
}

LocalizationVerdict strict_localization_check(const DiracSpinor& psi, const Region& region,
                                              double tol) {
  if (!(tol > 0.0)) throw BadParams("tolerance must be positive");
  const double defect =
      std::sqrt(outside_sum(psi.grid(), region, [&](std::size_t i) { return psi.density(i); }));
  return {defect <= tol, defect};
}

}  // namespace spreadlab
