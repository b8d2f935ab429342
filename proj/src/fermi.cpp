#include "spreadlab/fermi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spreadlab/errors.hpp"
#include "spreadlab/linalg.hpp"

namespace spreadlab {

void FermiParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw BadParams(std::string(name) + " must be > 0, got " + std::to_string(v));
    }
  };
  positive(R, "R");
  positive(omega_atom, "omega_atom");
  positive(field_length, "field_length");
  positive(k_max, "k_max");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw BadParams("lambda must be >= 0");
  if (n_modes <= 0 || n_modes % 2 != 0) throw BadParams("n_modes must be a positive even integer");
  if (R > 0.25 * field_length) throw BadParams("R must not exceed field_length / 4");
  if (k_max > std::numbers::pi * static_cast<double>(n_modes) / field_length * (1.0 + 1e-12)) {
    throw BadParams("k_max exceeds pi * n_modes / field_length");
  }
}

std::vector<double> active_modes(const FermiParams& params) {
  params.validate();
  const double dk = 2.0 * std::numbers::pi / params.field_length;
  const long half = params.n_modes / 2;
  std::vector<double> ks;
  for (long n = -half; n <= half; ++n) {
    if (n == 0) continue;
    const double k = dk * static_cast<double>(n);
    if (std::abs(k) <= params.k_max * (1.0 + 1e-12)) ks.push_back(k);
  }
  return ks;
}

Eigen::MatrixXcd build_hamiltonian(const FermiParams& params) {
  const auto ks = active_modes(params);
  const Eigen::Index dim = 2 + static_cast<Eigen::Index>(ks.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  h(0, 0) = params.omega_atom;
  h(1, 1) = params.omega_atom;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(j);
    const double k = ks[j];
    const double w = std::abs(k);
    h(m, m) = w;
    const double g = params.lambda / std::sqrt(2.0 * w * params.field_length);
    // A at x = 0.
    h(0, m) = g;
    h(m, 0) = g;
    if (params.b_coupled) {
      const cplx gb = g * std::polar(1.0, k * params.R);
      h(1, m) = gb;
      h(m, 1) = std::conj(gb);
    }
  }
  return h;
}

double SingleExcitationState::norm_squared() const {
  double s = std::norm(c_A) + std::norm(c_B);
  for (const cplx& c : c_k) s += std::norm(c);
  return s;
}

std::vector<SingleExcitationState> evolve_fermi(const FermiParams& params,
                                                const std::vector<double>& t_grid,
                                                ExcitedAtom initial) {
  const Eigen::MatrixXcd h = build_hamiltonian(params);
  const HermitianEigen eig = eigh(h);
  const Eigen::Index dim = h.rows();
  const Eigen::Index start = initial == ExcitedAtom::A ? 0 : 1;
  const Eigen::VectorXcd coeffs = eig.vectors.row(start).adjoint();

  std::vector<SingleExcitationState> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd phased(dim);
  for (double t : t_grid) {
    for (Eigen::Index j = 0; j < dim; ++j) phased(j) = std::polar(1.0, -eig.values(j) * t) * coeffs(j);
    const Eigen::VectorXcd psi = eig.vectors * phased;
    SingleExcitationState s;
    s.t = t;
    s.c_A = psi(0);
    s.c_B = psi(1);
    s.c_k.assign(psi.data() + 2, psi.data() + dim);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<double> excitation_probability_A(const std::vector<SingleExcitationState>& states) {
  std::vector<double> p;
  p.reserve(states.size());
  for (const auto& s : states) p.push_back(std::norm(s.c_A));
  return p;
}

std::vector<double> excitation_probability_B(const std::vector<SingleExcitationState>& states) {
  std::vector<double> p;
  p.reserve(states.size());
  for (const auto& s : states) p.push_back(std::norm(s.c_B));
  return p;
}

CausalityReport causality_report(double R, const std::vector<double>& t_grid,
                                 const std::vector<double>& p_b) {
  if (t_grid.size() != p_b.size()) throw BadParams("t_grid and P_B differ in length");
  CausalityReport rep;
  rep.front_time = R;
  bool have_pre = false, have_post = false;
  rep.precursor_min = 1.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (t > 0.0 && t <= CausalityReport::kPrecursorEnd * R) {
      rep.precursor_max = std::max(rep.precursor_max, p_b[i]);
      have_pre = true;
    }
    if (t > 0.0 && t < R) rep.precursor_min = std::min(rep.precursor_min, p_b[i]);
    if (t >= R && t <= CausalityReport::kPostFrontEnd * R) {
      rep.post_front_max = std::max(rep.post_front_max, p_b[i]);
      have_post = true;
    }
  }
  if (!have_pre || !have_post) {
    throw BadParams("t_grid must sample both (0, 0.9R] and [R, 2R]");
  }
  rep.ratio = rep.post_front_max > 0.0 ? rep.precursor_max / rep.post_front_max : 0.0;
  return rep;
}

CausalityReport causality_report(const FermiParams& params, const std::vector<double>& t_grid) {
  const auto states = evolve_fermi(params, t_grid);
  return causality_report(params.R, t_grid, excitation_probability_B(states));
}

double golden_rule_rate(const FermiParams& params) {
  params.validate();
  return params.lambda * params.lambda / params.omega_atom;
}

DichotomySystem fermi_dichotomy_system(const FermiParams& params) {
  Eigen::MatrixXcd h = build_hamiltonian(params);
  const Eigen::Index dim = h.rows();
  if (dim > DichotomySystem::kMaxDim) {
    throw BadParams("Fermi system of dimension " + std::to_string(dim) +
                    " exceeds the dichotomy limit of 256");
  }
  Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(dim, dim);
  o(1, 1) = 1.0;
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  psi0(0) = 1.0;
  return DichotomySystem(std::move(h), std::move(o), std::move(psi0));
}

}  // namespace spreadlab
