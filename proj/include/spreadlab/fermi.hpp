#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spreadlab/dichotomy.hpp"
#include "spreadlab/grid.hpp"

namespace spreadlab {

/**
 * Two two-level atoms A (at x = 0) and B (at x = R) coupled to a 1-D photon
 * field in a periodic box of length L_f, rotating-wave approximation,
 * single-excitation sector. Modes k_n = 2 pi n / L_f with n != 0,
 * |n| <= n_modes / 2 and |k_n| <= k_max; omega_k = |k|.
 */
struct FermiParams {
  double R = 10.0;
  double omega_atom = 10.0;
  double lambda = 0.5;
  double field_length = 80.0;
  long n_modes = 2048;
  double k_max = 40.0;
  bool b_coupled = true;  // false drops every B-field coupling

  /// Throws BadParams naming the offending field.
  void validate() const;
};

/// Active wavenumbers in ascending order.
std::vector<double> active_modes(const FermiParams& params);

/// Basis (A excited, B excited, one photon in mode k...). Diagonal (Omega,
/// Omega, |k|); couplings g_k e^{ikx} in the atom row, g_k = lambda / sqrt(2 |k| L_f).
Eigen::MatrixXcd build_hamiltonian(const FermiParams& params);

struct SingleExcitationState {
  double t = 0.0;
  cplx c_A;
  cplx c_B;
  CVector c_k;

  double norm_squared() const;
};

enum class ExcitedAtom { A, B };

/// Exact evolution from |e_A g_B 0> (or |g_A e_B 0>) via one eigendecomposition.
std::vector<SingleExcitationState> evolve_fermi(const FermiParams& params,
                                                const std::vector<double>& t_grid,
                                                ExcitedAtom initial = ExcitedAtom::A);

std::vector<double> excitation_probability_A(const std::vector<SingleExcitationState>& states);
std::vector<double> excitation_probability_B(const std::vector<SingleExcitationState>& states);

struct CausalityReport {
  double front_time = 0.0;       // R
  double precursor_max = 0.0;    // max P_B on (0, 0.9 R]
  double post_front_max = 0.0;   // max P_B on [R, 2 R]
  double ratio = 0.0;            // 0 when both maxima vanish
  double precursor_min = 0.0;    // min P_B on (0, R)

  static constexpr double kPrecursorEnd = 0.9;
  static constexpr double kPostFrontEnd = 2.0;
};

/// Needs samples in (0, 0.9 R] and [R, 2 R].
CausalityReport causality_report(const FermiParams& params, const std::vector<double>& t_grid);

/// Same as above from P_B values already computed on t_grid.
CausalityReport causality_report(double R, const std::vector<double>& t_grid,
                                 const std::vector<double>& p_b);

/// Wigner-Weisskopf rate 2 pi |g|^2 rho(Omega) for the continuum limit: lambda^2 / Omega.
double golden_rule_rate(const FermiParams& params);

/// (H, projector onto B excited, A excited) as a dichotomy system; dim <= 256.
DichotomySystem fermi_dichotomy_system(const FermiParams& params);

}  // namespace spreadlab
