#include "spreadlab/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "spreadlab/errors.hpp"
#include "spreadlab/linalg.hpp"
#include "spreadlab/localization.hpp"

namespace spreadlab {

DichotomySystem::DichotomySystem(Eigen::MatrixXcd hamiltonian, Eigen::MatrixXcd observable,
                                 Eigen::VectorXcd psi0)
    : hamiltonian_(std::move(hamiltonian)),
      observable_(std::move(observable)),
      psi0_(std::move(psi0)) {
  const Eigen::Index n = psi0_.size();
  if (n < 1 || n > kMaxDim) {
    throw BadParams("dichotomy system dimension must be in [1, 256], got " + std::to_string(n));
  }
  if (hamiltonian_.rows() != n || hamiltonian_.cols() != n || observable_.rows() != n ||
      observable_.cols() != n) {
    throw BadParams("H, O and psi0 dimensions disagree");
  }
  if (hermiticity_defect(hamiltonian_) > 1e-12 * std::max(1.0, hamiltonian_.cwiseAbs().maxCoeff())) throw BadParams("H is not Hermitian");
  if (hermiticity_defect(observable_) > 1e-12 * std::max(1.0, observable_.cwiseAbs().maxCoeff())) throw BadParams("O is not Hermitian");
  if (std::abs(psi0_.norm() - 1.0) > 1e-12) throw BadParams("psi0 is not normalized");

  const HermitianEigen o_eig = eigh(observable_);
  if (o_eig.values.minCoeff() < -1e-12) {
    throw NotPositive("observable has eigenvalue " + std::to_string(o_eig.values.minCoeff()) +
                      " < 0");
  }
  o_weights_ = o_eig.values.cwiseMax(0.0);
  observable_bound_ = o_weights_.maxCoeff();

  const HermitianEigen h_eig = eigh(hamiltonian_);
  energies_ = h_eig.values;
  eigvecs_ = h_eig.vectors;
  coeffs_ = eigvecs_.adjoint() * psi0_;
  o_amplitudes_ = o_eig.vectors.adjoint() * eigvecs_ * coeffs_.asDiagonal();
}

Eigen::VectorXcd DichotomySystem::state_at(double t) const {
  Eigen::VectorXcd phased(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) phased(j) = std::polar(1.0, -energies_(j) * t) * coeffs_(j);
  return eigvecs_ * phased;
}

double DichotomySystem::expectation_at(double t) const {
  Eigen::VectorXcd phases(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) phases(j) = std::polar(1.0, -energies_(j) * t);
  const Eigen::VectorXcd amps = o_amplitudes_ * phases;
  return o_weights_.dot(amps.cwiseAbs2());
}

std::vector<double> expectation_scan(const DichotomySystem& sys, const std::vector<double>& t_grid) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw BadParams("t_grid must be ascending");
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(sys.expectation_at(t));
  return out;
}

const char* to_string(Alternative a) {
  return a == Alternative::alternative_i ? "alternative_i" : "alternative_ii";
}

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

ZeroStructure analyze_zeros(const std::vector<double>& t_grid, const std::vector<double>& values,
                            double tol, const BatchEvaluator& evaluate) {
  if (t_grid.size() != values.size()) throw BadParams("t_grid and values differ in length");
  ZeroStructure zs;
  const std::size_t n = t_grid.size();
  if (n < 2) return zs;
  const double coarse = (t_grid.back() - t_grid.front()) / static_cast<double>(n - 1);

  std::size_t i = 0;
  while (i < n) {
    if (values[i] > tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && values[j + 1] <= tol) ++j;

    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = j + 1 < n ? j + 1 : n - 1;
    const std::size_t steps = std::max<std::size_t>(hi - lo, 1);
    const std::vector<double> fine_t = linspace(t_grid[lo], t_grid[hi], 10 * steps + 1);
    const std::vector<double> fine_f = evaluate(fine_t);

    // Longest stretch of refined samples at or below tol.
    double best_len = -1.0;
    double best_lo = 0.0, best_hi = 0.0;
    std::size_t a = 0;
    while (a < fine_t.size()) {
      if (fine_f[a] > tol) {
        ++a;
        continue;
      }
      std::size_t b = a;
      while (b + 1 < fine_t.size() && fine_f[b + 1] <= tol) ++b;
      const double len = fine_t[b] - fine_t[a];
      if (len > best_len) {
        best_len = len;
        best_lo = fine_t[a];
        best_hi = fine_t[b];
      }
      a = b + 1;
    }

    if (best_len >= coarse * (1.0 - 1e-9)) {
      zs.zero_intervals.push_back({best_lo, best_hi});
    } else {
      const auto it = std::min_element(fine_f.begin(), fine_f.end());
      zs.isolated_zeros.push_back(fine_t[static_cast<std::size_t>(it - fine_f.begin())]);
    }
    i = j + 1;
  }
  return zs;
}

DichotomyVerdict classify(const DichotomySystem& sys, double t_begin, double t_end,
                          std::size_t samples) {
  if (samples < 1000) throw BadParams("classify needs at least 1000 samples");
  if (!(t_end > t_begin)) throw BadParams("classify needs t_end > t_begin");
  const double tol = sys.zero_tolerance();
  const auto t_grid = linspace(t_begin, t_end, samples);
  const auto values = expectation_scan(sys, t_grid);

  DichotomyVerdict v;
  v.min_value = *std::min_element(values.begin(), values.end());
  v.max_value = *std::max_element(values.begin(), values.end());

  if (v.max_value <= tol) {
    const auto fine = expectation_scan(sys, linspace(t_begin, t_end, 10 * samples));
    const double fine_max = *std::max_element(fine.begin(), fine.end());
    if (fine_max <= tol) {
      v.classification = Alternative::alternative_ii;
      return v;
    }
    v.max_value = fine_max;
  }

  const ZeroStructure zs = analyze_zeros(
      t_grid, values, tol, [&](const std::vector<double>& ts) { return expectation_scan(sys, ts); });
  if (!zs.zero_intervals.empty()) {
    throw DichotomyViolation("F vanishes on [" + std::to_string(zs.zero_intervals.front().lo) +
                             ", " + std::to_string(zs.zero_intervals.front().hi) +
                             "] without vanishing identically");
  }
  v.classification = Alternative::alternative_i;
  v.zero_times = zs.isolated_zeros;
  return v;
}

double transport_gap(const WaveFunction& psi0, const Region& region) {
  const Grid& grid = psi0.grid();
  std::size_t last = grid.n_points();
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    if (psi0[i] != cplx{0.0, 0.0}) last = i;
  }
  if (last == grid.n_points()) throw BadParams("transported state is identically zero");
  const auto ranges = region.index_ranges(grid);
  return grid.x(ranges.front().first) - grid.x(last);
}

std::vector<double> translation_control(const Grid& grid, const WaveFunction& psi0,
                                        const Region& region, const std::vector<double>& t_grid) {
  require_same_grid(grid, psi0.grid());
  region.check_on(grid);
  if (!(transport_gap(psi0, region) > 0.0)) {
    throw BadParams("translation control needs the region strictly ahead of the support");
  }
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(probability(translate(psi0, t), region));
  return out;
}

namespace {

Eigen::MatrixXcd random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = cplx{re, im};
    }
  }
  return m;
}

Eigen::MatrixXcd positive_hamiltonian(std::mt19937_64& rng, Eigen::Index dim) {
  const Eigen::MatrixXcd a = random_gaussian(rng, dim, dim) / std::sqrt(2.0 * static_cast<double>(dim));
  Eigen::MatrixXcd h = a.adjoint() * a;
  return 0.5 * (h + h.adjoint());
}

Eigen::VectorXcd random_unit(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::VectorXcd v = random_gaussian(rng, dim, 1).col(0);
  return v / v.norm();
}

Eigen::MatrixXcd positive_contraction(std::mt19937_64& rng, Eigen::Index dim) {
  const Eigen::MatrixXcd b = random_gaussian(rng, dim, dim);
  Eigen::MatrixXcd o = b.adjoint() * b;
  o = 0.5 * (o + o.adjoint());
  return o / eigh(o).values.maxCoeff();
}

}  // namespace

DichotomySystem random_system(std::uint64_t seed, Eigen::Index dim, RandomObservable kind) {
  if (dim < 2) throw BadParams("random systems need dim >= 2");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXcd h = positive_hamiltonian(rng, dim);
  // Already >= 0; the shift pins the ground energy at zero.
  h -= eigh(h).values.minCoeff() * Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd o;
  Eigen::VectorXcd psi0 = random_unit(rng, dim);
  switch (kind) {
    case RandomObservable::zero_start_projector: {
      const Eigen::VectorXcd u = random_unit(rng, dim);
      o = u * u.adjoint();
      psi0 -= u * u.dot(psi0);
      psi0 /= psi0.norm();
      break;
    }
    case RandomObservable::positive_contraction:
      o = positive_contraction(rng, dim);
      break;
  }
  return DichotomySystem(h, o, psi0);
}

DichotomySystem block_invariant_system(std::uint64_t seed, Eigen::Index dim) {
  if (dim < 2) throw BadParams("block construction needs dim >= 2");
  std::mt19937_64 rng(seed);
  const Eigen::Index n1 = dim / 2;
  const Eigen::Index n2 = dim - n1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  h.topLeftCorner(n1, n1) = positive_hamiltonian(rng, n1);
  h.bottomRightCorner(n2, n2) = positive_hamiltonian(rng, n2);
  Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(dim, dim);
  o.bottomRightCorner(n2, n2) = positive_contraction(rng, n2);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  psi0.head(n1) = random_unit(rng, n1);
  return DichotomySystem(h, o, psi0);
}

}  // namespace spreadlab
