#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fermi.hpp"
#include "spreadlab/linalg.hpp"

using namespace spreadlab;

namespace {

std::vector<double> times(double a, double b, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

FermiParams small_params() {
  FermiParams p;
  p.omega_atom = 0.2;
  p.lambda = 0.3;
  p.n_modes = 8;
  p.k_max = std::numbers::pi * 8.0 / 80.0;
  return p;
}

}  // namespace

TEST_CASE("mode bookkeeping and Hermiticity") {
  const FermiParams p;
  const auto ks = active_modes(p);
  // |k| <= 40 with spacing 2 pi / 80, zero mode excluded.
  const long per_side = static_cast<long>(std::floor(40.0 * 80.0 / (2.0 * std::numbers::pi)));
  CHECK(static_cast<long>(ks.size()) == 2 * per_side);
  CHECK(std::is_sorted(ks.begin(), ks.end()));
  for (double k : ks) CHECK(k != 0.0);

  const Eigen::MatrixXcd h = build_hamiltonian(p);
  CHECK(h.rows() == static_cast<Eigen::Index>(ks.size()) + 2);
  CHECK(hermiticity_defect(h) <= 1e-15);
  CHECK(h(0, 1) == cplx{0.0, 0.0});
  const double g = p.lambda / std::sqrt(2.0 * std::abs(ks[0]) * p.field_length);
  CHECK(std::abs(h(0, 2) - g) <= 1e-15);
  CHECK(std::abs(h(1, 2) - g * std::polar(1.0, ks[0] * p.R)) <= 1e-15);
}

TEST_CASE("uncoupled atoms only pick up a phase") {
  FermiParams p = small_params();
  p.lambda = 0.0;
  const Eigen::MatrixXcd h = build_hamiltonian(p);
  CHECK((h - Eigen::MatrixXcd(h.diagonal().asDiagonal())).norm() == 0.0);
  const auto ts = times(0.0, 20.0, 41);
  const auto states = evolve_fermi(p, ts);
  for (const auto& s : states) {
    CHECK(std::abs(s.c_A - std::polar(1.0, -p.omega_atom * s.t)) <= 1e-14);
    CHECK(s.c_B == cplx{0.0, 0.0});
  }
  const CausalityReport rep = causality_report(p, ts);
  CHECK(rep.precursor_max == 0.0);
  CHECK(rep.post_front_max == 0.0);
  CHECK(rep.ratio == 0.0);
  CHECK(rep.precursor_min == 0.0);
}

TEST_CASE("evolution matches the matrix-exponential oracle") {
  const FermiParams p = small_params();
  const Eigen::MatrixXcd h = build_hamiltonian(p);
  REQUIRE(h.rows() == 10);
  for (ExcitedAtom start : {ExcitedAtom::A, ExcitedAtom::B}) {
    const Eigen::Index s = start == ExcitedAtom::A ? 0 : 1;
    const auto ts = std::vector<double>{0.0, 1.5, 7.0, 19.0};
    const auto states = evolve_fermi(p, ts, start);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Eigen::VectorXcd ref = oracle::expm(cplx{0.0, -ts[i]} * h).col(s);
      CHECK(std::abs(states[i].c_A - ref(0)) <= 1e-12);
      CHECK(std::abs(states[i].c_B - ref(1)) <= 1e-12);
      for (std::size_t m = 0; m < states[i].c_k.size(); ++m) {
        CHECK(std::abs(states[i].c_k[m] - ref(static_cast<Eigen::Index>(m) + 2)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("norm conservation and A/B mirror symmetry") {
  FermiParams p;
  p.n_modes = 512;
  p.k_max = 20.0;
  const auto ts = times(0.0, 20.0, 81);
  const auto from_a = evolve_fermi(p, ts, ExcitedAtom::A);
  const auto from_b = evolve_fermi(p, ts, ExcitedAtom::B);
  const auto pa_a = excitation_probability_A(from_a);
  const auto pb_a = excitation_probability_B(from_a);
  const auto pa_b = excitation_probability_A(from_b);
  const auto pb_b = excitation_probability_B(from_b);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(std::abs(from_a[i].norm_squared() - 1.0) <= 1e-12);
    CHECK(std::abs(pa_a[i] - pb_b[i]) <= 1e-12);
    CHECK(std::abs(pb_a[i] - pa_b[i]) <= 1e-12);
  }
}

TEST_CASE("isolated atom decays at the golden-rule rate") {
  FermiParams p;
  p.lambda = 1.0;
  p.b_coupled = false;
  const double gamma = golden_rule_rate(p);
  CHECK(gamma == doctest::Approx(0.1));
  const auto ts = times(0.0, 30.0, 121);
  const auto pa = excitation_probability_A(evolve_fermi(p, ts));
  double worst = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double expect = std::exp(-gamma * ts[i]);
    worst = std::max(worst, std::abs(pa[i] - expect) / expect);
    sx += ts[i];
    sy += std::log(pa[i]);
    sxx += ts[i] * ts[i];
    sxy += ts[i] * std::log(pa[i]);
  }
  const double n = static_cast<double>(ts.size());
  const double fitted = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(worst <= 0.10);
  CHECK(std::abs(fitted - gamma) / gamma <= 0.05);
}

TEST_CASE("causality report") {
  SUBCASE("front sits at R") {
    FermiParams p;
    p.n_modes = 512;
    p.k_max = 20.0;
    const auto rep = causality_report(p, times(0.0, 20.0, 201));
    CHECK(rep.front_time == 10.0);
    CHECK(rep.post_front_max > rep.precursor_max);
    p.R = 20.0;
    const auto far = causality_report(p, times(0.0, 40.0, 201));
    CHECK(far.front_time == 20.0);
  }
  SUBCASE("window checks") {
    CHECK_THROWS_AS(causality_report(10.0, {0.0, 5.0}, {0.0, 0.0}), BadParams);
    CHECK_THROWS_AS(causality_report(10.0, {12.0, 15.0}, {0.0, 0.0}), BadParams);
    CHECK_THROWS_AS(causality_report(10.0, {1.0, 15.0}, {0.0}), BadParams);
    const auto rep = causality_report(10.0, {0.0, 5.0, 9.5, 12.0, 30.0}, {0.0, 0.1, 0.5, 0.4, 0.9});
    CHECK(rep.precursor_max == 0.1);
    CHECK(rep.post_front_max == 0.4);
    CHECK(rep.precursor_min == 0.1);
    CHECK(rep.ratio == doctest::Approx(0.25));
  }
}

TEST_CASE("parameter validation") {
  auto bad = [](auto mutate) {
    FermiParams p;
    mutate(p);
    CHECK_THROWS_AS(p.validate(), BadParams);
  };
  bad([](FermiParams& p) { p.R = 0.0; });
  bad([](FermiParams& p) { p.R = 30.0; });
  bad([](FermiParams& p) { p.omega_atom = -1.0; });
  bad([](FermiParams& p) { p.lambda = -0.1; });
  bad([](FermiParams& p) { p.n_modes = 7; });
  bad([](FermiParams& p) { p.k_max = 200.0; });
  bad([](FermiParams& p) { p.field_length = std::nan(""); });
  CHECK_NOTHROW(FermiParams{}.validate());
}
