#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spreadlab/errors.hpp"
#include "spreadlab/fourier.hpp"
#include "spreadlab/grid.hpp"
#include "spreadlab/initial_state.hpp"
#include "spreadlab/region.hpp"

using namespace spreadlab;

namespace {

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(1024, 64.0);
  CHECK(g.spacing() * static_cast<double>(g.n_points()) == g.length());
  CHECK(g.x(512) == 0.0);
  CHECK(g.k(512) == 0.0);
  CHECK_THROWS_AS(Grid(1000, 64.0), BadParams);
  CHECK_THROWS_AS(Grid(4, 64.0), BadParams);
  CHECK_THROWS_AS(Grid(64, 0.0), BadParams);
  CHECK_THROWS_AS(Grid(64, -1.0), BadParams);
}

TEST_CASE("momentum lattice is symmetric up to the Nyquist point") {
  const Grid g(64, 10.0);
  const auto k = g.momenta();
  CHECK(k.front() == doctest::Approx(-std::numbers::pi * 64 / 10.0));
  for (std::size_t j = 1; j < 32; ++j) CHECK(k[32 + j] == doctest::Approx(-k[32 - j]).epsilon(1e-15));
}

TEST_CASE("make_state bump has exact zeros and unit norm") {
  const Grid g(1024, 64.0);
  const WaveFunction psi = make_state(Bump{0.0, 1.0}, g);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);
  for (std::size_t i = 0; i < g.n_points(); ++i) {
    if (std::abs(g.x(i)) >= 1.0) CHECK(psi[i] == cplx{0.0, 0.0});
  }
}

TEST_CASE("make_state uniform and gaussian") {
  const Grid g(1024, 64.0);
  const WaveFunction u = make_state(Uniform{Region::interval(-1.0, 1.0)}, g);
  for (std::size_t i = 0; i < g.n_points(); ++i) {
    const double x = g.x(i);
    const double expect = (x >= -1.0 && x < 1.0) ? 1.0 / std::sqrt(2.0) : 0.0;
    CHECK(std::abs(u[i] - expect) <= 1e-15);
  }
  const WaveFunction gs = make_state(Gaussian{0.0, 1.0}, g);
  CHECK(std::abs(gs.norm() - 1.0) <= 1e-12);
}

TEST_CASE("make_state enforces the box margin") {
  const Grid g(1024, 64.0);
  CHECK_NOTHROW(make_state(Bump{15.0, 1.0}, g));
  CHECK_THROWS_AS(make_state(Bump{15.5, 1.0}, g), SpecTooWide);
  CHECK_THROWS_AS(make_state(Gaussian{0.0, 4.0}, g), SpecTooWide);
  CHECK_THROWS_AS(make_state(Exponential{0.0, 0.5}, g), SpecTooWide);
  CHECK_THROWS_AS(make_state(Bump{0.0, -1.0}, g), BadParams);
}

TEST_CASE("translate") {
  const Grid g(256, 32.0);
  const WaveFunction psi = make_state(Bump{0.0, 2.0}, g);

  SUBCASE("zero shift is the identity") {
    const WaveFunction same = translate(psi, 0.0);
    CHECK(max_diff(same.amplitudes(), psi.amplitudes()) == 0.0);
  }
  SUBCASE("lattice shift is an exact rotation") {
    const WaveFunction moved = translate(psi, 3.0 * g.spacing());
    const CVector expect = oracle::rotate(CVector(psi.amplitudes().begin(), psi.amplitudes().end()), 3);
    CHECK(max_diff(moved.amplitudes(), expect) == 0.0);
  }
  SUBCASE("group inverse, spectral mode") {
    const WaveFunction there = translate(psi, 0.37, TranslationMode::spectral);
    const WaveFunction back = translate(there, -0.37, TranslationMode::spectral);
    CHECK(max_diff(back.amplitudes(), psi.amplitudes()) <= 1e-12);
    CHECK(std::abs(there.norm() - 1.0) <= 1e-12);
  }
  SUBCASE("spectral mode agrees with rotation on lattice shifts") {
    const WaveFunction a = translate(psi, 5.0 * g.spacing(), TranslationMode::spectral);
    const WaveFunction b = translate(psi, 5.0 * g.spacing());
    CHECK(max_diff(a.amplitudes(), b.amplitudes()) <= 1e-12);
  }
}

TEST_CASE("inner product") {
  const Grid g(64, 8.0);
  const WaveFunction phi(g, oracle::random_state(g, 1));
  const WaveFunction psi(g, oracle::random_state(g, 2));
  CHECK(std::abs(inner(psi, psi) - 1.0) <= 1e-12);
  CHECK(std::abs(inner(phi, psi) - std::conj(inner(psi, phi))) <= 1e-15);

  const WaveFunction left = make_state(Bump{-1.0, 0.5}, g);
  const WaveFunction right = make_state(Bump{1.0, 0.5}, g);
  CHECK(inner(left, right) == cplx{0.0, 0.0});

  const Grid other(128, 8.0);
  CHECK_THROWS_AS(inner(phi, WaveFunction(other, oracle::random_state(other, 3))), GridMismatch);
}

TEST_CASE("inner product is sesquilinear and positive") {
  const Grid g(32, 4.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CVector a = oracle::random_state(g, 3 * seed);
    const CVector b = oracle::random_state(g, 3 * seed + 1);
    const CVector c = oracle::random_state(g, 3 * seed + 2);
    const cplx alpha{0.3, -1.2}, beta{-0.7, 0.4};
    CVector mix(g.n_points());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = alpha * b[i] + beta * c[i];
    const WaveFunction A(g, a), B(g, b), C(g, c), M(g, mix);
    CHECK(std::abs(inner(A, M) - (alpha * inner(A, B) + beta * inner(A, C))) <= 1e-12);
    CHECK(inner(M, M).real() >= 0.0);
    CHECK(std::abs(inner(M, M).imag()) <= 1e-14);
  }
}

TEST_CASE("transform pair matches the direct sum at N = 8") {
  const Grid g(8, 3.0);
  const CVector psi = oracle::random_state(g, 11);
  const CVector fast = to_momentum(WaveFunction(g, psi));
  const CVector slow = oracle::direct_dft(g, psi);
  CHECK(max_diff(fast, slow) <= 1e-12);
  const WaveFunction back = from_momentum(g, slow);
  CHECK(max_diff(back.amplitudes(), oracle::direct_idft(g, slow)) <= 1e-12);
}

TEST_CASE("plane wave has one coefficient") {
  const Grid g(64, 8.0);
  const std::size_t j0 = 37;
  CVector pw(g.n_points());
  for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = std::polar(1.0 / std::sqrt(g.length()), g.k(j0) * g.x(i));
  const CVector c = to_momentum(WaveFunction(g, pw));
  for (std::size_t j = 0; j < c.size(); ++j) {
    CHECK(std::abs(c[j] - (j == j0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0})) <= 1e-12);
  }
}

TEST_CASE("Parseval and round trip on random states") {
  for (std::size_t n : {8u, 64u, 1024u}) {
    const Grid g(n, 10.0);
    const WaveFunction psi(g, oracle::random_state(g, n));
    const CVector c = to_momentum(psi);
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    CHECK(std::abs(s - psi.norm_squared()) <= 1e-12);
    const WaveFunction back = from_momentum(g, c);
    CHECK(max_diff(back.amplitudes(), psi.amplitudes()) <= 1e-12);
  }
}

TEST_CASE("region validation and snapping") {
  const Grid g(64, 8.0);
  CHECK_THROWS_AS(Region::interval(1.0, 1.0), BadParams);
  CHECK_THROWS_AS(Region({{0.0, 2.0}, {1.0, 3.0}}), BadParams);
  CHECK_THROWS_AS(Region::interval(-5.0, 0.0).index_ranges(g), RegionOutOfBox);
  CHECK_THROWS_AS(Region::interval(0.0, 0.1).check_on(g), BadParams);

  const Region r = Region::interval(0.0, 1.0);
  const auto ranges = r.index_ranges(g);
  REQUIRE(ranges.size() == 1);
  CHECK(ranges[0].first == 32);
  CHECK(ranges[0].second == 40);

  const Region c = r.complement(g);
  const auto mask_r = r.mask(g);
  const auto mask_c = c.mask(g);
  for (std::size_t i = 0; i < g.n_points(); ++i) CHECK(mask_r[i] != mask_c[i]);
}
