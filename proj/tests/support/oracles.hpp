#pragma once

// Independent reference computations for the unit and acceptance tests.
// Nothing here goes through FFTW or LAPACK.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spreadlab/grid.hpp"

namespace oracle {

using spreadlab::cplx;
using spreadlab::CVector;
using spreadlab::Grid;

/// c_j = dx / sqrt(L) * sum_n psi_n exp(-i k_j x_n), k_j = 2 pi (j - N/2) / L.
inline CVector direct_dft(const Grid& g, const CVector& psi) {
  const std::size_t n = g.n_points();
  const double pi = std::numbers::pi;
  CVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = 2.0 * pi * (static_cast<double>(j) - static_cast<double>(n / 2)) / g.length();
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -0.5 * g.length() + static_cast<double>(i) * g.length() / static_cast<double>(n);
      s += psi[i] * std::polar(1.0, -k * x);
    }
    out[j] = s * g.spacing() / std::sqrt(g.length());
  }
  return out;
}

/// psi_n = 1 / sqrt(L) * sum_j c_j exp(+i k_j x_n).
inline CVector direct_idft(const Grid& g, const CVector& c) {
  const std::size_t n = g.n_points();
  const double pi = std::numbers::pi;
  CVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -0.5 * g.length() + static_cast<double>(i) * g.length() / static_cast<double>(n);
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double k = 2.0 * pi * (static_cast<double>(j) - static_cast<double>(n / 2)) / g.length();
      s += c[j] * std::polar(1.0, k * x);
    }
    out[i] = s / std::sqrt(g.length());
  }
  return out;
}

/// Free evolution by direct sums: transform, phase exp(-i omega(k) t), back.
template <class Omega>
CVector direct_evolve(const Grid& g, const CVector& psi, Omega&& omega, double t) {
  CVector c = direct_dft(g, psi);
  const std::size_t n = g.n_points();
  for (std::size_t j = 0; j < n; ++j) {
    const double k =
        2.0 * std::numbers::pi * (static_cast<double>(j) - static_cast<double>(n / 2)) / g.length();
    c[j] *= std::polar(1.0, -omega(k) * t);
  }
  return direct_idft(g, c);
}

/// dx-weighted inner product <phi, psi>.
inline cplx direct_inner(const Grid& g, const CVector& phi, const CVector& psi) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < phi.size(); ++i) s += std::conj(phi[i]) * psi[i];
  return s * g.spacing();
}

/// Cyclic shift by `steps` samples: out[(i + steps) mod N] = in[i].
inline CVector rotate(const CVector& in, long steps) {
  const long n = static_cast<long>(in.size());
  CVector out(in.size());
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(((i + steps) % n + n) % n)] = in[static_cast<std::size_t>(i)];
  return out;
}

/// exp(A) by scaling and squaring of a truncated Taylor series.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd b = a / std::ldexp(1.0, squarings);
  const Eigen::Index n = a.rows();
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline CVector random_state(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(g.n_points());
  double s = 0.0;
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx{re, im};
    s += std::norm(z);
  }
  const double scale = 1.0 / std::sqrt(s * g.spacing());
  for (auto& z : v) z *= scale;
  return v;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = cplx{re, im};
    }
  }
  return 0.5 * (a + a.adjoint());
}

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
