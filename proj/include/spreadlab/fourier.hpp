#pragma once

#include "spreadlab/grid.hpp"

namespace spreadlab {

// Unitary transform pair between the position samples and the centered
// momentum lattice:
//
//   c_j   = dx / sqrt(L) * sum_n psi_n exp(-i k_j x_n)
//   psi_n = 1 / sqrt(L)  * sum_j c_j   exp(+i k_j x_n)
//
// so that sum_j |c_j|^2 = dx * sum_n |psi_n|^2.
CVector to_momentum(const WaveFunction& psi);
WaveFunction from_momentum(const Grid& grid, CVector coeffs);

// Same transforms on a bare component array (used for spinor components).
CVector to_momentum(const Grid& grid, std::span<const cplx> samples);
CVector from_momentum_samples(const Grid& grid, std::span<const cplx> coeffs);

}  // namespace spreadlab
