#pragma once

#include "bvmin/sdr.hpp"

namespace bvmin {

// Moment of the normalized Gaussian on the Lagrangian: factors seen by the
// small space pass through, Lagrangian factors contract in pairs with
// two-point weights, everything else vanishes. The integral of 1 is 1.
Poly wick_integral(const Poly& f, const LagrangianData& lag);

// The same moment split by the number of contracted pairs.
std::vector<Poly> wick_by_contractions(const Poly& f, const LagrangianData& lag);

// Expands Delta(f e^{-sigma/2hbar}) into Gaussian moments and checks, order
// by order in hbar, that its integral equals the small Laplacian of the
// integral of f e^{-sigma/2hbar}. With no homology both sides vanish.
McReport check_bv_stokes(const Poly& f, const LagrangianData& lag);

}  // namespace bvmin
