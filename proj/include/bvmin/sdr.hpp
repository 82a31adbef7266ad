#pragma once

#include "bvmin/doubling.hpp"
#include "bvmin/matrix.hpp"
#include "bvmin/structures.hpp"

namespace bvmin {

// Orientation of the Gaussian pairing used by every contraction.
inline constexpr int kPropagatorSign = 1;

// Strong deformation retract big -> small. Matrices follow the differential
// convention: i[j][t] is the coefficient of big generator j in i(small t).
struct SDRData {
  SpacePtr big;
  SpacePtr small;
  Mat i;
  Mat p;
  Mat s;
};

// Chain maps, p i = id, d s + s d = id - i p, and the three side conditions.
McReport verify_sdr(const SDRData& x);

// Retract onto homology representatives: deterministic elimination, zero
// differential on the small space, side conditions exact by construction.
SDRData compute_homology_sdr(const SpacePtr& v);

// Replaces the homotopy of a retract that fails the side conditions with
// one that satisfies them: t = (ds + sd) s (ds + sd), then t d t.
SDRData repair_side_conditions(const SDRData& x);

// The retract (p*, i*, s*) between the dual spaces.
SDRData dual_sdr(const SDRData& x);

// Block retract between the doubles as complexes: the base maps on the first
// half, their transposes on the partners, homotopy sign fixed by checking.
SDRData double_sdr(const SDRData& base, Parity kind);

// Gaussian data on the odd double: the Lagrangian im(s), the quadratic
// weight, and the two-point function of its normalized measure.
struct LagrangianData {
  DoubledSpace dbl;       // odd double of the base
  DoubledSpace hdbl;      // odd double of the small space
  SDRData sdr;            // between the doubles as complexes
  Poly sigma;             // quadratic weight, a function on dbl.total()
  Mat live_row;           // row a: the part of coordinate a seen by the Lagrangian
  Mat prop;               // prop[a][b] = two-point value, letter a left of b
  Mat lag_basis;          // rows span im(s); first the base half, then partners
  Mat conj_basis;         // rows: differential images of lag_basis
};

LagrangianData induced_double_sdr(const SDRData& base);

}  // namespace bvmin
