#pragma once

#include "bvmin/graphs.hpp"
#include "bvmin/sdr.hpp"
#include "bvmin/structures.hpp"

namespace bvmin {

// Classical tree-sum transfer: leaves carry the inclusion, internal edges the
// homotopy, the root the projection, vertices the operations. Each shape is
// summed over all leaf assignments with their sign and divided by its
// symmetry count.
MultilinearFamily htt_transfer(const MultilinearFamily& fam, const SDRData& sdr,
                               int n_max);

// Generalized Jacobi identities evaluated literally on every basis tuple up
// through the given arity, with the linear term taken from the space itself.
// Shares nothing with the derivation-side validator.
McReport brute_force_mc(const MultilinearFamily& fam, int n_max);

}  // namespace bvmin
