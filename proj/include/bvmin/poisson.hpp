#pragma once

#include "bvmin/derivation.hpp"

namespace bvmin {

// Constant-coefficient Poisson structure of a doubled space, pairing each
// base-side generator with its dual-side partner.
//
// Bracket constants on generators (side 1 = dual copy):
//   even kind: (y_i, x_i) = 1, (x_i, y_i) = -(-1)^{|x_i|}
//   odd kind:  {a, b} = (-1)^{|a|} for either order of a conjugate pair,
// the odd constants being forced by the Laplacian compatibility identity.
struct PoissonContext {
  SpacePtr space;
  Parity kind = Parity::even;
  std::vector<int> partner;
  std::vector<int> side;

  Rat constant(int i, int j) const;
  void validate() const;
};

Poly poisson_bracket(const Poly& f, const Poly& g, const PoissonContext& ctx);

// X_f = (-1)^{|f|} (f, -). Homogeneous f only.
Derivation hamiltonian_vector_field(const Poly& f, const PoissonContext& ctx);

// Delta = sum over conjugate pairs of d/dx . d/dy; odd contexts only.
Poly bv_laplacian(const Poly& f, const PoissonContext& ctx);

}  // namespace bvmin
