#pragma once

#include "bvmin/structures.hpp"

namespace bvmin {

// Double of a base space V: coordinate symbols of PiV in the first block,
// conjugate partners (suffixed * for the even pairing, ' for the odd one) in
// the second. The total differential is the Hamiltonian field of the doubled
// base differential.
struct DoubledSpace {
  SpacePtr base;
  SpacePtr coords;
  PoissonContext ctx;

  int n() const { return base->dim(); }
  const SpacePtr& total() const { return ctx.space; }
  Parity kind() const { return ctx.kind; }
};

DoubledSpace make_double(const SpacePtr& base, Parity kind);

// Base functions as functions on the double; letters keep their indices.
Poly embed_function(const DoubledSpace& dbl, const Poly& f, int cutoff);

// f d/dx_i |-> f y_i.
Poly double_even(const DoubledSpace& dbl, const Derivation& xi);

// f d/dx_i |-> (-1)^{|x_i|+1} f y_i; the per-generator twist makes this a
// morphism for the odd bracket.
Poly double_odd(const DoubledSpace& dbl, const Derivation& xi);

// hbar^0 part D_od(m), hbar^1 part 2f; closes the quantum master equation.
QuantumElement double_odd_quantum(const DoubledSpace& dbl,
                                  const UnimodularStructure& u);

// One-sided inverses of the doubles: words with exactly one partner letter
// contribute, everything else projects to zero.
Derivation halve_even(const DoubledSpace& dbl, const Poly& F);
Derivation halve_odd(const DoubledSpace& dbl, const Poly& F);

// Rejects terms outside S(PiV*) (x) V + hbar S(PiV*) instead of dropping them.
UnimodularStructure halve_odd_quantum(const DoubledSpace& dbl,
                                      const QuantumElement& q);

// nabla(X_{D_ev xi}) = 0 and nabla({D_od xi, -}) = 2 nabla(xi), both exact.
McReport check_divergence_identities(const Derivation& xi);

}  // namespace bvmin
