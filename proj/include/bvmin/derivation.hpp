#pragma once

#include "bvmin/poly.hpp"

namespace bvmin {

// Derivation of the truncated symmetric algebra, stored by generator images.
struct Derivation {
  SpacePtr space;
  int cutoff = 0;
  Parity par = Parity::even;
  std::vector<Poly> im;

  bool is_zero() const {
    for (auto& f : im)
      if (!f.is_zero()) return false;
    return true;
  }
};

Derivation derivation_zero(const SpacePtr& s, int cutoff, Parity par);
void validate_derivation(const Derivation& x);

Poly apply_derivation(const Derivation& x, const Poly& f);
Derivation commutator(const Derivation& x, const Derivation& y);

Derivation d_add(const Derivation& x, const Derivation& y);
Derivation d_sub(const Derivation& x, const Derivation& y);
Derivation d_scale(const Derivation& x, const Rat& c);
bool eq(const Derivation& x, const Derivation& y);

// The space's differential as an order-1 odd derivation: x_k |-> sum_j d[j][k] x_j.
Derivation lift_differential(const SpacePtr& s, int cutoff);

// nabla(f_i d/dx_i) = sum (-1)^{|f_i||x_i|} dx_i(f_i), applied per monomial.
Poly divergence(const Derivation& x);

// Minimum image word length; cutoff+1 for the zero derivation.
int min_order(const Derivation& x);

// e^{ad_x}(c); requires min_order(x) >= 2 so the series terminates.
Derivation exp_ad(const Derivation& x, const Derivation& c);

// e^x applied to a polynomial; same order requirement.
Poly exp_apply(const Derivation& x, const Poly& f);

std::string to_string(const Derivation& x);

}  // namespace bvmin
