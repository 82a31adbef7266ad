#pragma once

#include "bvmin/poisson.hpp"

namespace bvmin {

// Homotopy Lie structure on V: an odd derivation of order >= 2 on the
// coordinates of PiV, Maurer-Cartan against the lifted differential.
struct LinfStructure {
  SpacePtr base;
  Derivation deriv;

  int cutoff() const { return deriv.cutoff; }
};

// Pair (m, f) with f even in S_{>=1}, subject to d(f) + nabla(m)/2 + m(f) = 0.
struct UnimodularStructure {
  LinfStructure linf;
  Poly fn;
};

// Even element sum_g hbar^g coeffs[g] over an odd double; every term obeys the
// weight bound 2g + length > 2.
struct QuantumElement {
  PoissonContext ctx;
  std::vector<Poly> coeffs;
};

// Symmetric multilinear maps (PiV)^n -> PiV, 2 <= n <= cutoff. maps[n][w][j]
// is the coefficient of basis vector j in the value on the index tuple w (in
// the given order); entries of one orbit are tied by Koszul symmetry.
struct MultilinearFamily {
  SpacePtr base;
  int cutoff = 0;
  std::vector<std::map<Word, std::map<int, Rat>, WordLess>> maps;
};

struct McResidual {
  std::string family;
  int order = 0;
  std::string detail;
};

struct McReport {
  std::vector<McResidual> residuals;
  bool ok = true;
};

LinfStructure make_linf(const SpacePtr& base, Derivation deriv);
LinfStructure linf_zero(const SpacePtr& base, int cutoff);
bool eq(const LinfStructure& a, const LinfStructure& b);

UnimodularStructure make_unimodular(LinfStructure linf, Poly fn);
bool eq(const UnimodularStructure& a, const UnimodularStructure& b);

QuantumElement make_quantum(PoissonContext ctx, std::vector<Poly> coeffs);

McReport check_mc_linf(const LinfStructure& m);
McReport check_mc_unimodular(const UnimodularStructure& u);
McReport check_qme(const QuantumElement& q);

MultilinearFamily family_zero(const SpacePtr& base, int cutoff);

// Adds c at the tuple and its Koszul transports across the whole orbit.
void family_add_symmetric(MultilinearFamily& fam, const Word& tuple, int j,
                          const Rat& c);

MultilinearFamily to_multilinear(const LinfStructure& m);
LinfStructure to_derivation(const MultilinearFamily& fam);

// Quadratic structure of a super Lie bracket: c[a][b][j] is the coefficient
// of e_j in [e_a, e_b]. The degree shift sends the pair (e_a, e_b) to
// (-1)^{|e_a|} [e_a, e_b]; this is the one place fixing that sign.
LinfStructure lie_to_linf(const SpacePtr& base,
                          const std::vector<std::vector<std::vector<Rat>>>& c,
                          int cutoff);

// m' = e^{xi} (d + m) e^{-xi} - d for even xi of order >= 2.
LinfStructure gauge_transform_linf(const LinfStructure& m, const Derivation& xi);

// Flow of the even pair (xi, g) on (m, f); for xi = 0 it is f + (d + m)(g).
UnimodularStructure gauge_transform_unimodular(const UnimodularStructure& u,
                                               const Derivation& xi,
                                               const Poly& g);

}  // namespace bvmin
