#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bvmin/rational.hpp"

namespace bvmin {

enum class Parity : int { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return Parity((int(a) + int(b)) & 1);
}
inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

// A finite-dimensional super vector space with an odd square-zero differential.
// d[j][k] is the coefficient of generator j in d(generator k); the matrix acts
// directly on the stored generators, whichever space (V, V*, PiV*, a double)
// they span.
struct SuperSpace {
  std::vector<std::string> names;
  std::vector<Parity> parities;
  std::vector<std::vector<Rat>> d;

  int dim() const { return int(names.size()); }
  int par(int k) const { return int(parities[k]); }
  int find(const std::string& name) const;
  bool zero_differential() const;
  void validate() const;
};

using SpacePtr = std::shared_ptr<const SuperSpace>;

SpacePtr make_space(std::vector<std::string> names, std::vector<Parity> parities,
                    std::vector<std::vector<Rat>> d);
SpacePtr make_space(std::vector<std::string> names, std::vector<Parity> parities);

// Flips every parity, keeping the matrix.
SpacePtr parity_flip(const SpacePtr& s);

// Dual generators (names suffixed *), same parities, (d*f)(v) = -(-1)^{|f|} f(dv).
SpacePtr dual_space(const SpacePtr& s);

// Coordinate space of functions on PiV: one symbol per generator of V, parity
// |v|+1, differential -(-1)^{|x_k|} D^T acting on the symbols.
SpacePtr coordinate_space(const SpacePtr& v);

// Inverts coordinate_space: the space whose functions the given symbols are.
SpacePtr underlying_space(const SpacePtr& w);

bool same_structure(const SuperSpace& a, const SuperSpace& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

}  // namespace bvmin
