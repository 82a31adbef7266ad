#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bvmin/superspace.hpp"

namespace bvmin {

// A monomial word: generator indices, canonically sorted ascending. Koszul
// signs from sorting are absorbed into coefficients.
using Word = std::basic_string<unsigned char>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

enum class ParityClass { zero, even, odd, mixed };

// Element of the truncated symmetric algebra on a SuperSpace: finite map from
// canonical words of length <= cutoff to nonzero rationals.
struct Poly {
  SpacePtr space;
  int cutoff = 0;
  std::map<Word, Rat, WordLess> terms;

  bool is_zero() const { return terms.empty(); }
};

int word_parity(const SuperSpace& s, const Word& w);

// Sorts an arbitrary word into canonical form; returns sign 0 if a repeated
// odd generator makes it vanish.
std::pair<Word, int> normalize_word(const SuperSpace& s, const Word& w);

// Merges two canonical words, counting odd-odd crossings.
std::pair<Word, int> merge_words(const SuperSpace& s, const Word& a, const Word& b);

Poly poly_zero(const SpacePtr& s, int cutoff);
Poly poly_const(const SpacePtr& s, int cutoff, const Rat& c);
Poly poly_gen(const SpacePtr& s, int cutoff, int k);
Poly poly_term(const SpacePtr& s, int cutoff, const Word& w, const Rat& c);  // w need not be sorted

void add_term(Poly& p, const Word& w, const Rat& c);  // w canonical, length enforced
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly scale(const Poly& a, const Rat& c);
Poly multiply(const Poly& a, const Poly& b);

bool eq(const Poly& a, const Poly& b);

// Left partial derivative by generator k.
Poly partial_left(const Poly& p, int k);

ParityClass poly_parity(const Poly& p);
bool parity_compatible(const Poly& p, Parity want);

// Algebra morphism determined by generator images (parity-matched).
Poly substitute(const Poly& p, const SpacePtr& target, int target_cutoff,
                const std::vector<Poly>& images);

Poly truncate(const Poly& p, int new_cutoff);

int min_word_length(const Poly& p);  // cutoff+1 when zero

Poly poly_exp(const Poly& f);    // requires no constant term
Poly poly_log1p(const Poly& g);  // log(1+g), g without constant term

std::string to_string(const Poly& p);

}  // namespace bvmin
