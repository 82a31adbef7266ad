#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bvmin {

using Rat = mpq_class;

// mpq_class does not canonicalize values built from a raw numerator and
// denominator, and arithmetic on non-canonical values stays non-canonical.
// All construction from integers or text goes through these helpers.
inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos)
    throw std::invalid_argument("non-rational literal: " + text);
  Rat q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + text);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace bvmin
