#include "bvmin/derivation.hpp"

#include <stdexcept>

namespace bvmin {

Derivation derivation_zero(const SpacePtr& s, int cutoff, Parity par) {
  Derivation x;
  x.space = s;
  x.cutoff = cutoff;
  x.par = par;
  x.im.assign(s->dim(), poly_zero(s, cutoff));
  return x;
}

void validate_derivation(const Derivation& x) {
  if (int(x.im.size()) != x.space->dim())
    throw std::invalid_argument("derivation: one image per generator required");
  for (int k = 0; k < x.space->dim(); ++k) {
    require_same_space(x.im[k].space, x.space, "derivation");
    if (x.im[k].cutoff != x.cutoff)
      throw std::invalid_argument("derivation: truncation mismatch");
    if (!parity_compatible(x.im[k], x.par + x.space->parities[k]))
      throw std::invalid_argument("derivation: image parity mismatch at " +
                                  x.space->names[k]);
  }
}

Poly apply_derivation(const Derivation& x, const Poly& f) {
  require_same_space(x.space, f.space, "apply_derivation");
  if (x.cutoff != f.cutoff)
    throw std::invalid_argument("apply_derivation: truncation mismatch");
  Poly r = poly_zero(f.space, f.cutoff);
  const int xp = int(x.par);
  for (auto& [w, c] : f.terms) {
    int prefix_odd = 0;
    for (size_t t = 0; t < w.size(); ++t) {
      const Poly& g = x.im[w[t]];
      if (!g.is_zero()) {
        Rat coeff = (xp && (prefix_odd & 1)) ? Rat(-c) : c;
        Poly piece = poly_term(f.space, f.cutoff, w.substr(0, t), coeff);
        piece = multiply(piece, g);
        piece = multiply(piece, poly_term(f.space, f.cutoff, w.substr(t + 1), Rat(1)));
        r = add(r, piece);
      }
      prefix_odd += f.space->par(w[t]);
    }
  }
  return r;
}

Derivation commutator(const Derivation& x, const Derivation& y) {
  require_same_space(x.space, y.space, "commutator");
  if (x.cutoff != y.cutoff)
    throw std::invalid_argument("commutator: truncation mismatch");
  Derivation r = derivation_zero(x.space, x.cutoff, x.par + y.par);
  const bool both_odd = x.par == Parity::odd && y.par == Parity::odd;
  for (int k = 0; k < x.space->dim(); ++k) {
    Poly a = apply_derivation(x, y.im[k]);
    Poly b = apply_derivation(y, x.im[k]);
    r.im[k] = both_odd ? add(a, b) : sub(a, b);
  }
  return r;
}

Derivation d_add(const Derivation& x, const Derivation& y) {
  require_same_space(x.space, y.space, "d_add");
  if (x.cutoff != y.cutoff) throw std::invalid_argument("d_add: truncation mismatch");
  if (!x.is_zero() && !y.is_zero() && x.par != y.par)
    throw std::invalid_argument("d_add: parity mismatch");
  Derivation r = x.is_zero() ? y : x;
  if (x.is_zero() || y.is_zero()) return r;
  for (int k = 0; k < x.space->dim(); ++k) r.im[k] = add(x.im[k], y.im[k]);
  return r;
}

Derivation d_sub(const Derivation& x, const Derivation& y) {
  return d_add(x, d_scale(y, Rat(-1)));
}

Derivation d_scale(const Derivation& x, const Rat& c) {
  Derivation r = x;
  for (auto& f : r.im) f = scale(f, c);
  return r;
}

bool eq(const Derivation& x, const Derivation& y) {
  require_same_space(x.space, y.space, "eq");
  for (int k = 0; k < x.space->dim(); ++k)
    if (!eq(x.im[k], y.im[k])) return false;
  return true;
}

Derivation lift_differential(const SpacePtr& s, int cutoff) {
  Derivation r = derivation_zero(s, cutoff, Parity::odd);
  for (int k = 0; k < s->dim(); ++k)
    for (int j = 0; j < s->dim(); ++j)
      if (s->d[j][k] != 0)
        r.im[k] = add(r.im[k], scale(poly_gen(s, cutoff, j), s->d[j][k]));
  return r;
}

Poly divergence(const Derivation& x) {
  Poly r = poly_zero(x.space, x.cutoff);
  for (int i = 0; i < x.space->dim(); ++i) {
    if (x.im[i].is_zero()) continue;
    const int pi = x.space->par(i);
    for (auto& [w, c] : x.im[i].terms) {
      Poly one = poly_zero(x.space, x.cutoff);
      one.terms[w] = (pi && word_parity(*x.space, w)) ? Rat(-c) : c;
      r = add(r, partial_left(one, i));
    }
  }
  return r;
}

int min_order(const Derivation& x) {
  int m = x.cutoff + 1;
  for (auto& f : x.im) m = std::min(m, min_word_length(f));
  return m;
}

Derivation exp_ad(const Derivation& x, const Derivation& c) {
  if (min_order(x) < 2)
    throw std::invalid_argument("exp_ad: derivation of order < 2");
  Derivation r = c;
  Derivation term = c;
  Rat fact = 1;
  for (int k = 1; k <= x.cutoff + 1; ++k) {
    term = commutator(x, term);
    if (term.is_zero()) break;
    fact *= k;
    r = d_add(r, d_scale(term, Rat(1) / fact));
  }
  return r;
}

Poly exp_apply(const Derivation& x, const Poly& f) {
  if (min_order(x) < 2)
    throw std::invalid_argument("exp_apply: derivation of order < 2");
  Poly r = f;
  Poly term = f;
  Rat fact = 1;
  for (int k = 1; k <= x.cutoff + 1; ++k) {
    term = apply_derivation(x, term);
    if (term.is_zero()) break;
    fact *= k;
    r = add(r, scale(term, Rat(1) / fact));
  }
  return r;
}

std::string to_string(const Derivation& x) {
  std::string out;
  for (int k = 0; k < x.space->dim(); ++k) {
    if (x.im[k].is_zero()) continue;
    if (!out.empty()) out += "; ";
    out += x.space->names[k] + " -> " + to_string(x.im[k]);
  }
  return out.empty() ? "0" : out;
}

}  // namespace bvmin
