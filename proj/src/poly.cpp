#include "bvmin/poly.hpp"

#include <stdexcept>

namespace bvmin {

int word_parity(const SuperSpace& s, const Word& w) {
  int p = 0;
  for (unsigned char c : w) p ^= s.par(c);
  return p;
}

std::pair<Word, int> normalize_word(const SuperSpace& s, const Word& w) {
  Word out;
  out.reserve(w.size());
  int sign = 1;
  for (unsigned char c : w) {
    // insertion from the right, counting odd-odd crossings
    int i = int(out.size());
    int odd_crossed = 0;
    while (i > 0 && out[i - 1] > c) {
      odd_crossed += s.par(out[i - 1]);
      --i;
    }
    if (s.par(c) && (odd_crossed & 1)) sign = -sign;
    out.insert(out.begin() + i, c);
  }
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1] && s.par(out[i])) return {Word(), 0};
  return {out, sign};
}

std::pair<Word, int> merge_words(const SuperSpace& s, const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  int odd_left = 0;
  for (unsigned char c : a) odd_left += s.par(c);
  int sign = 1;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      odd_left -= s.par(a[i]);
      out.push_back(a[i++]);
    } else {
      if (s.par(b[j]) && (odd_left & 1)) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  for (size_t k = 1; k < out.size(); ++k)
    if (out[k] == out[k - 1] && s.par(out[k])) return {Word(), 0};
  return {out, sign};
}

Poly poly_zero(const SpacePtr& s, int cutoff) {
  Poly p;
  p.space = s;
  p.cutoff = cutoff;
  return p;
}

Poly poly_const(const SpacePtr& s, int cutoff, const Rat& c) {
  Poly p = poly_zero(s, cutoff);
  if (c != 0) p.terms[Word()] = c;
  return p;
}

Poly poly_gen(const SpacePtr& s, int cutoff, int k) {
  Poly p = poly_zero(s, cutoff);
  if (cutoff >= 1) p.terms[Word(1, (unsigned char)k)] = 1;
  return p;
}

Poly poly_term(const SpacePtr& s, int cutoff, const Word& w, const Rat& c) {
  Poly p = poly_zero(s, cutoff);
  auto [nw, sg] = normalize_word(*s, w);
  if (sg != 0 && c != 0 && int(nw.size()) <= cutoff)
    p.terms[nw] = (sg > 0 ? c : Rat(-c));
  return p;
}

void add_term(Poly& p, const Word& w, const Rat& c) {
  if (c == 0 || int(w.size()) > p.cutoff) return;
  auto it = p.terms.find(w);
  if (it == p.terms.end()) {
    p.terms.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) p.terms.erase(it);
  }
}

static void check_pair(const Poly& a, const Poly& b, const char* where) {
  require_same_space(a.space, b.space, where);
  if (a.cutoff != b.cutoff)
    throw std::invalid_argument(std::string(where) + ": truncation mismatch");
}

Poly add(const Poly& a, const Poly& b) {
  check_pair(a, b, "add");
  Poly r = a;
  for (auto& [w, c] : b.terms) add_term(r, w, c);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  check_pair(a, b, "sub");
  Poly r = a;
  for (auto& [w, c] : b.terms) add_term(r, w, Rat(-c));
  return r;
}

Poly neg(const Poly& a) { return scale(a, Rat(-1)); }

Poly scale(const Poly& a, const Rat& c) {
  Poly r = poly_zero(a.space, a.cutoff);
  if (c == 0) return r;
  for (auto& [w, k] : a.terms) r.terms[w] = k * c;
  return r;
}

Poly multiply(const Poly& a, const Poly& b) {
  check_pair(a, b, "multiply");
  Poly r = poly_zero(a.space, a.cutoff);
  for (auto& [wa, ca] : a.terms) {
    for (auto& [wb, cb] : b.terms) {
      if (int(wa.size() + wb.size()) > r.cutoff) continue;
      auto [w, sg] = merge_words(*a.space, wa, wb);
      if (sg == 0) continue;
      add_term(r, w, sg > 0 ? Rat(ca * cb) : Rat(-ca * cb));
    }
  }
  return r;
}

bool eq(const Poly& a, const Poly& b) {
  check_pair(a, b, "eq");
  return a.terms == b.terms;
}

Poly partial_left(const Poly& p, int k) {
  Poly r = poly_zero(p.space, p.cutoff);
  const int pk = p.space->par(k);
  for (auto& [w, c] : p.terms) {
    int prefix_odd = 0;
    for (size_t t = 0; t < w.size(); ++t) {
      if (w[t] == (unsigned char)k) {
        Word reduced = w;
        reduced.erase(reduced.begin() + t);
        add_term(r, reduced, (pk && (prefix_odd & 1)) ? Rat(-c) : c);
      }
      prefix_odd += p.space->par(w[t]);
    }
  }
  return r;
}

ParityClass poly_parity(const Poly& p) {
  if (p.terms.empty()) return ParityClass::zero;
  int first = -1;
  for (auto& [w, c] : p.terms) {
    int q = word_parity(*p.space, w);
    if (first < 0)
      first = q;
    else if (q != first)
      return ParityClass::mixed;
  }
  return first ? ParityClass::odd : ParityClass::even;
}

bool parity_compatible(const Poly& p, Parity want) {
  auto pc = poly_parity(p);
  if (pc == ParityClass::zero) return true;
  if (pc == ParityClass::mixed) return false;
  return (pc == ParityClass::odd) == (want == Parity::odd);
}

Poly substitute(const Poly& p, const SpacePtr& target, int target_cutoff,
                const std::vector<Poly>& images) {
  if (int(images.size()) != p.space->dim())
    throw std::invalid_argument("substitute: one image per generator required");
  for (int k = 0; k < p.space->dim(); ++k) {
    if (!parity_compatible(images[k], p.space->parities[k]))
      throw std::invalid_argument("substitute: image parity mismatch at " +
                                  p.space->names[k]);
    require_same_space(images[k].space, target, "substitute");
  }
  Poly r = poly_zero(target, target_cutoff);
  for (auto& [w, c] : p.terms) {
    Poly acc = poly_const(target, target_cutoff, c);
    for (unsigned char ch : w) {
      acc = multiply(acc, images[ch]);
      if (acc.is_zero()) break;
    }
    r = add(r, acc);
  }
  return r;
}

Poly truncate(const Poly& p, int new_cutoff) {
  Poly r = poly_zero(p.space, new_cutoff);
  for (auto& [w, c] : p.terms)
    if (int(w.size()) <= new_cutoff) r.terms[w] = c;
  return r;
}

int min_word_length(const Poly& p) {
  if (p.terms.empty()) return p.cutoff + 1;
  return int(p.terms.begin()->first.size());  // map is length-first ordered
}

Poly poly_exp(const Poly& f) {
  if (min_word_length(f) < 1)
    throw std::invalid_argument("poly_exp: constant term present");
  Poly r = poly_const(f.space, f.cutoff, 1);
  Poly pw = poly_const(f.space, f.cutoff, 1);
  Rat fact = 1;
  for (int k = 1; k <= f.cutoff; ++k) {
    pw = multiply(pw, f);
    if (pw.is_zero()) break;
    fact *= k;
    r = add(r, scale(pw, Rat(1) / fact));
  }
  return r;
}

Poly poly_log1p(const Poly& g) {
  if (min_word_length(g) < 1)
    throw std::invalid_argument("poly_log1p: constant term present");
  Poly r = poly_zero(g.space, g.cutoff);
  Poly pw = poly_const(g.space, g.cutoff, 1);
  for (int k = 1; k <= g.cutoff; ++k) {
    pw = multiply(pw, g);
    if (pw.is_zero()) break;
    r = add(r, scale(pw, Rat(k % 2 ? 1 : -1) / k));
  }
  return r;
}

std::string to_string(const Poly& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [w, c] : p.terms) {
    if (!first) out += " + ";
    first = false;
    out += rat_str(c);
    for (unsigned char ch : w) {
      out += ' ';
      out += p.space->names[ch];
    }
  }
  return out;
}

}  // namespace bvmin
