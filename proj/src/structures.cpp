#include "bvmin/structures.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvmin {

namespace {

Poly length_part(const Poly& f, int n) {
  Poly r = poly_zero(f.space, f.cutoff);
  for (auto& [w, c] : f.terms)
    if (int(w.size()) == n) r.terms[w] = c;
  return r;
}

void report_derivation(McReport& rep, const std::string& family,
                       const Derivation& r) {
  for (int n = 0; n <= r.cutoff; ++n) {
    std::string detail;
    for (int k = 0; k < r.space->dim(); ++k) {
      Poly part = length_part(r.im[k], n);
      if (part.is_zero()) continue;
      if (!detail.empty()) detail += "; ";
      detail += r.space->names[k] + " -> " + to_string(part);
    }
    if (!detail.empty()) rep.residuals.push_back({family, n, detail});
  }
}

// A structure truncated at cutoff N determines function-sector equations only
// below the lengths that would draw on discarded terms, so residual reports
// stop at max_len.
void report_poly(McReport& rep, const std::string& family, const Poly& f,
                 int max_len) {
  for (int n = 0; n <= max_len; ++n) {
    Poly part = length_part(f, n);
    if (!part.is_zero()) rep.residuals.push_back({family, n, to_string(part)});
  }
}

// Run-length product of multiplicities; odd symbols never repeat in a
// canonical word, so this is the evaluation of the derivative chain on it.
long word_norm(const Word& w) {
  long norm = 1;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    for (size_t k = 2; k <= j - i; ++k) norm *= long(k);
    i = j;
  }
  return norm;
}

void check_gauge_param(const LinfStructure& m, const Derivation& xi) {
  require_same_space(xi.space, m.deriv.space, "gauge transform");
  if (xi.cutoff != m.cutoff())
    throw std::invalid_argument("gauge transform: truncation mismatch");
  validate_derivation(xi);
  if (!xi.is_zero() && xi.par != Parity::even)
    throw std::invalid_argument("gauge transform: parameter must be even");
  if (min_order(xi) < 2)
    throw std::invalid_argument("gauge transform: parameter must have order >= 2");
}

}  // namespace

LinfStructure make_linf(const SpacePtr& base, Derivation deriv) {
  require_same_space(deriv.space, coordinate_space(base), "linf structure");
  validate_derivation(deriv);
  if (!deriv.is_zero() && deriv.par != Parity::odd)
    throw std::invalid_argument("linf structure: derivation must be odd");
  if (min_order(deriv) < 2)
    throw std::invalid_argument("linf structure: order must be >= 2");
  return {base, std::move(deriv)};
}

LinfStructure linf_zero(const SpacePtr& base, int cutoff) {
  return {base, derivation_zero(coordinate_space(base), cutoff, Parity::odd)};
}

bool eq(const LinfStructure& a, const LinfStructure& b) {
  if (!same_structure(*a.base, *b.base) || a.cutoff() != b.cutoff()) return false;
  return eq(a.deriv, b.deriv);
}

UnimodularStructure make_unimodular(LinfStructure linf, Poly fn) {
  require_same_space(fn.space, linf.deriv.space, "unimodular structure");
  if (fn.cutoff != linf.cutoff())
    throw std::invalid_argument("unimodular structure: truncation mismatch");
  if (!parity_compatible(fn, Parity::even))
    throw std::invalid_argument("unimodular structure: function part must be even");
  if (min_word_length(fn) < 1)
    throw std::invalid_argument("unimodular structure: constant term not allowed");
  return {std::move(linf), std::move(fn)};
}

bool eq(const UnimodularStructure& a, const UnimodularStructure& b) {
  return eq(a.linf, b.linf) && eq(a.fn, b.fn);
}

QuantumElement make_quantum(PoissonContext ctx, std::vector<Poly> coeffs) {
  ctx.validate();
  if (ctx.kind != Parity::odd)
    throw std::invalid_argument("quantum element: odd context required");
  for (size_t g = 0; g < coeffs.size(); ++g) {
    require_same_space(coeffs[g].space, ctx.space, "quantum element");
    if (coeffs[g].cutoff != coeffs[0].cutoff)
      throw std::invalid_argument("quantum element: truncation mismatch");
    if (!parity_compatible(coeffs[g], Parity::even))
      throw std::invalid_argument("quantum element: coefficients must be even");
    for (auto& [w, c] : coeffs[g].terms)
      if (2 * long(g) + long(w.size()) <= 2)
        throw std::invalid_argument("quantum element: weight must exceed 2");
  }
  return {std::move(ctx), std::move(coeffs)};
}

McReport check_mc_linf(const LinfStructure& m) {
  auto dhat = lift_differential(m.deriv.space, m.cutoff());
  auto r = d_add(commutator(dhat, m.deriv),
                 d_scale(commutator(m.deriv, m.deriv), rat(1, 2)));
  McReport rep;
  report_derivation(rep, "mc", r);
  rep.ok = rep.residuals.empty();
  return rep;
}

McReport check_mc_unimodular(const UnimodularStructure& u) {
  McReport rep = check_mc_linf(u.linf);
  auto dhat = lift_differential(u.linf.deriv.space, u.linf.cutoff());
  Poly r = add(apply_derivation(dhat, u.fn),
               add(scale(divergence(u.linf.deriv), rat(1, 2)),
                   apply_derivation(u.linf.deriv, u.fn)));
  // The divergence ties the length-L part of this equation to order L+1 of the
  // derivation, one step past what the truncation stores, so the last
  // determined length is cutoff-1.
  report_poly(rep, "unimodular", r, u.linf.cutoff() - 1);
  rep.ok = rep.residuals.empty();
  return rep;
}

McReport check_qme(const QuantumElement& q) {
  McReport rep;
  const int top = int(q.coeffs.size()) - 1;
  if (top < 0) return rep;
  const int cutoff = q.coeffs[0].cutoff;
  auto dhat = lift_differential(q.ctx.space, cutoff);
  const int rmax = std::max(top + 1, 2 * top);
  for (int r = 0; r <= rmax; ++r) {
    Poly res = poly_zero(q.ctx.space, cutoff);
    if (r <= top) res = add(res, apply_derivation(dhat, q.coeffs[r]));
    if (r >= 1 && r - 1 <= top)
      res = add(res, bv_laplacian(q.coeffs[r - 1], q.ctx));
    for (int a = 0; a <= std::min(top, r); ++a) {
      int b = r - a;
      if (b > top) continue;
      res = add(res, scale(poisson_bracket(q.coeffs[a], q.coeffs[b], q.ctx),
                           rat(1, 2)));
    }
    // The Laplacian and the bracket drop word length by two, so lengths above
    // cutoff-2 would draw on discarded terms.
    Poly win = poly_zero(q.ctx.space, cutoff);
    for (auto& [w, c] : res.terms)
      if (int(w.size()) + 2 <= cutoff) win.terms[w] = c;
    if (!win.is_zero()) rep.residuals.push_back({"hbar", r, to_string(win)});
  }
  rep.ok = rep.residuals.empty();
  return rep;
}

MultilinearFamily family_zero(const SpacePtr& base, int cutoff) {
  MultilinearFamily fam;
  fam.base = base;
  fam.cutoff = cutoff;
  fam.maps.resize(cutoff + 1);
  return fam;
}

void family_add_symmetric(MultilinearFamily& fam, const Word& tuple, int j,
                          const Rat& c) {
  const int n = int(tuple.size());
  if (n < 2 || n > fam.cutoff)
    throw std::invalid_argument("multilinear family: arity out of range");
  auto shifted = parity_flip(fam.base);
  auto [sw, sg] = normalize_word(*shifted, tuple);
  if (sg == 0) {
    if (c != 0)
      throw std::invalid_argument(
          "multilinear family: nonzero value on a vanishing argument class");
    return;
  }
  if (c == 0) return;
  Rat at_sorted = sg > 0 ? c : Rat(-c);
  Word p = sw;
  do {
    int s2 = normalize_word(*shifted, p).second;
    Rat& slot = fam.maps[n][p][j];
    slot += s2 > 0 ? at_sorted : Rat(-at_sorted);
    if (slot == 0) {
      fam.maps[n][p].erase(j);
      if (fam.maps[n][p].empty()) fam.maps[n].erase(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

MultilinearFamily to_multilinear(const LinfStructure& m) {
  MultilinearFamily fam = family_zero(m.base, m.cutoff());
  const SuperSpace& s = *m.deriv.space;
  for (int j = 0; j < s.dim(); ++j) {
    for (auto& [w, c] : m.deriv.im[j].terms) {
      const int n = int(w.size());
      Rat value = c * word_norm(w);
      Word p = w;
      do {
        int sg = normalize_word(s, p).second;
        fam.maps[n][p][j] = sg > 0 ? value : Rat(-value);
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
  return fam;
}

LinfStructure to_derivation(const MultilinearFamily& fam) {
  auto coords = coordinate_space(fam.base);
  const SuperSpace& s = *coords;
  Derivation out = derivation_zero(coords, fam.cutoff, Parity::odd);
  for (size_t n = 0; n < fam.maps.size(); ++n) {
    if (fam.maps[n].empty()) continue;
    if (n < 2)
      throw std::invalid_argument("multilinear family: arity below 2");
    // Collapse to sorted representatives, then insist the whole orbit is
    // present with Koszul-transported values.
    std::map<Word, std::map<int, Rat>, WordLess> canon;
    for (auto& [w, vals] : fam.maps[n]) {
      auto [sw, sg] = normalize_word(s, w);
      for (auto& [j, v] : vals) {
        if (v == 0) continue;
        if (sg == 0)
          throw std::invalid_argument(
              "multilinear family is not graded symmetric");
        Rat cv = sg > 0 ? v : Rat(-v);
        auto it = canon[sw].find(j);
        if (it == canon[sw].end())
          canon[sw][j] = cv;
        else if (it->second != cv)
          throw std::invalid_argument(
              "multilinear family is not graded symmetric");
      }
    }
    for (auto& [sw, vals] : canon) {
      Word p = sw;
      do {
        int sg = normalize_word(s, p).second;
        auto row = fam.maps[n].find(p);
        for (auto& [j, cv] : vals) {
          Rat want = sg > 0 ? cv : Rat(-cv);
          Rat have = 0;
          if (row != fam.maps[n].end()) {
            auto it = row->second.find(j);
            if (it != row->second.end()) have = it->second;
          }
          if (have != want)
            throw std::invalid_argument(
                "multilinear family is not graded symmetric");
        }
      } while (std::next_permutation(p.begin(), p.end()));
      Rat norm = word_norm(sw);
      for (auto& [j, cv] : vals) add_term(out.im[j], sw, cv / norm);
    }
  }
  return make_linf(fam.base, std::move(out));
}

LinfStructure lie_to_linf(const SpacePtr& base,
                          const std::vector<std::vector<std::vector<Rat>>>& c,
                          int cutoff) {
  const int n = base->dim();
  if (int(c.size()) != n)
    throw std::invalid_argument("lie bracket: table shape mismatch");
  for (auto& row : c) {
    if (int(row.size()) != n)
      throw std::invalid_argument("lie bracket: table shape mismatch");
    for (auto& cell : row)
      if (int(cell.size()) != n)
        throw std::invalid_argument("lie bracket: table shape mismatch");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int j = 0; j < n; ++j) {
        if (c[a][b][j] != 0 &&
            base->par(j) != ((base->par(a) + base->par(b)) & 1))
          throw std::invalid_argument("lie bracket: parity mismatch");
        Rat flip = (base->par(a) && base->par(b)) ? c[b][a][j] : Rat(-c[b][a][j]);
        if (c[a][b][j] != flip)
          throw std::invalid_argument("lie bracket: not graded antisymmetric");
      }
  MultilinearFamily fam = family_zero(base, cutoff);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int j = 0; j < n; ++j) {
        if (c[a][b][j] == 0) continue;
        Rat v = base->par(a) ? Rat(-c[a][b][j]) : c[a][b][j];
        family_add_symmetric(fam, Word{(unsigned char)a, (unsigned char)b}, j, v);
      }
  return to_derivation(fam);
}

LinfStructure gauge_transform_linf(const LinfStructure& m, const Derivation& xi) {
  check_gauge_param(m, xi);
  auto dhat = lift_differential(m.deriv.space, m.cutoff());
  auto moved = exp_ad(xi, d_add(dhat, m.deriv));
  return make_linf(m.base, d_sub(moved, dhat));
}

namespace {

// Pairs (xi, g) model Der x Pi S_{>=1} with g stored unshifted; the action of
// xi on Pi g carries the factor (-1)^{|xi|} from moving the shift through.
struct GaugePair {
  Derivation xi;
  Poly e;

  bool is_zero() const { return xi.is_zero() && e.is_zero(); }
};

GaugePair pair_bracket(const GaugePair& a, int ea, const GaugePair& b, int eb) {
  GaugePair r;
  r.xi = commutator(a.xi, b.xi);
  Poly t1 = apply_derivation(a.xi, b.e);
  if (ea) t1 = neg(t1);
  Poly t2 = apply_derivation(b.xi, a.e);
  if (((ea * eb + eb) & 1) == 0) t2 = neg(t2);
  r.e = add(t1, t2);
  return r;
}

GaugePair pair_dtot(const GaugePair& a, const Derivation& dhat) {
  GaugePair r;
  r.xi = commutator(dhat, a.xi);
  r.e = sub(neg(apply_derivation(dhat, a.e)),
            scale(divergence(a.xi), rat(1, 2)));
  return r;
}

void pair_acc(GaugePair& acc, const GaugePair& t) {
  acc.xi = d_add(acc.xi, t.xi);
  acc.e = add(acc.e, t.e);
}

}  // namespace

UnimodularStructure gauge_transform_unimodular(const UnimodularStructure& u,
                                               const Derivation& xi,
                                               const Poly& g) {
  check_gauge_param(u.linf, xi);
  require_same_space(g.space, u.linf.deriv.space, "gauge transform");
  if (g.cutoff != u.linf.cutoff())
    throw std::invalid_argument("gauge transform: truncation mismatch");
  if (!parity_compatible(g, Parity::odd))
    throw std::invalid_argument("gauge transform: parameter function must be odd");
  if (min_word_length(g) < 1)
    throw std::invalid_argument("gauge transform: constant term not allowed");

  const int cutoff = u.linf.cutoff();
  auto dhat = lift_differential(u.linf.deriv.space, cutoff);
  GaugePair par{xi, g};
  GaugePair mu{u.linf.deriv, u.fn};

  GaugePair acc = mu;
  GaugePair term = mu;
  for (int k = 1; k <= cutoff + 1; ++k) {
    term = pair_bracket(par, 0, term, 1);
    term.xi = d_scale(term.xi, rat(1, k));
    term.e = scale(term.e, rat(1, k));
    if (term.is_zero()) break;
    pair_acc(acc, term);
  }

  GaugePair flow = pair_dtot(par, dhat);
  term = flow;
  for (int k = 1; k <= cutoff + 1; ++k) {
    term = pair_bracket(par, 0, term, 1);
    term.xi = d_scale(term.xi, rat(1, k + 1));
    term.e = scale(term.e, rat(1, k + 1));
    if (term.is_zero()) break;
    pair_acc(flow, term);
  }

  return make_unimodular(make_linf(u.linf.base, d_sub(acc.xi, flow.xi)),
                         sub(acc.e, flow.e));
}

}  // namespace bvmin
