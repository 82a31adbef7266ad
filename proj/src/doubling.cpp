#include "bvmin/doubling.hpp"

#include <stdexcept>

namespace bvmin {

namespace {

Poly double_image(const DoubledSpace& dbl, const Derivation& xi, bool twist,
                  const char* where) {
  require_same_space(xi.space, dbl.coords, where);
  const int out = xi.cutoff + 1;
  Poly r = poly_zero(dbl.total(), out);
  for (int k = 0; k < dbl.n(); ++k) {
    if (xi.im[k].is_zero()) continue;
    Poly f = embed_function(dbl, xi.im[k], out);
    if (twist && dbl.coords->par(k) == 0) f = neg(f);
    r = add(r, multiply(f, poly_gen(dbl.total(), out, dbl.n() + k)));
  }
  return r;
}

// Partner letters sort after every coordinate letter, so a single-partner word
// is f y_k with the partner last and no Koszul cost to peel it off.
Derivation halve_image(const DoubledSpace& dbl, const Poly& F, bool twist,
                       const char* where) {
  require_same_space(F.space, dbl.total(), where);
  if (F.cutoff < 1)
    throw std::invalid_argument(std::string(where) + ": cutoff too small");
  auto pc = poly_parity(F);
  if (pc == ParityClass::mixed)
    throw std::invalid_argument(std::string(where) + ": mixed-parity input");
  Parity fpar = (pc == ParityClass::odd) ? Parity::odd : Parity::even;
  Derivation r = derivation_zero(dbl.coords, F.cutoff - 1, fpar + dbl.kind());
  const int n = dbl.n();
  for (auto& [w, c] : F.terms) {
    if (w.empty() || w.back() < n) continue;
    if (w.size() >= 2 && w[w.size() - 2] >= n) continue;
    const int k = int(w.back()) - n;
    Word base(w.begin(), w.end() - 1);
    Rat v = c;
    if (twist && dbl.coords->par(k) == 0) v = -v;
    r.im[k] = add(r.im[k], poly_term(dbl.coords, r.cutoff, base, v));
  }
  return r;
}

Poly restrict_function(const DoubledSpace& dbl, const Poly& F, int cutoff,
                       const char* where) {
  Poly r = poly_zero(dbl.coords, cutoff);
  for (auto& [w, c] : F.terms) {
    for (auto l : w)
      if (int(l) >= dbl.n())
        throw std::invalid_argument(std::string(where) +
                                    ": term outside S(PiV*)");
    if (int(w.size()) > cutoff)
      throw std::invalid_argument(std::string(where) +
                                  ": term beyond the halved truncation");
    add_term(r, w, c);
  }
  return r;
}

void report_lengths(McReport& rep, const std::string& family, const Poly& f) {
  for (int nl = 0; nl <= f.cutoff; ++nl) {
    Poly part = poly_zero(f.space, f.cutoff);
    for (auto& [w, c] : f.terms)
      if (int(w.size()) == nl) part.terms[w] = c;
    if (!part.is_zero())
      rep.residuals.push_back({family, nl, to_string(part)});
  }
}

}  // namespace

DoubledSpace make_double(const SpacePtr& base, Parity kind) {
  DoubledSpace dbl;
  dbl.base = base;
  dbl.coords = coordinate_space(base);
  const int n = base->dim();
  std::vector<std::string> names = dbl.coords->names;
  std::vector<Parity> par = dbl.coords->parities;
  const char* tag = (kind == Parity::even) ? "*" : "'";
  for (int i = 0; i < n; ++i) {
    names.push_back(dbl.coords->names[i] + tag);
    par.push_back(dbl.coords->parities[i] + kind);
  }
  dbl.ctx.kind = kind;
  dbl.ctx.space = make_space(names, par);
  dbl.ctx.partner.assign(2 * n, 0);
  dbl.ctx.side.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    dbl.ctx.partner[i] = n + i;
    dbl.ctx.partner[n + i] = i;
    dbl.ctx.side[n + i] = 1;
  }
  dbl.ctx.validate();

  auto dhat = lift_differential(dbl.coords, 2);
  Poly h = double_image(dbl, dhat, kind == Parity::odd, "make_double");
  Derivation field = hamiltonian_vector_field(h, dbl.ctx);
  std::vector<std::vector<Rat>> d(2 * n, std::vector<Rat>(2 * n, Rat(0)));
  for (int k = 0; k < 2 * n; ++k)
    for (auto& [w, c] : field.im[k].terms) d[w[0]][k] = c;
  dbl.ctx.space = make_space(std::move(names), std::move(par), std::move(d));
  dbl.ctx.validate();
  return dbl;
}

Poly embed_function(const DoubledSpace& dbl, const Poly& f, int cutoff) {
  require_same_space(f.space, dbl.coords, "embed_function");
  if (cutoff < f.cutoff)
    throw std::invalid_argument("embed_function: cutoff shrinks");
  Poly r = poly_zero(dbl.total(), cutoff);
  for (auto& [w, c] : f.terms) add_term(r, w, c);
  return r;
}

Poly double_even(const DoubledSpace& dbl, const Derivation& xi) {
  if (dbl.kind() != Parity::even)
    throw std::invalid_argument("double_even: odd double");
  return double_image(dbl, xi, false, "double_even");
}

Poly double_odd(const DoubledSpace& dbl, const Derivation& xi) {
  if (dbl.kind() != Parity::odd)
    throw std::invalid_argument("double_odd: even double");
  return double_image(dbl, xi, true, "double_odd");
}

QuantumElement double_odd_quantum(const DoubledSpace& dbl,
                                  const UnimodularStructure& u) {
  if (dbl.kind() != Parity::odd)
    throw std::invalid_argument("double_odd_quantum: even double");
  require_same_space(u.linf.base, dbl.base, "double_odd_quantum");
  if (!check_mc_unimodular(u).ok)
    throw std::invalid_argument(
        "double_odd_quantum: input fails its defining equations");
  std::vector<Poly> coeffs;
  coeffs.push_back(double_odd(dbl, u.linf.deriv));
  coeffs.push_back(
      scale(embed_function(dbl, u.fn, u.linf.cutoff() + 1), Rat(2)));
  return make_quantum(dbl.ctx, std::move(coeffs));
}

Derivation halve_even(const DoubledSpace& dbl, const Poly& F) {
  if (dbl.kind() != Parity::even)
    throw std::invalid_argument("halve_even: odd double");
  return halve_image(dbl, F, false, "halve_even");
}

Derivation halve_odd(const DoubledSpace& dbl, const Poly& F) {
  if (dbl.kind() != Parity::odd)
    throw std::invalid_argument("halve_odd: even double");
  return halve_image(dbl, F, true, "halve_odd");
}

UnimodularStructure halve_odd_quantum(const DoubledSpace& dbl,
                                      const QuantumElement& q) {
  if (dbl.kind() != Parity::odd)
    throw std::invalid_argument("halve_odd_quantum: even double");
  require_same_space(q.ctx.space, dbl.total(), "halve_odd_quantum");
  if (q.coeffs.empty())
    throw std::invalid_argument("halve_odd_quantum: empty element");
  for (size_t g = 2; g < q.coeffs.size(); ++g)
    if (!q.coeffs[g].is_zero())
      throw std::invalid_argument("halve_odd_quantum: terms above hbar^1");
  const int n = dbl.n();
  for (auto& [w, c] : q.coeffs[0].terms) {
    int partners = 0;
    for (auto l : w) partners += int(l) >= n;
    if (partners != 1)
      throw std::invalid_argument(
          "halve_odd_quantum: hbar^0 term outside S(PiV*) (x) V");
  }
  Derivation m = halve_odd(dbl, q.coeffs[0]);
  Poly f = poly_zero(dbl.coords, m.cutoff);
  if (q.coeffs.size() >= 2)
    f = scale(restrict_function(dbl, q.coeffs[1], m.cutoff, "halve_odd_quantum"),
              rat(1, 2));
  return make_unimodular(make_linf(dbl.base, std::move(m)), std::move(f));
}

McReport check_divergence_identities(const Derivation& xi) {
  validate_derivation(xi);
  auto base = underlying_space(xi.space);
  McReport rep;
  {
    auto dbl = make_double(base, Parity::even);
    Derivation field = hamiltonian_vector_field(double_even(dbl, xi), dbl.ctx);
    report_lengths(rep, "divergence-even", divergence(field));
  }
  {
    auto dbl = make_double(base, Parity::odd);
    Poly h = double_odd(dbl, xi);
    Derivation field = hamiltonian_vector_field(h, dbl.ctx);
    if (poly_parity(h) == ParityClass::odd) field = d_scale(field, Rat(-1));
    Poly r = sub(divergence(field),
                 scale(embed_function(dbl, divergence(xi), xi.cutoff + 1), Rat(2)));
    report_lengths(rep, "divergence-odd", r);
  }
  rep.ok = rep.residuals.empty();
  return rep;
}

}  // namespace bvmin
