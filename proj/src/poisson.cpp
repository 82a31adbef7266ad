#include "bvmin/poisson.hpp"

#include <stdexcept>

namespace bvmin {

Rat PoissonContext::constant(int i, int j) const {
  if (partner[i] != j) return 0;
  const int pi = space->par(i);
  if (kind == Parity::odd) return pi ? -1 : 1;
  if (side[i] == 1) return 1;
  return pi ? 1 : -1;  // -(-1)^{|x_i|}
}

void PoissonContext::validate() const {
  int n = space->dim();
  if (int(partner.size()) != n || int(side.size()) != n)
    throw std::invalid_argument("poisson context: inconsistent sizes");
  for (int i = 0; i < n; ++i) {
    int j = partner[i];
    if (j < 0 || j >= n || j == i || partner[j] != i)
      throw std::invalid_argument("poisson context: partner map not an involution");
    if (side[i] + side[j] != 1)
      throw std::invalid_argument("poisson context: sides not opposite");
    if (kind == Parity::odd) {
      if (space->par(i) == space->par(j))
        throw std::invalid_argument("poisson context: odd pairing needs opposite parities");
    } else {
      if (space->par(i) != space->par(j))
        throw std::invalid_argument("poisson context: even pairing needs equal parities");
    }
  }
}

Poly poisson_bracket(const Poly& f, const Poly& g, const PoissonContext& ctx) {
  require_same_space(f.space, ctx.space, "poisson_bracket");
  require_same_space(g.space, ctx.space, "poisson_bracket");
  if (f.cutoff != g.cutoff)
    throw std::invalid_argument("poisson_bracket: truncation mismatch");
  const SuperSpace& sp = *ctx.space;
  const int kappa = int(ctx.kind);
  Poly r = poly_zero(f.space, f.cutoff);
  for (auto& [wa, ca] : f.terms) {
    std::vector<int> apre(wa.size() + 1, 0);
    for (size_t t = 0; t < wa.size(); ++t) apre[t + 1] = apre[t] + sp.par(wa[t]);
    const int atot = apre[wa.size()];
    for (auto& [wb, cb] : g.terms) {
      if (wa.empty() || wb.empty()) continue;
      std::vector<int> bpre(wb.size() + 1, 0);
      for (size_t u = 0; u < wb.size(); ++u) bpre[u + 1] = bpre[u] + sp.par(wb[u]);
      for (size_t t = 0; t < wa.size(); ++t) {
        const int pat = sp.par(wa[t]);
        const int asuf = atot - apre[t + 1];
        for (size_t u = 0; u < wb.size(); ++u) {
          Rat cval = ctx.constant(wa[t], wb[u]);
          if (cval == 0) continue;
          const int pbu = sp.par(wb[u]);
          int sexp = (pat + kappa) * bpre[u] + (pbu + kappa) * asuf;
          Word ra = wa;
          ra.erase(ra.begin() + t);
          Word rb = wb;
          rb.erase(rb.begin() + u);
          auto [w, sg] = merge_words(sp, ra, rb);
          if (sg == 0) continue;
          Rat coeff = ca * cb * cval * sg;
          if (sexp & 1) coeff = -coeff;
          add_term(r, w, coeff);
        }
      }
    }
  }
  return r;
}

Derivation hamiltonian_vector_field(const Poly& f, const PoissonContext& ctx) {
  require_same_space(f.space, ctx.space, "hamiltonian_vector_field");
  auto pc = poly_parity(f);
  if (pc == ParityClass::mixed)
    throw std::invalid_argument("hamiltonian_vector_field: mixed-parity hamiltonian");
  Parity fp = (pc == ParityClass::odd) ? Parity::odd : Parity::even;
  Derivation x = derivation_zero(ctx.space, f.cutoff, fp + ctx.kind);
  if (pc == ParityClass::zero) return x;
  const Rat sign = (fp == Parity::odd) ? -1 : 1;
  for (int j = 0; j < ctx.space->dim(); ++j)
    x.im[j] = scale(poisson_bracket(f, poly_gen(ctx.space, f.cutoff, j), ctx), sign);
  return x;
}

Poly bv_laplacian(const Poly& f, const PoissonContext& ctx) {
  require_same_space(f.space, ctx.space, "bv_laplacian");
  if (ctx.kind != Parity::odd)
    throw std::invalid_argument("bv_laplacian: even context rejected");
  Poly r = poly_zero(f.space, f.cutoff);
  for (int i = 0; i < ctx.space->dim(); ++i)
    if (ctx.side[i] == 0)
      r = add(r, partial_left(partial_left(f, ctx.partner[i]), i));
  return r;
}

}  // namespace bvmin
