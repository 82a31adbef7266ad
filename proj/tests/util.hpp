#pragma once

#include <random>

#include "bvmin/poisson.hpp"

namespace bvmin::testutil {

inline SpacePtr plain_space(std::vector<Parity> parities) {
  std::vector<std::string> names;
  for (size_t i = 0; i < parities.size(); ++i) names.push_back("g" + std::to_string(i));
  return make_space(std::move(names), std::move(parities));
}

// Hand-built double on 2n generators: first n base-side, last n dual-side.
inline PoissonContext test_double(Parity kind, std::vector<Parity> base_parities) {
  int n = int(base_parities.size());
  std::vector<std::string> names;
  std::vector<Parity> par;
  for (int i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i));
    par.push_back(base_parities[i]);
  }
  for (int i = 0; i < n; ++i) {
    names.push_back("y" + std::to_string(i));
    par.push_back(kind == Parity::odd ? base_parities[i] + Parity::odd
                                      : base_parities[i]);
  }
  PoissonContext ctx;
  ctx.space = make_space(std::move(names), std::move(par));
  ctx.kind = kind;
  ctx.partner.resize(2 * n);
  ctx.side.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    ctx.partner[i] = n + i;
    ctx.partner[n + i] = i;
    ctx.side[i] = 0;
    ctx.side[n + i] = 1;
  }
  ctx.validate();
  return ctx;
}

// Random odd square-zero differential: non-sink generators map into sinks.
inline SpacePtr random_dg_space(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<std::string> names;
  std::vector<Parity> par;
  for (int i = 0; i < n; ++i) {
    names.push_back("g" + std::to_string(i));
    par.push_back(bit(rng) ? Parity::odd : Parity::even);
  }
  std::vector<int> sink(n);
  for (int i = 0; i < n; ++i) sink[i] = bit(rng);
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 0; k < n; ++k)
    if (!sink[k])
      for (int j = 0; j < n; ++j)
        if (sink[j] && par[j] != par[k]) d[j][k] = Rat(coeff(rng));
  return make_space(names, par, d);
}

inline SpacePtr acyclic_base() {
  return make_space({"a", "b"}, {Parity::even, Parity::odd},
                    {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
}

inline Poly random_poly(std::mt19937_64& rng, const SpacePtr& s, int cutoff,
                        int max_len, bool allow_const = true) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> gen(0, s->dim() - 1);
  std::uniform_int_distribution<int> len(allow_const ? 0 : 1, max_len);
  std::uniform_int_distribution<int> terms(1, 4);
  Poly p = poly_zero(s, cutoff);
  int nt = terms(rng);
  for (int t = 0; t < nt; ++t) {
    Word w;
    int l = len(rng);
    for (int i = 0; i < l; ++i) w.push_back((unsigned char)gen(rng));
    p = add(p, poly_term(s, cutoff, w, Rat(coeff(rng))));
  }
  return p;
}

inline Poly random_homog_poly(std::mt19937_64& rng, const SpacePtr& s, int cutoff,
                              int max_len, Parity want) {
  for (int tries = 0; tries < 200; ++tries) {
    Poly p = random_poly(rng, s, cutoff, max_len, want == Parity::even);
    Poly q = poly_zero(s, cutoff);
    for (auto& [w, c] : p.terms)
      if (word_parity(*s, w) == int(want)) add_term(q, w, c);
    if (!q.is_zero()) return q;
  }
  return poly_zero(s, cutoff);
}

inline Derivation random_derivation(std::mt19937_64& rng, const SpacePtr& s, int cutoff,
                                    Parity par, int min_len = 0, int max_len = 3) {
  Derivation x = derivation_zero(s, cutoff, par);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> gen(0, s->dim() - 1);
  std::uniform_int_distribution<int> len(min_len, max_len);
  for (int k = 0; k < s->dim(); ++k) {
    Parity want = par + s->parities[k];
    for (int t = 0; t < 2; ++t) {
      Word w;
      int l = len(rng);
      for (int i = 0; i < l; ++i) w.push_back((unsigned char)gen(rng));
      if (word_parity(*s, w) != int(want)) continue;
      x.im[k] = add(x.im[k], poly_term(s, cutoff, w, Rat(coeff(rng))));
    }
  }
  return x;
}

}  // namespace bvmin::testutil
