#include "bvmin/wick.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "bvmin/poisson.hpp"

namespace bvmin {

namespace {

// Recursive evaluator for Gaussian moments of monomials. A word is handled
// letter by letter from the left: the leading letter either passes through
// to the small space or contracts with a later letter, picking up the Koszul
// sign for the letters it jumps over. Results are cached per word and graded
// by how many pairs were contracted.
struct MomentTable {
  const LagrangianData& lag;
  SpacePtr big;
  SpacePtr small;
  int cutoff;
  std::vector<Poly> pass;
  std::map<Word, std::vector<Poly>, WordLess> cache;

  MomentTable(const LagrangianData& l, int cut)
      : lag(l), big(l.dbl.total()), small(l.hdbl.total()), cutoff(cut) {
    int n = big->dim();
    int m = small->dim();
    for (int a = 0; a < n; ++a) {
      Poly g = poly_zero(small, cutoff);
      for (int t = 0; t < m; ++t)
        if (lag.sdr.i[a][t] != 0)
          g = add(g, scale(poly_gen(small, cutoff, t), lag.sdr.i[a][t]));
      pass.push_back(g);
    }
  }

  const std::vector<Poly>& eval(const Word& w) {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    std::vector<Poly> acc;
    if (w.empty()) {
      acc.push_back(poly_const(small, cutoff, Rat(1)));
    } else {
      int a = w[0];
      Word rest(w.begin() + 1, w.end());
      const std::vector<Poly>& tail = eval(rest);
      if (!pass[a].is_zero()) {
        acc.reserve(tail.size());
        for (const Poly& part : tail) acc.push_back(multiply(pass[a], part));
      }
      int jumped = 0;
      for (size_t j = 0; j < rest.size(); ++j) {
        int b = rest[j];
        if (lag.prop[a][b] != 0) {
          Rat val = lag.prop[a][b];
          if ((jumped & 1) && big->par(b)) val = -val;
          Word rem = rest;
          rem.erase(rem.begin() + j);
          const std::vector<Poly>& sub = eval(rem);
          if (acc.size() < sub.size() + 1)
            acc.resize(sub.size() + 1, poly_zero(small, cutoff));
          for (size_t c = 0; c < sub.size(); ++c)
            acc[c + 1] = add(acc[c + 1], scale(sub[c], val));
        }
        jumped += big->par(b);
      }
      if (acc.empty()) acc.push_back(poly_zero(small, cutoff));
    }
    return cache.emplace(w, std::move(acc)).first->second;
  }
};

}  // namespace

std::vector<Poly> wick_by_contractions(const Poly& f, const LagrangianData& lag) {
  require_same_space(f.space, lag.dbl.total(), "wick_by_contractions");
  MomentTable table(lag, f.cutoff);
  std::vector<Poly> out{poly_zero(table.small, f.cutoff)};
  for (const auto& [w, c] : f.terms) {
    const std::vector<Poly>& parts = table.eval(w);
    if (out.size() < parts.size())
      out.resize(parts.size(), poly_zero(table.small, f.cutoff));
    for (size_t k = 0; k < parts.size(); ++k)
      out[k] = add(out[k], scale(parts[k], c));
  }
  return out;
}

Poly wick_integral(const Poly& f, const LagrangianData& lag) {
  std::vector<Poly> parts = wick_by_contractions(f, lag);
  Poly out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) out = add(out, parts[k]);
  return out;
}

McReport check_bv_stokes(const Poly& f, const LagrangianData& lag) {
  require_same_space(f.space, lag.dbl.total(), "check_bv_stokes");
  const PoissonContext& ctx = lag.dbl.ctx;
  // Conjugating Delta by the Gaussian weight leaves a polynomial of degree
  // two in 1/hbar; the room below the cutoff keeps its coefficients exact.
  int cut = f.cutoff + 4;
  Poly ff = truncate(f, cut);
  Poly sg = truncate(lag.sigma, cut);
  Poly df = bv_laplacian(ff, ctx);
  Poly dsf = bv_laplacian(multiply(sg, ff), ctx);
  Poly dssf = bv_laplacian(multiply(sg, multiply(sg, ff)), ctx);
  std::vector<Poly> coef(3, poly_zero(ff.space, cut));
  coef[0] = df;
  coef[1] = sub(dsf, multiply(sg, df));
  coef[2] = add(sub(scale(dssf, rat(1, 2)), multiply(sg, dsf)),
                scale(multiply(sg, multiply(sg, df)), rat(1, 2)));

  std::vector<std::vector<Poly>> graded;
  graded.reserve(coef.size());
  for (const Poly& c : coef) graded.push_back(wick_by_contractions(c, lag));
  std::vector<Poly> moments = wick_by_contractions(ff, lag);
  int top = std::max(int(moments.size()), 0);
  for (const auto& parts : graded) top = std::max(top, int(parts.size()));

  McReport rep;
  for (int t = -2; t < top; ++t) {
    Poly r = poly_zero(lag.hdbl.total(), cut);
    Rat u(1);
    for (int i = 0; i < int(coef.size()); ++i) {
      int idx = t + i;
      if (idx >= 0 && idx < int(graded[i].size()))
        r = add(r, scale(graded[i][idx], u));
      u *= rat(-1, 2);
    }
    if (t >= 0 && t < int(moments.size()))
      r = sub(r, bv_laplacian(moments[t], lag.hdbl.ctx));
    if (!r.is_zero()) {
      rep.ok = false;
      rep.residuals.push_back({"stokes", t, to_string(r)});
    }
  }
  return rep;
}

}  // namespace bvmin
