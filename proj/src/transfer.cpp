#include "bvmin/transfer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bvmin {

namespace {

struct TaggedLetter {
  int vertex;
  int gen;
};

// Wick sum over one graph: passes are free, a contraction consumes a unit of
// edge multiplicity between the two vertex tags, and every edge must be used
// up by the time the word is empty.
struct GraphWick {
  const LagrangianData& lag;
  SpacePtr big;
  SpacePtr small;
  int cutoff;
  std::vector<Poly> pass;
  std::map<std::pair<int, int>, int> left;

  GraphWick(const LagrangianData& l, int cut)
      : lag(l), big(l.dbl.total()), small(l.hdbl.total()), cutoff(cut) {
    for (int a = 0; a < big->dim(); ++a) {
      Poly f = poly_zero(small, cutoff);
      for (int t = 0; t < small->dim(); ++t)
        if (lag.sdr.i[a][t] != 0)
          f = add(f, scale(poly_gen(small, cutoff, t), lag.sdr.i[a][t]));
      pass.push_back(std::move(f));
    }
  }

  Poly eval(const std::vector<TaggedLetter>& w) {
    if (w.empty()) {
      for (auto& [e, c] : left)
        if (c) return poly_zero(small, cutoff);
      return poly_const(small, cutoff, Rat(1));
    }
    const int tag = w.front().vertex;
    const int a = w.front().gen;
    std::vector<TaggedLetter> rest(w.begin() + 1, w.end());
    Poly acc = poly_zero(small, cutoff);
    if (!pass[a].is_zero()) acc = multiply(pass[a], eval(rest));
    int jumped = 0;
    for (size_t j = 0; j < rest.size(); ++j) {
      const int b = rest[j].gen;
      std::pair<int, int> key(std::min(tag, rest[j].vertex),
                              std::max(tag, rest[j].vertex));
      auto it = left.find(key);
      if (it != left.end() && it->second > 0 && lag.prop[a][b] != 0) {
        Rat val = lag.prop[a][b];
        if ((jumped & 1) && big->par(b)) val = -val;
        --it->second;
        std::vector<TaggedLetter> rem;
        rem.reserve(rest.size() - 1);
        for (size_t k = 0; k < rest.size(); ++k)
          if (k != j) rem.push_back(rest[k]);
        acc = add(acc, scale(eval(rem), val));
        ++it->second;
      }
      jumped += big->par(b);
    }
    return acc;
  }
};

}  // namespace

Poly graph_amplitude(const StableGraph& g, const QuantumElement& q,
                     const LagrangianData& lag, int cutoff) {
  require_same_space(q.ctx.space, lag.dbl.total(), "graph_amplitude");
  if (!graph_valid(g)) throw std::invalid_argument("graph_amplitude: unstable graph");
  const int nv = g.n_vertices();
  Poly total = poly_zero(lag.hdbl.total(), cutoff);

  std::vector<std::vector<std::pair<Word, Rat>>> menu(nv);
  for (int v = 0; v < nv; ++v) {
    const size_t coeff = size_t(g.genus[v]);
    if (coeff >= q.coeffs.size()) return total;
    const int w = g.valence(v);
    for (auto& [word, c] : q.coeffs[coeff].terms)
      if (int(word.size()) == w) menu[v].push_back({word, c});
    if (menu[v].empty()) return total;
  }

  GraphWick wick(lag, cutoff);
  for (auto& e : g.edges)
    ++wick.left[{std::min(e.first, e.second), std::max(e.first, e.second)}];

  std::vector<size_t> pick(nv, 0);
  for (;;) {
    std::vector<TaggedLetter> word;
    Rat coef(1);
    for (int v = 0; v < nv; ++v) {
      auto& [mono, c] = menu[v][pick[v]];
      coef *= c;
      for (auto letter : mono) word.push_back({v, int(letter)});
    }
    total = add(total, scale(wick.eval(word), coef));
    int v = 0;
    while (v < nv && ++pick[v] == menu[v].size()) pick[v++] = 0;
    if (v == nv) break;
  }
  return scale(total, Rat(half_edge_symmetries(g)));
}

QuantumElement rho(const QuantumElement& q, const LagrangianData& lag,
                   int hbar_order, int arity_cutoff) {
  require_same_space(q.ctx.space, lag.dbl.total(), "rho");
  if (hbar_order < 0 || hbar_order > 1)
    throw std::invalid_argument("rho: order must be 0 or 1");
  if (arity_cutoff < 1) throw std::invalid_argument("rho: arity cutoff too small");
  if (!check_qme(q).ok)
    throw std::invalid_argument("rho: input fails the master equation");

  int maxval = 0;
  for (auto& coeff : q.coeffs)
    for (auto& [w, c] : coeff.terms) maxval = std::max(maxval, int(w.size()));

  std::vector<Poly> out(size_t(hbar_order) + 1,
                        poly_zero(lag.hdbl.total(), arity_cutoff));
  for (int n = 1; n <= arity_cutoff; ++n)
    for (int h = 0; h <= hbar_order; ++h)
      for (auto& g : enumerate_graphs(n, h, maxval)) {
        Poly amp = graph_amplitude(g, q, lag, arity_cutoff);
        if (!amp.is_zero())
          out[h] = add(out[h], scale(amp, Rat(1) / Rat(automorphism_order(g))));
      }
  return make_quantum(lag.hdbl.ctx, std::move(out));
}

QuantumElement rho_free_energy(const QuantumElement& q, const LagrangianData& lag,
                               int hbar_order, int arity_cutoff) {
  require_same_space(q.ctx.space, lag.dbl.total(), "rho_free_energy");
  if (hbar_order < 0 || hbar_order > 1)
    throw std::invalid_argument("rho_free_energy: order must be 0 or 1");
  if (arity_cutoff < 1)
    throw std::invalid_argument("rho_free_energy: arity cutoff too small");

  // Every connected diagram that survives the leg cutoff fits under this
  // weight: legs plus twice the edges, edges at most vertices, vertices at
  // most the output weight plus two.
  const int wbig = 3 * arity_cutoff + 6;
  const int phi = wbig / 2 + 1;

  // The free energy is a Laurent polynomial in hbar with powers 0..phi once
  // constants are removed; evaluate at enough scalar points and solve.
  std::vector<Rat> points;
  std::vector<Poly> samples;
  for (int t = 1; int(points.size()) <= phi; ++t) {
    Rat hv(t);
    Poly x = poly_zero(lag.dbl.total(), wbig);
    Rat piece = Rat(1) / hv;
    for (auto& coeff : q.coeffs) {
      x = add(x, scale(truncate(coeff, wbig), piece));
      piece *= hv;
    }
    LagrangianData scaled = lag;
    for (auto& row : scaled.prop)
      for (auto& entry : row) entry *= hv;
    Poly moments = wick_integral(poly_exp(x), scaled);
    Rat vac = Rat(-1);
    auto cit = moments.terms.find(Word());
    if (cit != moments.terms.end()) vac += cit->second;
    if (vac == Rat(-1)) continue;
    Poly rest = moments;
    rest.terms.erase(Word());
    Poly free = poly_log1p(scale(rest, Rat(1) / (Rat(1) + vac)));
    points.push_back(hv);
    samples.push_back(scale(free, hv));
  }

  Mat vander = mat_zero(phi + 1, phi + 1);
  for (int s = 0; s <= phi; ++s) {
    Rat pw(1);
    for (int p = 0; p <= phi; ++p) {
      vander[s][p] = pw;
      pw *= points[s];
    }
  }
  Mat unvander = mat_inverse(vander);

  std::vector<Poly> out;
  for (int h = 0; h <= hbar_order; ++h) {
    Poly r = poly_zero(lag.hdbl.total(), wbig);
    for (int s = 0; s <= phi; ++s)
      if (unvander[h][s] != 0) r = add(r, scale(samples[s], unvander[h][s]));
    out.push_back(truncate(r, arity_cutoff));
  }
  return make_quantum(lag.hdbl.ctx, std::move(out));
}

LinfStructure minimal_model_linf(const LinfStructure& m, const SDRData& sdr,
                                 int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("minimal_model_linf: cutoff too small");
  require_same_space(m.base, sdr.big, "minimal_model_linf");
  if (!check_mc_linf(m).ok)
    throw std::invalid_argument("minimal_model_linf: input fails Maurer-Cartan");
  if (!verify_sdr(sdr).ok)
    throw std::invalid_argument("minimal_model_linf: invalid retract");

  DoubledSpace wbig = make_double(m.base, Parity::even);
  LagrangianData lag = induced_double_sdr(double_sdr(sdr, Parity::even));

  Derivation field = hamiltonian_vector_field(double_even(wbig, m.deriv), wbig.ctx);
  QuantumElement q = make_quantum(lag.dbl.ctx, {double_odd(lag.dbl, field)});
  QuantumElement r = rho(q, lag, 0, cutoff + 1);
  Derivation down = halve_odd(lag.hdbl, r.coeffs[0]);

  // The result must generate the transferred field through the even double;
  // the base rows of such a field carry minus the structure, so read it off
  // there and confirm the partner rows follow.
  DoubledSpace wsmall = make_double(sdr.small, Parity::even);
  const int ns = wsmall.n();
  Derivation eta = derivation_zero(wsmall.coords, down.cutoff, Parity::odd);
  for (int j = 0; j < ns; ++j)
    for (auto& [w, c] : down.im[j].terms) {
      for (auto letter : w)
        if (int(letter) >= ns)
          throw std::logic_error("minimal_model_linf: partner letter in a base image");
      eta.im[j] = add(eta.im[j], poly_term(wsmall.coords, down.cutoff, w, -c));
    }
  Derivation regen =
      hamiltonian_vector_field(double_even(wsmall, eta), wsmall.ctx);
  for (int z = 0; z < 2 * ns; ++z)
    if (regen.im[z].terms != down.im[z].terms)
      throw std::logic_error("minimal_model_linf: transfer is not hamiltonian");

  return make_linf(sdr.small, std::move(eta));
}

UnimodularStructure minimal_model_unimodular(const UnimodularStructure& u,
                                             const SDRData& sdr, int cutoff) {
  if (cutoff < 2)
    throw std::invalid_argument("minimal_model_unimodular: cutoff too small");
  require_same_space(u.linf.base, sdr.big, "minimal_model_unimodular");
  if (!check_mc_unimodular(u).ok)
    throw std::invalid_argument("minimal_model_unimodular: input fails the pair equation");
  if (!verify_sdr(sdr).ok)
    throw std::invalid_argument("minimal_model_unimodular: invalid retract");

  LagrangianData lag = induced_double_sdr(sdr);
  QuantumElement q = double_odd_quantum(lag.dbl, u);
  QuantumElement r = rho(q, lag, 1, cutoff + 1);

  // The extra letter of room only serves the hbar^0 part, where halving eats
  // a partner; function terms at the full width fall outside the output.
  std::erase_if(r.coeffs[1].terms,
                [&](const auto& kv) { return int(kv.first.size()) > cutoff; });
  return halve_odd_quantum(lag.hdbl, r);
}

}  // namespace bvmin
