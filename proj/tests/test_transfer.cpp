#include "bvmin/transfer.hpp"

#include <random>

#include "doctest.h"
#include "util.hpp"

using namespace bvmin;
using namespace bvmin::testutil;

namespace {

SpacePtr sl2_space() {
  return make_space({"e", "f", "h"},
                    {Parity::even, Parity::even, Parity::even});
}

LinfStructure sl2_structure(int cutoff) {
  auto v = sl2_space();
  std::vector<std::vector<std::vector<Rat>>> c(
      3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
  c[2][0][0] = 2;   // [h, e] = 2e
  c[0][2][0] = -2;
  c[2][1][1] = -2;  // [h, f] = -2f
  c[1][2][1] = 2;
  c[0][1][2] = 1;   // [e, f] = h
  c[1][0][2] = -1;
  return lie_to_linf(v, c, cutoff);
}

LinfStructure random_mc(std::mt19937_64& rng, const SpacePtr& base, int cutoff) {
  auto xi = random_derivation(rng, coordinate_space(base), cutoff,
                              Parity::even, 2, 3);
  return gauge_transform_linf(linf_zero(base, cutoff), xi);
}

UnimodularStructure random_pair(std::mt19937_64& rng, const SpacePtr& base,
                                int cutoff) {
  auto coords = coordinate_space(base);
  auto xi = random_derivation(rng, coordinate_space(base), cutoff,
                              Parity::even, 2, 3);
  Poly g = random_homog_poly(rng, coords, cutoff, 2, Parity::odd);
  g.terms.erase(Word());
  auto zero = make_unimodular(linf_zero(base, cutoff), poly_zero(coords, cutoff));
  return gauge_transform_unimodular(zero, xi, g);
}

}  // namespace

TEST_CASE("a vanishing differential restricts the element to homology") {
  auto m = sl2_structure(4);
  UnimodularStructure u = make_unimodular(m, poly_zero(m.deriv.space, 4));
  REQUIRE(check_mc_unimodular(u).ok);
  LagrangianData lag = induced_double_sdr(compute_homology_sdr(m.base));
  QuantumElement q = double_odd_quantum(lag.dbl, u);
  QuantumElement r = rho(q, lag, 1, 5);
  CHECK(r.coeffs[0].terms == q.coeffs[0].terms);
  CHECK(r.coeffs[1].terms == q.coeffs[1].terms);

  // a pure hbar part restricts the same way
  auto flat = plain_space({Parity::even, Parity::odd, Parity::even});
  auto coords = coordinate_space(flat);
  Poly f = poly_term(coords, 3, Word{1}, Rat(3));
  f = add(f, poly_term(coords, 3, Word{0, 2}, Rat(2)));
  UnimodularStructure uf = make_unimodular(linf_zero(flat, 3), f);
  REQUIRE(check_mc_unimodular(uf).ok);
  LagrangianData lagf = induced_double_sdr(compute_homology_sdr(flat));
  QuantumElement qf = double_odd_quantum(lagf.dbl, uf);
  QuantumElement rf = rho(qf, lagf, 1, 4);
  CHECK(rf.coeffs[0].is_zero());
  CHECK(rf.coeffs[1].terms == qf.coeffs[1].terms);
}

TEST_CASE("the acyclic double integrates to zero") {
  std::mt19937_64 rng(977);
  auto base = acyclic_base();
  for (int trial = 0; trial < 4; ++trial) {
    UnimodularStructure u = random_pair(rng, base, 4);
    REQUIRE(check_mc_unimodular(u).ok);
    LagrangianData lag = induced_double_sdr(compute_homology_sdr(base));
    QuantumElement q = double_odd_quantum(lag.dbl, u);
    QuantumElement r = rho(q, lag, 1, 5);
    CHECK(r.coeffs[0].is_zero());
    CHECK(r.coeffs[1].is_zero());
  }
}

TEST_CASE("the master equation survives the integral") {
  std::mt19937_64 rng(1201);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto base = random_dg_space(rng, 2 + int(rng() % 3));
    UnimodularStructure u = random_pair(rng, base, 4);
    if (u.linf.deriv.is_zero() && u.fn.is_zero()) continue;
    LagrangianData lag = induced_double_sdr(compute_homology_sdr(base));
    QuantumElement q = double_odd_quantum(lag.dbl, u);
    QuantumElement r = rho(q, lag, 1, 5);
    CHECK(check_qme(r).ok);
    ++checked;
  }
  CHECK(checked >= 6);
}

TEST_CASE("the free energy route agrees with the graph sum") {
  std::mt19937_64 rng(355);
  std::vector<SpacePtr> bases = {acyclic_base(), sl2_space(),
                                 random_dg_space(rng, 3)};
  for (auto& base : bases) {
    UnimodularStructure u = base == bases[1]
                                ? make_unimodular(sl2_structure(4),
                                                  poly_zero(sl2_structure(4).deriv.space, 4))
                                : random_pair(rng, base, 4);
    REQUIRE(check_mc_unimodular(u).ok);
    LagrangianData lag = induced_double_sdr(compute_homology_sdr(base));
    QuantumElement q = double_odd_quantum(lag.dbl, u);
    QuantumElement a = rho(q, lag, 1, 4);
    QuantumElement b = rho_free_energy(q, lag, 1, 4);
    CHECK(a.coeffs[0].terms == b.coeffs[0].terms);
    CHECK(a.coeffs[1].terms == b.coeffs[1].terms);
  }
}

TEST_CASE("transfer reproduces a structure over a vanishing differential") {
  auto m = sl2_structure(4);
  SDRData sdr = compute_homology_sdr(m.base);
  LinfStructure out = minimal_model_linf(m, sdr, 4);
  REQUIRE(out.base->dim() == 3);
  for (int k = 0; k < 3; ++k)
    CHECK(out.deriv.im[k].terms == m.deriv.im[k].terms);

  std::mt19937_64 rng(42);
  auto flat = plain_space({Parity::even, Parity::odd, Parity::odd});
  UnimodularStructure u = random_pair(rng, flat, 3);
  REQUIRE(check_mc_unimodular(u).ok);
  UnimodularStructure down = minimal_model_unimodular(u, compute_homology_sdr(flat), 3);
  for (size_t k = 0; k < u.linf.deriv.im.size(); ++k)
    CHECK(down.linf.deriv.im[k].terms == u.linf.deriv.im[k].terms);
  CHECK(down.fn.terms == u.fn.terms);
}

TEST_CASE("gauge trivial structures transfer to zero over an acyclic base") {
  std::mt19937_64 rng(8123);
  auto base = acyclic_base();
  LinfStructure m = random_mc(rng, base, 4);
  for (int tries = 0; m.deriv.is_zero() && tries < 20; ++tries)
    m = random_mc(rng, base, 4);
  REQUIRE(!m.deriv.is_zero());
  SDRData sdr = compute_homology_sdr(base);
  LinfStructure out = minimal_model_linf(m, sdr, 4);
  CHECK(out.base->dim() == 0);
  CHECK(out.deriv.is_zero());

  UnimodularStructure u = random_pair(rng, base, 4);
  UnimodularStructure down = minimal_model_unimodular(u, sdr, 4);
  CHECK(down.linf.deriv.is_zero());
  CHECK(down.fn.is_zero());
}

TEST_CASE("zero transfers to zero") {
  std::mt19937_64 rng(5150);
  auto base = random_dg_space(rng, 4);
  SDRData sdr = compute_homology_sdr(base);
  auto zero = make_unimodular(linf_zero(base, 4),
                              poly_zero(coordinate_space(base), 4));
  UnimodularStructure down = minimal_model_unimodular(zero, sdr, 4);
  CHECK(down.linf.deriv.is_zero());
  CHECK(down.fn.is_zero());
}

TEST_CASE("transferred structures close") {
  std::mt19937_64 rng(660);
  int done = 0;
  for (int trial = 0; trial < 12 && done < 5; ++trial) {
    auto base = random_dg_space(rng, 2 + int(rng() % 3));
    SDRData sdr = compute_homology_sdr(base);
    if (sdr.small->dim() == 0 || sdr.small->dim() == base->dim()) continue;
    UnimodularStructure u = random_pair(rng, base, 4);
    if (u.linf.deriv.is_zero()) continue;
    UnimodularStructure down = minimal_model_unimodular(u, sdr, 4);
    CHECK(check_mc_unimodular(down).ok);
    LinfStructure only = minimal_model_linf(u.linf, sdr, 4);
    CHECK(eq(only, down.linf));
    ++done;
  }
  CHECK(done >= 3);
}

TEST_CASE("the graph sum does not depend on enumeration order") {
  std::mt19937_64 rng(47);
  auto base = random_dg_space(rng, 3);
  UnimodularStructure u = random_pair(rng, base, 4);
  LagrangianData lag = induced_double_sdr(compute_homology_sdr(base));
  QuantumElement q = double_odd_quantum(lag.dbl, u);

  int maxval = 0;
  for (auto& coeff : q.coeffs)
    for (auto& [w, c] : coeff.terms) maxval = std::max(maxval, int(w.size()));
  for (int n = 3; n <= 4; ++n) {
    auto graphs = enumerate_graphs(n, 0, maxval);
    Poly fwd = poly_zero(lag.hdbl.total(), 4);
    for (auto& g : graphs)
      fwd = add(fwd, scale(graph_amplitude(g, q, lag, 4),
                           Rat(1) / Rat(automorphism_order(g))));
    Poly bwd = poly_zero(lag.hdbl.total(), 4);
    for (auto it = graphs.rbegin(); it != graphs.rend(); ++it)
      bwd = add(bwd, scale(graph_amplitude(*it, q, lag, 4),
                           Rat(1) / Rat(automorphism_order(*it))));
    CHECK(eq(fwd, bwd));
  }

  QuantumElement r1 = rho(q, lag, 1, 4);
  QuantumElement r2 = rho(q, lag, 1, 4);
  CHECK(r1.coeffs[0].terms == r2.coeffs[0].terms);
  CHECK(r1.coeffs[1].terms == r2.coeffs[1].terms);
}

TEST_CASE("invalid inputs are rejected") {
  std::mt19937_64 rng(31);
  auto base = random_dg_space(rng, 3);
  LagrangianData lag = induced_double_sdr(compute_homology_sdr(base));

  Poly bad = poly_term(lag.dbl.total(), 4, Word{0, 0, 0}, Rat(1));
  bool qme_ok = check_qme(make_quantum(lag.dbl.ctx, {bad})).ok;
  if (!qme_ok)
    CHECK_THROWS_AS(rho(make_quantum(lag.dbl.ctx, {bad}), lag, 1, 4),
                    std::invalid_argument);
  CHECK_THROWS_AS(rho(double_odd_quantum(lag.dbl,
                                         make_unimodular(linf_zero(base, 3),
                                                         poly_zero(coordinate_space(base), 3))),
                      lag, 2, 4),
                  std::invalid_argument);

  SDRData sdr = compute_homology_sdr(base);
  LinfStructure good = random_mc(rng, base, 4);
  CHECK_THROWS_AS(minimal_model_linf(good, sdr, 1), std::invalid_argument);
  Derivation broken = random_derivation(rng, coordinate_space(base), 4,
                                        Parity::odd, 2, 3);
  LinfStructure bad_m{base, broken};
  if (!broken.is_zero() && !check_mc_linf(bad_m).ok)
    CHECK_THROWS_AS(minimal_model_linf(bad_m, sdr, 4), std::invalid_argument);
}
