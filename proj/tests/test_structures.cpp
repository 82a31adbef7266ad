#include "bvmin/structures.hpp"

#include <doctest.h>

#include "util.hpp"

using namespace bvmin;
using namespace bvmin::testutil;

namespace {

using Table = std::vector<std::vector<std::vector<Rat>>>;

Table table_zero(int n) {
  return Table(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
}

// Sets [e_a, e_b] += v e_j together with the graded mirror entry.
void set_bracket(Table& c, const SpacePtr& s, int a, int b, int j, const Rat& v) {
  c[a][b][j] += v;
  if (a == b) return;
  c[b][a][j] += (s->par(a) && s->par(b)) ? v : Rat(-v);
}

// [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] over all basis triples.
bool brute_jacobi(const SpacePtr& s, const Table& c) {
  const int n = s->dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int e = 0; e < n; ++e)
        for (int j = 0; j < n; ++j) {
          Rat val = 0;
          for (int k = 0; k < n; ++k) {
            val += c[b][e][k] * c[a][k][j];
            val -= c[a][b][k] * c[k][e][j];
            Rat t = c[a][e][k] * c[b][k][j];
            val -= (s->par(a) && s->par(b)) ? Rat(-t) : t;
          }
          if (val != 0) return false;
        }
  return true;
}

// gl(1|1) from 2x2 matrix units over C^{1|1}: index 2r + col, parity r + col.
SpacePtr gl11_space() {
  return make_space({"h1", "p", "q", "h2"},
                    {Parity::even, Parity::odd, Parity::odd, Parity::even});
}

Table gl11_table() {
  Table c = table_zero(4);
  auto idx = [](int r, int col) { return 2 * r + col; };
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) {
          int i1 = idx(r1, c1), i2 = idx(r2, c2);
          bool both_odd = ((r1 + c1) & 1) && ((r2 + c2) & 1);
          if (c1 == r2) c[i1][i2][idx(r1, c2)] += 1;
          if (c2 == r1) c[i1][i2][idx(r2, c1)] += both_odd ? Rat(1) : Rat(-1);
        }
  return c;
}

Derivation nonzero_even_param(std::mt19937_64& rng, const SpacePtr& coords, int n) {
  for (int tries = 0; tries < 50; ++tries) {
    auto xi = random_derivation(rng, coords, n, Parity::even, 2, 3);
    if (!xi.is_zero()) return xi;
  }
  return derivation_zero(coords, n, Parity::even);
}

bool has_residual(const McReport& rep, const std::string& family, int order) {
  for (auto& r : rep.residuals)
    if (r.family == family && r.order == order) return true;
  return false;
}

}  // namespace

TEST_CASE("zero structures satisfy every validator") {
  auto s = plain_space({Parity::even, Parity::odd});
  auto m = linf_zero(s, 4);
  CHECK(check_mc_linf(m).ok);
  auto u = make_unimodular(m, poly_zero(m.deriv.space, 4));
  CHECK(check_mc_unimodular(u).ok);
  auto ctx = test_double(Parity::odd, {Parity::odd, Parity::even});
  CHECK(check_qme(make_quantum(ctx, {})).ok);
  CHECK(check_qme(make_quantum(ctx, {poly_zero(ctx.space, 4)})).ok);
}

TEST_CASE("structure constructors reject malformed input") {
  auto s = plain_space({Parity::even, Parity::odd});
  auto coords = coordinate_space(s);
  std::mt19937_64 rng(11);

  auto even_d = random_derivation(rng, coords, 4, Parity::even, 2, 3);
  if (!even_d.is_zero()) CHECK_THROWS(make_linf(s, even_d));

  auto low = derivation_zero(coords, 4, Parity::odd);
  low.im[1] = poly_gen(coords, 4, 0);  // order-1 image
  CHECK_THROWS(make_linf(s, low));

  auto m = linf_zero(s, 4);
  CHECK_THROWS(make_unimodular(m, poly_gen(coords, 4, 0)));  // odd function
  CHECK_THROWS(make_unimodular(m, poly_const(coords, 4, Rat(3))));

  auto even_ctx = test_double(Parity::even, {Parity::even});
  CHECK_THROWS(make_quantum(even_ctx, {}));

  auto ctx = test_double(Parity::odd, {Parity::odd, Parity::even});
  CHECK_THROWS(make_quantum(ctx, {poly_gen(ctx.space, 4, 0)}));  // odd parity
  // weight 2 at hbar^0 and weight 2 at hbar^1 both sit on the boundary
  CHECK_THROWS(make_quantum(ctx, {poly_term(ctx.space, 4, Word{1, 1}, Rat(1))}));
  CHECK_THROWS(make_quantum(
      ctx, {poly_zero(ctx.space, 4), poly_const(ctx.space, 4, Rat(1))}));
}

TEST_CASE("lie brackets become maurer cartan derivations") {
  auto aff = plain_space({Parity::even, Parity::even});
  Table ca = table_zero(2);
  set_bracket(ca, aff, 0, 1, 1, Rat(1));
  CHECK(brute_jacobi(aff, ca));
  CHECK(check_mc_linf(lie_to_linf(aff, ca, 4)).ok);

  // one odd generator squaring to a central even one
  auto heis = plain_space({Parity::even, Parity::odd});
  Table ch = table_zero(2);
  set_bracket(ch, heis, 1, 1, 0, Rat(2));
  CHECK(brute_jacobi(heis, ch));
  auto mh = lie_to_linf(heis, ch, 4);
  CHECK(check_mc_linf(mh).ok);
  // shift convention lands [q,q] = 2z at -(1/2) 2 x_q x_q
  CHECK(eq(mh.deriv.im[0],
           poly_term(mh.deriv.space, 4, Word{1, 1}, Rat(-1))));
  CHECK(mh.deriv.im[1].is_zero());

  auto gl = gl11_space();
  Table cg = gl11_table();
  CHECK(brute_jacobi(gl, cg));
  CHECK(check_mc_linf(lie_to_linf(gl, cg, 4)).ok);

  // misdirect one bracket value: [h1, p] = q instead of p
  Table bad = gl11_table();
  set_bracket(bad, gl, 0, 1, 1, Rat(-1));
  set_bracket(bad, gl, 0, 1, 2, Rat(1));
  CHECK_FALSE(brute_jacobi(gl, bad));
  auto rep = check_mc_linf(lie_to_linf(gl, bad, 4));
  CHECK_FALSE(rep.ok);
  CHECK(has_residual(rep, "mc", 3));

  Table lop = table_zero(2);
  lop[0][1][1] = 1;  // missing mirror entry
  CHECK_THROWS(lie_to_linf(aff, lop, 4));
}

TEST_CASE("maurer cartan agrees with the bracket jacobiator") {
  std::mt19937_64 rng(23);
  for (int inst = 0; inst < 40; ++inst) {
    SpacePtr s;
    Table c;
    if (inst % 4 == 0) {
      s = gl11_space();
      c = gl11_table();
      Rat lambda = Rat(1 + int(rng() % 5));
      for (auto& r1 : c)
        for (auto& r2 : r1)
          for (auto& v : r2) v *= lambda;
    } else {
      int n = 2 + int(rng() % 2);
      std::vector<Parity> par;
      for (int i = 0; i < n; ++i)
        par.push_back(rng() % 2 ? Parity::odd : Parity::even);
      s = plain_space(par);
      c = table_zero(n);
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int j = 0; j < n; ++j) {
            if (s->par(j) != ((s->par(a) + s->par(b)) & 1)) continue;
            if (a == b && !s->par(a)) continue;
            if (rng() % 3) continue;
            set_bracket(c, s, a, b, j, Rat(int(rng() % 5) - 2));
          }
    }
    CHECK(check_mc_linf(lie_to_linf(s, c, 4)).ok == brute_jacobi(s, c));
  }
}

TEST_CASE("multilinear conversion round trips from derivations") {
  std::mt19937_64 rng(37);
  for (int inst = 0; inst < 30; ++inst) {
    int n = 2 + int(rng() % 3);
    std::vector<Parity> par;
    for (int i = 0; i < n; ++i)
      par.push_back(rng() % 2 ? Parity::odd : Parity::even);
    auto s = plain_space(par);
    auto coords = coordinate_space(s);
    int cutoff = 4 + int(rng() % 2);
    auto d = random_derivation(rng, coords, cutoff, Parity::odd, 2, 3);
    auto m = make_linf(s, d);
    CHECK(eq(to_derivation(to_multilinear(m)), m));
  }
}

TEST_CASE("multilinear conversion round trips from families") {
  std::mt19937_64 rng(41);
  for (int inst = 0; inst < 20; ++inst) {
    int n = 2 + int(rng() % 3);
    std::vector<Parity> par;
    for (int i = 0; i < n; ++i)
      par.push_back(rng() % 2 ? Parity::odd : Parity::even);
    auto s = plain_space(par);
    auto coords = coordinate_space(s);
    auto fam = family_zero(s, 4);
    for (int t = 0; t < 6; ++t) {
      int len = 2 + int(rng() % 2);
      Word w;
      for (int i = 0; i < len; ++i) w.push_back((unsigned char)(rng() % n));
      if (normalize_word(*coords, w).second == 0) continue;
      int out_par = 1;
      for (unsigned char ch : w) out_par ^= coords->par(ch);
      std::vector<int> outs;
      for (int j = 0; j < n; ++j)
        if (coords->par(j) == out_par) outs.push_back(j);
      if (outs.empty()) continue;
      family_add_symmetric(fam, w, outs[rng() % outs.size()],
                           Rat(int(rng() % 5) - 2));
    }
    auto back = to_multilinear(to_derivation(fam));
    CHECK(back.maps == fam.maps);
  }
}

TEST_CASE("asymmetric families are rejected") {
  auto s = plain_space({Parity::even, Parity::even});
  auto fam = family_zero(s, 4);
  fam.maps[2][Word{0, 1}][0] = 1;  // orbit partner missing
  CHECK_THROWS(to_derivation(fam));
  fam.maps[2][Word{1, 0}][0] = 1;  // partner with the wrong transported sign
  CHECK_THROWS(to_derivation(fam));
  fam.maps[2][Word{1, 0}][0] = -1;
  CHECK_NOTHROW(to_derivation(fam));

  auto odd1 = plain_space({Parity::odd, Parity::odd});
  auto fam2 = family_zero(odd1, 4);
  fam2.maps[2][Word{0, 0}][0] = 1;  // repeated odd slot in PiV
  CHECK_THROWS(to_derivation(fam2));
}

TEST_CASE("family of a lie bracket carries the shift sign") {
  auto gl = gl11_space();
  Table c = gl11_table();
  auto fam = to_multilinear(lie_to_linf(gl, c, 4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int j = 0; j < 4; ++j) {
        Rat have = 0;
        auto row = fam.maps[2].find(Word{(unsigned char)a, (unsigned char)b});
        if (row != fam.maps[2].end()) {
          auto it = row->second.find(j);
          if (it != row->second.end()) have = it->second;
        }
        Rat want = gl->par(a) ? Rat(-c[a][b][j]) : c[a][b][j];
        CHECK(have == want);
      }
}

TEST_CASE("linf gauge transforms preserve maurer cartan") {
  std::mt19937_64 rng(53);
  auto gl = gl11_space();
  auto mg = lie_to_linf(gl, gl11_table(), 4);
  CHECK(eq(gauge_transform_linf(
               mg, derivation_zero(mg.deriv.space, 4, Parity::even)),
           mg));

  auto flat = plain_space({Parity::even, Parity::even});
  auto zflat = linf_zero(flat, 4);
  for (int i = 0; i < 5; ++i) {
    auto xi = nonzero_even_param(rng, zflat.deriv.space, 4);
    CHECK(eq(gauge_transform_linf(zflat, xi), zflat));
  }

  auto ac = acyclic_base();
  auto zac = linf_zero(ac, 5);
  for (int i = 0; i < 15; ++i) {
    auto m0 = i % 2 ? mg : zac;
    auto xi = nonzero_even_param(rng, m0.deriv.space, m0.cutoff());
    auto moved = gauge_transform_linf(m0, xi);
    CHECK(check_mc_linf(moved).ok);
    CHECK(eq(gauge_transform_linf(moved, d_scale(xi, Rat(-1))), m0));
  }

  auto bad = derivation_zero(mg.deriv.space, 4, Parity::odd);
  bad.im[0] = poly_term(mg.deriv.space, 4, Word{1, 2}, Rat(1));
  CHECK_THROWS(gauge_transform_linf(mg, bad));  // odd parameter
  auto low = derivation_zero(mg.deriv.space, 4, Parity::even);
  low.im[1] = poly_gen(mg.deriv.space, 4, 2);
  CHECK_THROWS(gauge_transform_linf(mg, low));  // order 1
}

TEST_CASE("unimodular gauge flow matches the affine formula") {
  std::mt19937_64 rng(59);
  auto gl = gl11_space();
  auto mg = lie_to_linf(gl, gl11_table(), 4);
  auto coords = mg.deriv.space;
  auto dhat = lift_differential(coords, 4);
  for (int i = 0; i < 10; ++i) {
    Poly f = random_homog_poly(rng, coords, 4, 3, Parity::even);
    f.terms.erase(Word());
    Poly g = random_homog_poly(rng, coords, 4, 3, Parity::odd);
    auto u = make_unimodular(mg, f);
    auto moved = gauge_transform_unimodular(
        u, derivation_zero(coords, 4, Parity::even), g);
    CHECK(eq(moved.linf, mg));
    Poly want = add(f, add(apply_derivation(dhat, g),
                           apply_derivation(mg.deriv, g)));
    CHECK(eq(moved.fn, want));
  }
}

TEST_CASE("unimodular gauge transforms preserve the validator") {
  std::mt19937_64 rng(61);
  auto ac = acyclic_base();
  auto u0 = make_unimodular(linf_zero(ac, 5),
                            poly_zero(coordinate_space(ac), 5));
  auto coords = u0.linf.deriv.space;
  CHECK(check_mc_unimodular(u0).ok);
  auto zero_xi = derivation_zero(coords, 5, Parity::even);
  CHECK(eq(gauge_transform_unimodular(u0, zero_xi, poly_zero(coords, 5)), u0));

  for (int i = 0; i < 15; ++i) {
    auto xi1 = nonzero_even_param(rng, coords, 5);
    Poly g1 = random_homog_poly(rng, coords, 5, 3, Parity::odd);
    auto u1 = gauge_transform_unimodular(u0, xi1, g1);
    CHECK(check_mc_unimodular(u1).ok);
    auto xi2 = nonzero_even_param(rng, coords, 5);
    Poly g2 = random_homog_poly(rng, coords, 5, 2, Parity::odd);
    auto u2 = gauge_transform_unimodular(u1, xi2, g2);
    CHECK(check_mc_unimodular(u2).ok);
    auto back = gauge_transform_unimodular(u2, d_scale(xi2, Rat(-1)), neg(g2));
    CHECK(eq(back, u1));
  }

  CHECK_THROWS(gauge_transform_unimodular(
      u0, zero_xi, poly_term(coords, 5, Word{1, 1}, Rat(1))));  // even g
  CHECK_THROWS(gauge_transform_unimodular(u0, zero_xi,
                                          poly_const(coords, 5, Rat(1))));
}

TEST_CASE("divergence residuals are reported") {
  auto s = plain_space({Parity::even, Parity::odd});
  auto coords = coordinate_space(s);
  auto d = derivation_zero(coords, 4, Parity::odd);
  d.im[0] = poly_term(coords, 4, Word{1, 1}, Rat(1));
  d.im[1] = poly_term(coords, 4, Word{0, 1}, Rat(1));
  auto u = make_unimodular(make_linf(s, d), poly_zero(coords, 4));
  auto rep = check_mc_unimodular(u);
  CHECK_FALSE(rep.ok);
  CHECK(has_residual(rep, "unimodular", 1));
}

TEST_CASE("quantum master residuals sit at the right powers") {
  auto ctx = test_double(Parity::odd, {Parity::odd, Parity::even});
  // x0 odd, x1 even, y0 even, y1 odd
  Poly m0 = poly_term(ctx.space, 5, Word{1, 1, 1, 2}, Rat(1));  // x1^3 y0
  auto good = make_quantum(ctx, {m0});
  CHECK(check_qme(good).ok);

  Poly m1 = poly_term(ctx.space, 5, Word{0, 1, 3}, Rat(1));  // x0 x1 y1
  auto bad = make_quantum(ctx, {m0, m1});
  auto rep = check_qme(bad);
  CHECK_FALSE(rep.ok);
  CHECK(has_residual(rep, "hbar", 2));
}
