#include <doctest.h>

#include "util.hpp"

using namespace bvmin;
using namespace bvmin::testutil;

TEST_CASE("word normalization") {
  auto s = plain_space({Parity::even, Parity::odd, Parity::odd});
  Word t1t2{1, 2};
  Word t2t1{2, 1};
  auto [w1, s1] = normalize_word(*s, t1t2);
  auto [w2, s2] = normalize_word(*s, t2t1);
  CHECK(w1 == w2);
  CHECK(s1 == 1);
  CHECK(s2 == -1);

  auto [wr, sr] = normalize_word(*s, Word{1, 0, 1});
  CHECK(sr == 0);
  CHECK(wr.empty());

  // involutive on canonical input
  auto [w3, s3] = normalize_word(*s, w1);
  CHECK(w3 == w1);
  CHECK(s3 == 1);
}

TEST_CASE("products of generators") {
  auto s = plain_space({Parity::even, Parity::odd, Parity::odd});
  int N = 6;
  Poly x = poly_gen(s, N, 0), t1 = poly_gen(s, N, 1), t2 = poly_gen(s, N, 2);
  CHECK(eq(multiply(x, x), poly_term(s, N, Word{0, 0}, 1)));
  CHECK(multiply(t1, t1).is_zero());
  CHECK(eq(multiply(t1, t2), neg(multiply(t2, t1))));
}

TEST_CASE("multiply is associative and graded-commutative") {
  auto s = plain_space({Parity::even, Parity::odd, Parity::even, Parity::odd});
  std::mt19937_64 rng(12);
  for (int it = 0; it < 30; ++it) {
    Poly a = random_poly(rng, s, 6, 3);
    Poly b = random_poly(rng, s, 6, 3);
    Poly c = random_poly(rng, s, 6, 3);
    CHECK(eq(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
    // commutativity checked per homogeneous component
    for (auto want : {Parity::even, Parity::odd}) {
      for (auto want2 : {Parity::even, Parity::odd}) {
        Poly ah = random_homog_poly(rng, s, 6, 3, want);
        Poly bh = random_homog_poly(rng, s, 6, 3, want2);
        Poly ab = multiply(ah, bh);
        Poly ba = multiply(bh, ah);
        if (want == Parity::odd && want2 == Parity::odd)
          CHECK(eq(ab, neg(ba)));
        else
          CHECK(eq(ab, ba));
      }
    }
  }
}

TEST_CASE("truncation drops long words") {
  auto s = plain_space({Parity::even});
  Poly x = poly_gen(s, 2, 0);
  Poly x2 = multiply(x, x);
  CHECK(multiply(x2, x).is_zero());
}

TEST_CASE("left partial derivative") {
  auto s = plain_space({Parity::even, Parity::odd, Parity::odd});
  int N = 6;
  Poly x2 = poly_term(s, N, Word{0, 0}, 1);
  CHECK(eq(partial_left(x2, 0), scale(poly_gen(s, N, 0), 2)));
  Poly tf = poly_term(s, N, Word{1, 2}, 1);
  CHECK(eq(partial_left(tf, 1), poly_gen(s, N, 2)));
  CHECK(eq(partial_left(tf, 2), neg(poly_gen(s, N, 1))));
}

TEST_CASE("exp and log round-trip") {
  auto s = plain_space({Parity::even, Parity::odd, Parity::even});
  std::mt19937_64 rng(34);
  for (int it = 0; it < 20; ++it) {
    Poly f = random_poly(rng, s, 5, 3, false);
    Poly e = poly_exp(f);
    Poly g = sub(e, poly_const(s, 5, 1));
    CHECK(eq(poly_log1p(g), f));
  }
}

TEST_CASE("substitute is an algebra morphism") {
  auto s = plain_space({Parity::even, Parity::odd});
  auto t = plain_space({Parity::even, Parity::odd, Parity::odd});
  std::mt19937_64 rng(56);
  std::vector<Poly> images = {random_homog_poly(rng, t, 6, 2, Parity::even),
                              random_homog_poly(rng, t, 6, 2, Parity::odd)};
  for (int it = 0; it < 20; ++it) {
    Poly a = random_poly(rng, s, 6, 2);
    Poly b = random_poly(rng, s, 6, 2);
    Poly lhs = substitute(multiply(a, b), t, 6, images);
    Poly rhs = multiply(substitute(a, t, 6, images), substitute(b, t, 6, images));
    CHECK(eq(lhs, rhs));
  }
}

TEST_CASE("coordinate space differential of an acyclic pair") {
  auto v = make_space({"u", "v"}, {Parity::even, Parity::odd},
                      {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
  auto a = coordinate_space(v);
  CHECK(a->par(0) == 1);
  CHECK(a->par(1) == 0);
  // v-coordinate maps to minus the u-coordinate
  CHECK(a->d[0][1] == Rat(-1));
  CHECK(a->d[1][0] == Rat(0));
}

TEST_CASE("dual space differential squares to zero and pins the sign") {
  auto v = make_space({"u", "v"}, {Parity::even, Parity::odd},
                      {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
  auto w = dual_space(v);
  // (d*f)(x) = -(-1)^{|f|} f(dx) gives d*(v*) = +u* here
  CHECK(w->d[0][1] == Rat(1));
  CHECK(w->d[1][0] == Rat(0));
}
