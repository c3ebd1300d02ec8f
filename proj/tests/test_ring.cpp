#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pkeet/ring.hpp"

using namespace pkeet;

namespace {

// Independent oracle: schoolbook negacyclic convolution mod q. Deliberately
// avoids the NTT code path.
RingElem schoolbook_mul(const RingContext& ctx, const RingElem& f, const RingElem& g) {
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) {
    if (f.c[i] == 0) continue;
    for (uint32_t j = 0; j < ctx.n; ++j) {
      uint64_t p = ctx.mod.mul(f.c[i], g.c[j]);
      uint32_t idx = i + j;
      if (idx < ctx.n)
        out.c[idx] = ctx.mod.add(out.c[idx], p);
      else
        out.c[idx - ctx.n] = ctx.mod.sub(out.c[idx - ctx.n], p);
    }
  }
  return out;
}

// Extended Euclid in Z_q[x]: returns gcd(f, x^n+1) degree == 0, i.e. whether
// f is invertible, without touching the NTT.
bool gcd_invertible(const RingContext& ctx, const RingElem& f) {
  const ModArith& mod = ctx.mod;
  std::vector<uint64_t> a(ctx.n + 1, 0);  // x^n + 1
  a[0] = 1;
  a[ctx.n] = 1;
  std::vector<uint64_t> b(f.c);
  auto degree = [](const std::vector<uint64_t>& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i]) return static_cast<int>(i);
    return -1;
  };
  while (true) {
    int db = degree(b);
    if (db < 0) return false;         // gcd = a, nonunit unless...
    if (db == 0) return true;         // unit gcd
    int da = degree(a);
    if (da < db) {
      std::swap(a, b);
      continue;
    }
    // a -= lead(a)/lead(b) * x^(da-db) * b
    uint64_t scale = mod.mul(a[da], mod.inv(b[db]));
    for (int i = 0; i <= db; ++i)
      a[i + da - db] = mod.sub(a[i + da - db], mod.mul(scale, b[i]));
    if (degree(a) < degree(b)) std::swap(a, b);
  }
}

RingContext toy() { return RingContext::make(8, 17); }

}  // namespace

TEST_CASE("ring_add identities") {
  RingContext ctx = toy();
  ChaChaRng rng(7);
  RingElem g = sample_uniform_ring(ctx, rng);
  CHECK(ring_add(ctx, ring_zero(ctx), g) == g);
  CHECK(ring_is_zero(ring_add(ctx, g, ring_neg(ctx, g))));

  RingElem x(8), x16(8);
  x.c[1] = 1;
  x16.c[1] = 16;
  CHECK(ring_is_zero(ring_add(ctx, x, x16)));
}

TEST_CASE("ring_add dimension mismatch") {
  RingContext ctx = toy();
  RingElem bad(4);
  CHECK_THROWS_AS((void)ring_add(ctx, bad, ring_zero(ctx)), DimensionError);
}

TEST_CASE("ring_mul identities and x^n = -1") {
  RingContext ctx = toy();
  ChaChaRng rng(11);
  RingElem f = sample_uniform_ring(ctx, rng);
  CHECK(ring_mul(ctx, f, ring_one(ctx)) == f);

  RingElem x4(8);
  x4.c[4] = 1;
  RingElem sq = ring_mul(ctx, x4, x4);
  RingElem expect(8);
  expect.c[0] = 16;  // -1 mod 17
  CHECK(sq == expect);
}

TEST_CASE("ring_mul matches schoolbook oracle at toy scale") {
  RingContext ctx = toy();
  ChaChaRng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    RingElem f = sample_uniform_ring(ctx, rng);
    RingElem g = sample_uniform_ring(ctx, rng);
    CHECK(ring_mul(ctx, f, g) == schoolbook_mul(ctx, f, g));
  }
}

TEST_CASE("ring_mul commutative and distributive") {
  for (auto [n, q] : {std::pair<uint32_t, uint64_t>{8, 17},
                      std::pair<uint32_t, uint64_t>{16, 97}}) {
    RingContext ctx = RingContext::make(n, q);
    ChaChaRng rng(17 + n);
    for (int trial = 0; trial < 200; ++trial) {
      RingElem f = sample_uniform_ring(ctx, rng);
      RingElem g = sample_uniform_ring(ctx, rng);
      RingElem h = sample_uniform_ring(ctx, rng);
      CHECK(ring_mul(ctx, f, g) == ring_mul(ctx, g, f));
      CHECK(ring_mul(ctx, f, ring_add(ctx, g, h)) ==
            ring_add(ctx, ring_mul(ctx, f, g), ring_mul(ctx, f, h)));
    }
  }
}

TEST_CASE("ring_inverse basics") {
  RingContext ctx = toy();
  auto inv1 = ring_inverse(ctx, ring_one(ctx));
  REQUIRE(inv1.has_value());
  CHECK(*inv1 == ring_one(ctx));

  auto inv5 = ring_inverse(ctx, ring_constant(ctx, 5));
  REQUIRE(inv5.has_value());
  CHECK(*inv5 == ring_constant(ctx, 7));  // 5·7 = 35 ≡ 1 mod 17

  CHECK_FALSE(ring_inverse(ctx, ring_zero(ctx)).has_value());
}

TEST_CASE("ring_inverse agrees with polynomial-gcd oracle") {
  RingContext ctx = toy();
  ChaChaRng rng(19);
  int invertible = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    RingElem f = sample_uniform_ring(ctx, rng);
    auto inv = ring_inverse(ctx, f);
    CHECK(inv.has_value() == gcd_invertible(ctx, f));
    if (inv) {
      ++invertible;
      CHECK(ring_mul(ctx, f, *inv) == ring_one(ctx));
    }
  }
  // (16/17)^8 ≈ 0.616 of elements are invertible
  CHECK(invertible > 1000);
}

TEST_CASE("ntt roundtrip") {
  for (auto [n, q] : {std::pair<uint32_t, uint64_t>{8, 17},
                      std::pair<uint32_t, uint64_t>{1024, 2305843009213704193ULL}}) {
    RingContext ctx = RingContext::make(n, q);
    CHECK(ring_is_zero(ntt_inverse(ctx, ntt_forward(ctx, ring_zero(ctx)))));

    RingElem one_fwd = ntt_forward(ctx, ring_one(ctx));
    for (uint32_t j = 0; j < n; ++j) CHECK(one_fwd.c[j] == 1);
    CHECK(ntt_inverse(ctx, one_fwd) == ring_one(ctx));

    ChaChaRng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      RingElem f = sample_uniform_ring(ctx, rng);
      CHECK(ntt_inverse(ctx, ntt_forward(ctx, f)) == f);
    }
  }
}

TEST_CASE("ring_mul at paper62 scale agrees with oracle") {
  RingContext ctx = RingContext::make(1024, 2305843009213704193ULL);
  ChaChaRng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    RingElem f = sample_uniform_ring(ctx, rng);
    RingElem g = sample_uniform_ring(ctx, rng);
    CHECK(ring_mul(ctx, f, g) == schoolbook_mul(ctx, f, g));
  }
}

TEST_CASE("uniform sampling: determinism and chi-square") {
  RingContext ctx = toy();
  ChaChaRng r1(31), r2(31), r3(32);
  CHECK(sample_uniform_ring(ctx, r1) == sample_uniform_ring(ctx, r2));
  CHECK(sample_uniform_ring(ctx, r1) != sample_uniform_ring(ctx, r3));

  // coefficient histogram over 10^6 draws: each residue within 5σ of 1/17
  ChaChaRng rng(33);
  std::vector<uint64_t> hist(17, 0);
  const uint64_t draws = 125000;  // ×8 coefficients = 10^6 samples
  for (uint64_t i = 0; i < draws; ++i) {
    RingElem f = sample_uniform_ring(ctx, rng);
    for (uint64_t c : f.c) ++hist[c];
  }
  double total = 8.0 * draws;
  double expect = total / 17.0;
  double sd = std::sqrt(total * (1.0 / 17.0) * (16.0 / 17.0));
  for (int v = 0; v < 17; ++v) CHECK(std::abs(hist[v] - expect) < 5.0 * sd);
}

TEST_CASE("ring_dot matches elementwise products") {
  RingContext ctx = toy();
  ChaChaRng rng(37);
  RingVec a(3), b(3);
  for (int i = 0; i < 3; ++i) {
    a[i] = sample_uniform_ring(ctx, rng);
    b[i] = sample_uniform_ring(ctx, rng);
  }
  RingElem expect = ring_zero(ctx);
  for (int i = 0; i < 3; ++i) expect = ring_add(ctx, expect, ring_mul(ctx, a[i], b[i]));
  CHECK(ring_dot(ctx, a, b) == expect);

  RingVec a_ntt(3);
  for (int i = 0; i < 3; ++i) a_ntt[i] = ntt_forward(ctx, a[i]);
  CHECK(ring_dot_ntt(ctx, a_ntt, b) == expect);
}

TEST_CASE("centered representatives and exact integer mul") {
  RingContext ctx = toy();
  IntPoly p = {-3, 5, 0, -8, 8, 1, -1, 2};
  CHECK(centered(ctx, reduce_poly(ctx, p)) == p);

  IntPoly a = {1, 2, 0, 0, 0, 0, 0, -1};
  IntPoly b = {0, 3, 0, 0, 0, 0, 0, 0};
  IntPoly prod = negacyclic_mul_int(a, b);
  // (1 + 2x − x⁷)·3x = 3x + 6x² − 3x⁸ = 3 + 3x + 6x² (x⁸ = −1)
  IntPoly expect = {3, 3, 6, 0, 0, 0, 0, 0};
  CHECK(prod == expect);
}

TEST_CASE("norms over the signed view") {
  IntVec v = {{3, 4}, {0, 12}};
  CHECK(static_cast<uint64_t>(norm_sq(v)) == 9 + 16 + 144);
  CHECK(norm(v) == doctest::Approx(13.0));
}
