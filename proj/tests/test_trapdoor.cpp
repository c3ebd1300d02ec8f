#include <cmath>

#include "doctest.h"
#include "pkeet/params.hpp"
#include "pkeet/trapdoor.hpp"

using namespace pkeet;

namespace {

// aᵀ(T;I_k) = h·gᵀ, column by column, exactly.
bool trapdoor_identity_holds(const Params& p, const RingVec& a, const GTrapdoor& T,
                             const RingElem& h) {
  const RingContext& ctx = *p.ring;
  const uint32_t mk = p.m - p.k;
  for (uint32_t l = 0; l < p.k; ++l) {
    RingElem acc = ring_zero(ctx);
    for (uint32_t i = 0; i < mk; ++i) {
      RingElem t = reduce_poly(ctx, T.rows[size_t(i) * p.k + l]);
      acc = ring_add(ctx, acc, ring_mul(ctx, a[i], t));
    }
    acc = ring_add(ctx, acc, a[mk + l]);
    uint64_t pw = ctx.mod.from_signed(int64_t(1) << l);
    if (!(acc == ring_scalar_mul(ctx, pw, h))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gadget basis quality bound") {
  GadgetBasis toy(17, 5);
  CHECK(toy.max_gs_norm() <= std::sqrt(5.0) + 1e-9);
  GadgetBasis big(2305843009213704193ULL, 62);
  CHECK(big.max_gs_norm() <= std::sqrt(5.0) + 1e-9);
}

TEST_CASE("gadget_decompose at toy scale") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;

  IntVec bits = gadget_decompose(ctx, p.k, ring_constant(ctx, 5));
  CHECK(bits[0][0] == 1);
  CHECK(bits[1][0] == 0);
  CHECK(bits[2][0] == 1);
  CHECK(bits[3][0] == 0);
  CHECK(bits[4][0] == 0);

  CHECK(gadget_apply_int(ctx, p.k, gadget_decompose(ctx, p.k, ring_zero(ctx))) == ring_zero(ctx));

  // exhaustive over all constants, and over random elements per-coefficient
  for (uint64_t u = 0; u < 17; ++u) {
    RingElem e = ring_constant(ctx, u);
    IntVec d = gadget_decompose(ctx, p.k, e);
    for (const IntPoly& poly : d)
      for (int64_t c : poly) CHECK((c == 0 || c == 1));
    CHECK(gadget_apply_int(ctx, p.k, d) == e);
  }
  ChaChaRng rng(201);
  for (int trial = 0; trial < 200; ++trial) {
    RingElem e = sample_uniform_ring(ctx, rng);
    CHECK(gadget_apply_int(ctx, p.k, gadget_decompose(ctx, p.k, e)) == e);
  }
}

TEST_CASE("sample_poly_g recomposes and stays short") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(202);

  IntVec z0 = sample_poly_g(p, p.gauss.sigma, ring_zero(ctx), rng);
  CHECK(gadget_apply_int(ctx, p.k, z0) == ring_zero(ctx));
  double alpha = std::sqrt(5.0) * p.gauss.sigma;
  CHECK(norm(z0) <= p.gauss.t * alpha * std::sqrt(double(p.k) * p.n));

  for (int trial = 0; trial < 100; ++trial) {
    RingElem v = sample_uniform_ring(ctx, rng);
    IntVec z = sample_poly_g(p, p.gauss.sigma, v, rng);
    CHECK(gadget_apply_int(ctx, p.k, z) == v);
  }
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    RingElem v = sample_uniform_ring(ctx, rng);
    IntVec z = sample_poly_g(p, p.gauss.sigma, v, rng);
    if (norm(z) > p.gauss.t * alpha * std::sqrt(double(p.k) * p.n)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("trap_gen satisfies the trapdoor identity") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(203);

  SUBCASE("default h = 1") {
    auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, std::nullopt, rng);
    CHECK(a.size() == p.m);
    CHECK(trapdoor_identity_holds(p, a, T, ring_one(ctx)));
  }
  SUBCASE("h = 0 (Setup tags)") {
    auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, ring_zero(ctx), rng);
    CHECK(trapdoor_identity_holds(p, a, T, ring_zero(ctx)));
  }
  SUBCASE("given a' = (1, a) pattern and random h") {
    RingElem ra = sample_uniform_ring(ctx, rng);
    RingVec aprime = {ring_one(ctx), ra};
    RingElem h = sample_uniform_ring(ctx, rng);
    auto [a, T] = trap_gen(p, p.gauss.sigma, aprime, h, rng);
    CHECK(a[0] == ring_one(ctx));
    CHECK(a[1] == ra);
    CHECK(trapdoor_identity_holds(p, a, T, h));
  }
  SUBCASE("column norms respect the bound") {
    auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, std::nullopt, rng);
    (void)a;
    const uint32_t mk = p.m - p.k;
    for (uint32_t l = 0; l < p.k; ++l) {
      IntVec col(mk);
      for (uint32_t i = 0; i < mk; ++i) col[i] = T.rows[size_t(i) * p.k + l];
      CHECK(norm(col) <= p.gauss.t * p.gauss.sigma * std::sqrt(double(mk) * p.n));
    }
  }
}

TEST_CASE("tag_shift") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(204);
  auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, ring_zero(ctx), rng);

  SUBCASE("h = 0 leaves a unchanged") {
    CHECK(tag_shift(p, a, ring_zero(ctx)) == a);
  }
  SUBCASE("only the last k coordinates move") {
    RingElem h = sample_uniform_ring(ctx, rng);
    RingVec shifted = tag_shift(p, a, h);
    const uint32_t mk = p.m - p.k;
    for (uint32_t i = 0; i < mk; ++i) CHECK(shifted[i] == a[i]);
    for (uint32_t l = 0; l < p.k; ++l) {
      uint64_t pw = ctx.mod.from_signed(int64_t(1) << l);
      CHECK(shifted[mk + l] == ring_add(ctx, a[mk + l], ring_scalar_mul(ctx, pw, h)));
    }
  }
  SUBCASE("shifted vector supports preimage sampling") {
    RingElem h;
    do {
      h = sample_uniform_ring(ctx, rng);
    } while (!ring_is_invertible(ctx, h));
    RingVec a_h = tag_shift(p, a, h);
    CHECK(trapdoor_identity_holds(p, a_h, T, h));
    RingElem u = sample_uniform_ring(ctx, rng);
    IntVec x = sample_pre(p, T, a_h, h, p.gauss.zeta, p.gauss.sigma, p.gauss.alpha, u, rng);
    CHECK(ring_dot(ctx, a_h, reduce_vec(ctx, x)) == u);
  }
}

TEST_CASE("sample_pre recomposition at toy scale") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(205);
  auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, ring_zero(ctx), rng);

  int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    RingElem h;
    do {
      h = sample_uniform_ring(ctx, rng);
    } while (!ring_is_invertible(ctx, h));
    RingVec a_h = tag_shift(p, a, h);
    RingElem u = sample_uniform_ring(ctx, rng);
    IntVec x = sample_pre(p, T, a_h, h, p.gauss.zeta, p.gauss.sigma, p.gauss.alpha, u, rng);
    CHECK(x.size() == p.m);
    CHECK(ring_dot(ctx, a_h, reduce_vec(ctx, x)) == u);
    CHECK(norm(x) <= p.gauss.t * p.gauss.zeta * std::sqrt(double(p.m) * p.n));
  }
}

TEST_CASE("sample_pre rejects non-invertible tags") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(206);
  auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, ring_zero(ctx), rng);
  RingElem u = sample_uniform_ring(ctx, rng);
  CHECK_THROWS_AS((void)sample_pre(p, T, a, ring_zero(ctx), p.gauss.zeta, p.gauss.sigma,
                                   p.gauss.alpha, u, rng),
                  TagNotInvertibleError);
}

TEST_CASE("sample_pre call counter advances") {
  Params p = Params::preset("toy17");
  const RingContext& ctx = *p.ring;
  ChaChaRng rng(207);
  auto [a, T] = trap_gen(p, p.gauss.sigma, std::nullopt, ring_zero(ctx), rng);
  RingElem h;
  do {
    h = sample_uniform_ring(ctx, rng);
  } while (!ring_is_invertible(ctx, h));
  RingVec a_h = tag_shift(p, a, h);
  uint64_t before = sample_pre_invocations();
  (void)sample_pre(p, T, a_h, h, p.gauss.zeta, p.gauss.sigma, p.gauss.alpha,
                   sample_uniform_ring(ctx, rng), rng);
  CHECK(sample_pre_invocations() == before + 1);
}
