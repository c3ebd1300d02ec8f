#include "pkeet/pkeetfa.hpp"

#include <cmath>

#include "pkeet/errors.hpp"

namespace pkeet {

namespace {

bool all_zero(const IdentityVector& v) {
  for (uint64_t e : v)
    if (e) return false;
  return true;
}

IdentityVector sample_identity(const RingContext& ctx, ChaChaRng& rng) {
  // v = 0 is the degenerate identity (H(0) would tag the unshifted key);
  // redrawn, matching the abort case of the security argument.
  for (;;) {
    IdentityVector v = sample_uniform_ring(ctx, rng).c;
    if (!all_zero(v)) return v;
  }
}

/// w = ct_scalar − ct_vecᵀx, digest = threshold(w).
RingElem decode_side(const RingContext& ctx, const RingElem& ct_scalar, const RingVec& ct_vec,
                     const IntVec& x) {
  RingElem prod = ring_dot(ctx, ct_vec, reduce_vec(ctx, x));
  RingElem w = ring_sub(ctx, ct_scalar, prod);
  return threshold_decode(ctx, w);
}

IntVec preimage_for(const Params& p, const GTrapdoor& tb, const RingVec& b, const RingElem& u,
                    const IdentityVector& v, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  RingElem h = frd_encode(ctx, v);
  RingVec b_h = tag_shift(p, b, h);
  return sample_pre(p, tb, b_h, h, p.gauss.zeta, p.gauss.sigma, p.gauss.alpha, u, rng);
}

void require_variant(const AuthTrapdoor& td, TdVariant want, const char* who) {
  if (td.variant != want) throw VariantMismatchError(std::string(who) + ": wrong trapdoor variant");
}

void require_binding(const AuthTrapdoor& td, const Ciphertext& ct, const char* who) {
  if (td.bound_v != ct.v)
    throw BindingMismatchError(std::string(who) + ": trapdoor bound to a different ciphertext");
}

int64_t max_abs_centered(const RingContext& ctx, const RingElem& w, const RingElem& ref) {
  // error = w − ref·⌊q/2⌋ in centered representation
  const uint64_t half = ctx.q / 2;
  int64_t worst = 0;
  for (uint32_t j = 0; j < ctx.n; ++j) {
    uint64_t expect = ref.c[j] ? half : 0;
    int64_t e = ctx.mod.centered(ctx.mod.sub(w.c[j], expect));
    worst = std::max(worst, std::abs(e));
  }
  return worst;
}

}  // namespace

RingElem threshold_decode(const RingContext& ctx, const RingElem& w) {
  const uint64_t half = ctx.q / 2;
  RingElem out(ctx.n);
  for (uint32_t j = 0; j < ctx.n; ++j) {
    uint64_t c = w.c[j];
    uint64_t dist0 = std::min(c, ctx.q - c);
    uint64_t dh = c > half ? c - half : half - c;
    uint64_t dist_half = std::min(dh, ctx.q - dh);
    out.c[j] = dist_half < dist0 ? 1 : 0;
  }
  return out;
}

KeyPair setup(const Params& p, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  RingElem zero = ring_zero(ctx);
  auto [a, Ta] = trap_gen(p, p.gauss.sigma, std::nullopt, zero, rng);
  auto [b, Tb] = trap_gen(p, p.gauss.sigma, std::nullopt, zero, rng);
  RingElem u = sample_uniform_ring(ctx, rng);
  KeyPair kp;
  kp.pk = PublicKey{a, b, u};
  kp.sk = SecretKey{std::move(Ta), std::move(Tb), b, u};
  return kp;
}

Ciphertext encrypt(const Params& p, const PublicKey& pk, const RingElem& message, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  if (message.size() != ctx.n) throw DimensionError("encrypt: bad message dimension");
  for (uint64_t c : message.c)
    if (c > 1) throw Error("encrypt: message must have binary coefficients");

  const GaussParams& g = p.gauss;
  const uint64_t half = ctx.q / 2;
  const uint32_t mk = p.m - p.k;

  RingElem s1 = sample_uniform_ring(ctx, rng);
  RingElem s2 = sample_uniform_ring(ctx, rng);
  RingElem e1 = reduce_poly(ctx, sample_int_poly(ctx.n, g.tau, g.t, rng, p.samplers.get()));
  RingElem e2 = reduce_poly(ctx, sample_int_poly(ctx.n, g.tau, g.t, rng, p.samplers.get()));

  Ciphertext ct;
  ct.ct1 = ring_add(ctx, ring_add(ctx, ring_mul(ctx, pk.u, s1), e1),
                    ring_scalar_mul(ctx, half, message));
  ct.ct2 = ring_add(ctx, ring_add(ctx, ring_mul(ctx, pk.u, s2), e2),
                    ring_scalar_mul(ctx, half, hash_message(ctx, message)));

  ct.v = sample_identity(ctx, rng);
  RingElem h = frd_encode(ctx, ct.v);
  RingVec a_h = tag_shift(p, pk.a, h);
  RingVec b_h = tag_shift(p, pk.b, h);

  auto noise_vec = [&](ChaChaRng& r) {
    IntVec y = sample_ring_vec(ctx.n, mk, g.tau, g.t, r, p.samplers.get());
    IntVec z = sample_ring_vec(ctx.n, p.k, g.gamma, g.t, r, p.samplers.get());
    RingVec out(p.m);
    for (uint32_t i = 0; i < mk; ++i) out[i] = reduce_poly(ctx, y[i]);
    for (uint32_t l = 0; l < p.k; ++l) out[mk + l] = reduce_poly(ctx, z[l]);
    return out;
  };
  ct.ct3 = ring_vec_add(ctx, ring_vec_scalar_mul(ctx, a_h, s1), noise_vec(rng));
  ct.ct4 = ring_vec_add(ctx, ring_vec_scalar_mul(ctx, b_h, s2), noise_vec(rng));
  return ct;
}

DecryptResult decrypt_detailed(const Params& p, const SecretKey& sk, const PublicKey& pk,
                               const Ciphertext& ct, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  const GaussParams& g = p.gauss;
  RingElem h = frd_encode(ctx, ct.v);
  RingVec a_h = tag_shift(p, pk.a, h);
  RingVec b_h = tag_shift(p, pk.b, h);

  IntVec x = sample_pre(p, sk.Ta, a_h, h, g.zeta, g.sigma, g.alpha, pk.u, rng);
  IntVec xp = sample_pre(p, sk.Tb, b_h, h, g.zeta, g.sigma, g.alpha, pk.u, rng);

  RingElem w = ring_sub(ctx, ct.ct1, ring_dot(ctx, ct.ct3, reduce_vec(ctx, x)));
  RingElem message = threshold_decode(ctx, w);
  RingElem wp = ring_sub(ctx, ct.ct2, ring_dot(ctx, ct.ct4, reduce_vec(ctx, xp)));
  RingElem digest = threshold_decode(ctx, wp);

  DecryptResult res;
  res.max_err_message = max_abs_centered(ctx, w, message);
  res.max_err_digest = max_abs_centered(ctx, wp, digest);
  if (digest == hash_message(ctx, message)) res.message = std::move(message);
  return res;
}

std::optional<RingElem> decrypt(const Params& p, const SecretKey& sk, const PublicKey& pk,
                                const Ciphertext& ct, ChaChaRng& rng) {
  return decrypt_detailed(p, sk, pk, ct, rng).message;
}

AuthTrapdoor td1(const Params& p, const SecretKey& sk) {
  (void)p;
  AuthTrapdoor td;
  td.variant = TdVariant::Type1;
  td.tb = sk.Tb;
  td.b = sk.b;
  td.u = sk.u;
  return td;
}

AuthTrapdoor td2(const Params& p, const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct,
                 ChaChaRng& rng) {
  AuthTrapdoor td;
  td.variant = TdVariant::Type2;
  td.preimage = preimage_for(p, sk.Tb, pk.b, pk.u, ct.v, rng);
  td.bound_v = ct.v;
  return td;
}

AuthTrapdoor td3_i(const Params& p, const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct,
                   ChaChaRng& rng) {
  AuthTrapdoor td;
  td.variant = TdVariant::Type3i;
  td.preimage = preimage_for(p, sk.Tb, pk.b, pk.u, ct.v, rng);
  td.bound_v = ct.v;
  return td;
}

AuthTrapdoor td3_j(const Params& p, const SecretKey& sk) {
  AuthTrapdoor td = td1(p, sk);
  td.variant = TdVariant::Type3j;
  return td;
}

bool test1(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j, ChaChaRng& rng) {
  require_variant(td_i, TdVariant::Type1, "test1");
  require_variant(td_j, TdVariant::Type1, "test1");
  const RingContext& ctx = *p.ring;
  auto side = [&](const AuthTrapdoor& td, const Ciphertext& ct) {
    IntVec xp = preimage_for(p, *td.tb, td.b, td.u, ct.v, rng);
    return decode_side(ctx, ct.ct2, ct.ct4, xp);
  };
  return side(td_i, ct_i) == side(td_j, ct_j);
}

bool test2(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j) {
  require_variant(td_i, TdVariant::Type2, "test2");
  require_variant(td_j, TdVariant::Type2, "test2");
  require_binding(td_i, ct_i, "test2");
  require_binding(td_j, ct_j, "test2");
  const RingContext& ctx = *p.ring;
  RingElem hi = decode_side(ctx, ct_i.ct2, ct_i.ct4, td_i.preimage);
  RingElem hj = decode_side(ctx, ct_j.ct2, ct_j.ct4, td_j.preimage);
  return hi == hj;
}

bool test3(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j, ChaChaRng& rng) {
  const AuthTrapdoor* ti = &td_i;
  const AuthTrapdoor* tj = &td_j;
  const Ciphertext* ci = &ct_i;
  const Ciphertext* cj = &ct_j;
  if (td_i.variant == TdVariant::Type3j && td_j.variant == TdVariant::Type3i) {
    std::swap(ti, tj);
    std::swap(ci, cj);
  }
  require_variant(*ti, TdVariant::Type3i, "test3");
  require_variant(*tj, TdVariant::Type3j, "test3");
  require_binding(*ti, *ci, "test3");
  const RingContext& ctx = *p.ring;
  RingElem hi = decode_side(ctx, ci->ct2, ci->ct4, ti->preimage);
  IntVec xpj = preimage_for(p, *tj->tb, tj->b, tj->u, cj->v, rng);
  RingElem hj = decode_side(ctx, cj->ct2, cj->ct4, xpj);
  return hi == hj;
}

}  // namespace pkeet
