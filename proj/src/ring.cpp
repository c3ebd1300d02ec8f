#include "pkeet/ring.hpp"

#include <cassert>
#include <cmath>

#include "pkeet/rng.hpp"

namespace pkeet {

namespace {

inline uint32_t bit_reverse(uint32_t v, uint32_t bits) {
  uint32_t r = 0;
  for (uint32_t i = 0; i < bits; ++i) {
    r = (r << 1) | (v & 1);
    v >>= 1;
  }
  return r;
}

inline uint64_t shoup_of(uint64_t w, uint64_t q) {
  return static_cast<uint64_t>((u128(w) << 64) / q);
}

/// x·w mod q with precomputed w_shoup = floor(w·2^64/q); branchless.
inline uint64_t mul_shoup(uint64_t x, uint64_t w, uint64_t w_shoup, uint64_t q) {
  uint64_t hi = static_cast<uint64_t>((u128(x) * w_shoup) >> 64);
  uint64_t r = x * w - hi * q;
  r -= q & -uint64_t(r >= q);
  return r;
}

void check_same(const RingContext& ctx, const RingElem& f, const RingElem& g) {
  if (f.size() != ctx.n || g.size() != ctx.n)
    throw DimensionError("ring operands do not match the context dimension");
}

}  // namespace

NttTables::NttTables(uint32_t n, uint64_t q) : n_(n), q_(q), mod_(q) {
  if (n < 2 || (n & (n - 1)) != 0) throw Error("NTT size must be a power of two >= 2");
  if ((q - 1) % (2 * uint64_t(n)) != 0) throw Error("q != 1 mod 2n: negacyclic NTT unavailable");
  while ((1u << log_n_) < n) ++log_n_;

  // ψ = g^((q-1)/2n) for the first quadratic non-residue g is a primitive
  // 2n-th root of unity: ψ^n = g^((q-1)/2) = -1.
  uint64_t exp = (q - 1) / (2 * uint64_t(n));
  for (uint64_t g = 2;; ++g) {
    uint64_t cand = mod_.pow(g, exp);
    if (mod_.pow(cand, n) == q - 1) {
      psi_ = cand;
      break;
    }
  }
  uint64_t psi_inv = mod_.inv(psi_);

  std::vector<uint64_t> pw(n), pwinv(n);
  pw[0] = pwinv[0] = 1;
  for (uint32_t i = 1; i < n; ++i) {
    pw[i] = mod_.mul(pw[i - 1], psi_);
    pwinv[i] = mod_.mul(pwinv[i - 1], psi_inv);
  }
  fwd_.resize(n);
  inv_.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint64_t w = pw[bit_reverse(i, log_n_)];
    uint64_t wi = pwinv[bit_reverse(i, log_n_)];
    fwd_[i] = {w, shoup_of(w, q)};
    inv_[i] = {wi, shoup_of(wi, q)};
  }
  uint64_t ninv = mod_.inv(n);
  n_inv_ = {ninv, shoup_of(ninv, q)};
}

void NttTables::forward(uint64_t* a) const {
  uint32_t t = n_;
  for (uint32_t m = 1; m < n_; m <<= 1) {
    t >>= 1;
    for (uint32_t i = 0; i < m; ++i) {
      const ShoupPair s = fwd_[m + i];
      uint64_t* p = a + 2 * i * t;
      for (uint32_t j = 0; j < t; ++j) {
        uint64_t u = p[j];
        uint64_t v = mul_shoup(p[j + t], s.w, s.w_shoup, q_);
        p[j] = mod_.add(u, v);
        p[j + t] = mod_.sub(u, v);
      }
    }
  }
}

void NttTables::inverse(uint64_t* a) const {
  uint32_t t = 1;
  for (uint32_t m = n_; m > 1; m >>= 1) {
    uint32_t h = m >> 1;
    uint64_t* p = a;
    for (uint32_t i = 0; i < h; ++i) {
      const ShoupPair s = inv_[h + i];
      for (uint32_t j = 0; j < t; ++j) {
        uint64_t u = p[j];
        uint64_t v = p[j + t];
        p[j] = mod_.add(u, v);
        p[j + t] = mul_shoup(mod_.sub(u, v), s.w, s.w_shoup, q_);
      }
      p += 2 * t;
    }
    t <<= 1;
  }
  for (uint32_t j = 0; j < n_; ++j) a[j] = mul_shoup(a[j], n_inv_.w, n_inv_.w_shoup, q_);
}

RingContext RingContext::make(uint32_t n, uint64_t q) {
  RingContext ctx;
  ctx.n = n;
  ctx.q = q;
  ctx.mod = ModArith(q);
  ctx.ntt = std::make_shared<NttTables>(n, q);
  return ctx;
}

RingElem ring_zero(const RingContext& ctx) { return RingElem(ctx.n); }

RingElem ring_one(const RingContext& ctx) { return ring_constant(ctx, 1); }

RingElem ring_constant(const RingContext& ctx, uint64_t c) {
  RingElem f(ctx.n);
  f.c[0] = c % ctx.q;
  return f;
}

RingElem ring_add(const RingContext& ctx, const RingElem& f, const RingElem& g) {
  check_same(ctx, f, g);
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) out.c[i] = ctx.mod.add(f.c[i], g.c[i]);
  return out;
}

RingElem ring_sub(const RingContext& ctx, const RingElem& f, const RingElem& g) {
  check_same(ctx, f, g);
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) out.c[i] = ctx.mod.sub(f.c[i], g.c[i]);
  return out;
}

RingElem ring_neg(const RingContext& ctx, const RingElem& f) {
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) out.c[i] = ctx.mod.neg(f.c[i]);
  return out;
}

RingElem ring_scalar_mul(const RingContext& ctx, uint64_t s, const RingElem& f) {
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) out.c[i] = ctx.mod.mul(s, f.c[i]);
  return out;
}

RingElem ring_mul(const RingContext& ctx, const RingElem& f, const RingElem& g) {
  check_same(ctx, f, g);
  RingElem a = f, b = g;
  ctx.ntt->forward(a.c.data());
  ctx.ntt->forward(b.c.data());
  for (uint32_t i = 0; i < ctx.n; ++i) a.c[i] = ctx.mod.mul(a.c[i], b.c[i]);
  ctx.ntt->inverse(a.c.data());
  return a;
}

std::optional<RingElem> ring_inverse(const RingContext& ctx, const RingElem& f) {
  if (f.size() != ctx.n) throw DimensionError("ring_inverse: bad dimension");
  RingElem a = f;
  ctx.ntt->forward(a.c.data());
  for (uint32_t i = 0; i < ctx.n; ++i) {
    if (a.c[i] == 0) return std::nullopt;
    a.c[i] = ctx.mod.inv(a.c[i]);
  }
  ctx.ntt->inverse(a.c.data());
  return a;
}

bool ring_is_invertible(const RingContext& ctx, const RingElem& f) {
  RingElem a = f;
  ctx.ntt->forward(a.c.data());
  for (uint32_t i = 0; i < ctx.n; ++i)
    if (a.c[i] == 0) return false;
  return true;
}

bool ring_is_zero(const RingElem& f) {
  for (uint64_t v : f.c)
    if (v) return false;
  return true;
}

RingElem ntt_forward(const RingContext& ctx, const RingElem& f) {
  RingElem a = f;
  ctx.ntt->forward(a.c.data());
  return a;
}

RingElem ntt_inverse(const RingContext& ctx, const RingElem& f) {
  RingElem a = f;
  ctx.ntt->inverse(a.c.data());
  return a;
}

RingElem sample_uniform_ring(const RingContext& ctx, ChaChaRng& rng) {
  RingElem f(ctx.n);
  uint64_t mask = (ctx.q & (ctx.q - 1)) == 0 ? ctx.q - 1 : (~uint64_t(0) >> __builtin_clzll(ctx.q));
  for (uint32_t i = 0; i < ctx.n; ++i) {
    uint64_t v;
    do {
      v = rng.next_u64() & mask;
    } while (v >= ctx.q);
    f.c[i] = v;
  }
  return f;
}

RingElem reduce_poly(const RingContext& ctx, const IntPoly& p) {
  if (p.size() != ctx.n) throw DimensionError("reduce_poly: bad dimension");
  RingElem f(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) f.c[i] = ctx.mod.from_signed(p[i]);
  return f;
}

IntPoly centered(const RingContext& ctx, const RingElem& f) {
  IntPoly p(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) p[i] = ctx.mod.centered(f.c[i]);
  return p;
}

IntPoly recenter(const RingContext& ctx, const IntPoly& p) {
  return centered(ctx, reduce_poly(ctx, p));
}

RingElem ring_dot(const RingContext& ctx, const RingVec& a, const RingVec& b) {
  if (a.size() != b.size()) throw DimensionError("ring_dot: length mismatch");
  RingElem acc(ctx.n);
  for (size_t i = 0; i < a.size(); ++i) {
    check_same(ctx, a[i], b[i]);
    RingElem x = a[i], y = b[i];
    ctx.ntt->forward(x.c.data());
    ctx.ntt->forward(y.c.data());
    for (uint32_t j = 0; j < ctx.n; ++j)
      acc.c[j] = ctx.mod.add(acc.c[j], ctx.mod.mul(x.c[j], y.c[j]));
  }
  ctx.ntt->inverse(acc.c.data());
  return acc;
}

RingElem ring_dot_ntt(const RingContext& ctx, const RingVec& a_ntt, const RingVec& b) {
  if (a_ntt.size() != b.size()) throw DimensionError("ring_dot_ntt: length mismatch");
  RingElem acc(ctx.n);
  for (size_t i = 0; i < a_ntt.size(); ++i) {
    RingElem y = b[i];
    ctx.ntt->forward(y.c.data());
    for (uint32_t j = 0; j < ctx.n; ++j)
      acc.c[j] = ctx.mod.add(acc.c[j], ctx.mod.mul(a_ntt[i].c[j], y.c[j]));
  }
  ctx.ntt->inverse(acc.c.data());
  return acc;
}

RingVec ring_vec_scalar_mul(const RingContext& ctx, const RingVec& a, const RingElem& s) {
  RingElem sn = s;
  ctx.ntt->forward(sn.c.data());
  RingVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    RingElem x = a[i];
    ctx.ntt->forward(x.c.data());
    for (uint32_t j = 0; j < ctx.n; ++j) x.c[j] = ctx.mod.mul(x.c[j], sn.c[j]);
    ctx.ntt->inverse(x.c.data());
    out[i] = std::move(x);
  }
  return out;
}

RingVec ring_vec_add(const RingContext& ctx, const RingVec& a, const RingVec& b) {
  if (a.size() != b.size()) throw DimensionError("ring_vec_add: length mismatch");
  RingVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = ring_add(ctx, a[i], b[i]);
  return out;
}

RingVec reduce_vec(const RingContext& ctx, const IntVec& v) {
  RingVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = reduce_poly(ctx, v[i]);
  return out;
}

IntVec centered_vec(const RingContext& ctx, const RingVec& v) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = centered(ctx, v[i]);
  return out;
}

IntPoly negacyclic_mul_int(const IntPoly& a, const IntPoly& b) {
  size_t n = a.size();
  if (b.size() != n) throw DimensionError("negacyclic_mul_int: length mismatch");
  IntPoly out(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      int64_t p = a[i] * b[j];
      size_t idx = i + j;
      if (idx < n)
        out[idx] += p;
      else
        out[idx - n] -= p;
    }
  }
  return out;
}

u128 norm_sq(const IntPoly& p) {
  u128 acc = 0;
  for (int64_t v : p) acc += static_cast<u128>((__int128)v * v);
  return acc;
}

u128 norm_sq(const IntVec& v) {
  u128 acc = 0;
  for (const IntPoly& p : v) acc += norm_sq(p);
  return acc;
}

double norm(const IntVec& v) { return std::sqrt(static_cast<double>(norm_sq(v))); }

}  // namespace pkeet
