#include "pkeet/trapdoor.hpp"

#include <atomic>
#include <cassert>
#include <cmath>

#include "pkeet/errors.hpp"

namespace pkeet {

namespace {

std::atomic<uint64_t> g_sample_pre_calls{0};

/// Exact integer T·z for the 2×k row-major trapdoor. Schoolbook at small n,
/// centered NTT recovery otherwise (products stay far below q/2 there).
std::array<IntPoly, 2> trapdoor_apply_int(const RingContext& ctx, const IntVec& rows,
                                          const TrapdoorTransforms& xf, const IntVec& z) {
  const uint32_t n = ctx.n;
  const size_t k = z.size();
  std::array<IntPoly, 2> out{IntPoly(n, 0), IntPoly(n, 0)};
  if (n <= 64) {
    for (size_t l = 0; l < k; ++l) {
      IntPoly a = negacyclic_mul_int(rows[l], z[l]);
      IntPoly b = negacyclic_mul_int(rows[k + l], z[l]);
      for (uint32_t j = 0; j < n; ++j) {
        out[0][j] += a[j];
        out[1][j] += b[j];
      }
    }
  } else {
    RingVec zr = reduce_vec(ctx, z);
    RingVec row0(xf.rows_ntt.begin(), xf.rows_ntt.begin() + k);
    RingVec row1(xf.rows_ntt.begin() + k, xf.rows_ntt.end());
    out[0] = centered(ctx, ring_dot_ntt(ctx, row0, zr));
    out[1] = centered(ctx, ring_dot_ntt(ctx, row1, zr));
  }
  return out;
}

}  // namespace

GadgetBasis::GadgetBasis(uint64_t q, uint32_t k) : k_(k), q_(q) {
  cols_.assign(size_t(k) * k, 0.0);
  // column i < k-1: 2·e_i − e_{i+1}; last column: the bits of q
  for (uint32_t i = 0; i + 1 < k; ++i) {
    cols_[size_t(i) * k + i] = 2.0;
    cols_[size_t(i) * k + i + 1] = -1.0;
  }
  for (uint32_t j = 0; j < k; ++j)
    cols_[size_t(k - 1) * k + j] = static_cast<double>((q >> j) & 1);

  gs_ = cols_;
  gs_norm_sq_.assign(k, 0.0);
  for (uint32_t i = 0; i < k; ++i) {
    double* bi = &gs_[size_t(i) * k];
    for (uint32_t j = 0; j < i; ++j) {
      const double* bj = &gs_[size_t(j) * k];
      double dot = 0;
      const double* ci = &cols_[size_t(i) * k];
      for (uint32_t t = 0; t < k; ++t) dot += ci[t] * bj[t];
      double mu = dot / gs_norm_sq_[j];
      for (uint32_t t = 0; t < k; ++t) bi[t] -= mu * bj[t];
    }
    double ns = 0;
    for (uint32_t t = 0; t < k; ++t) ns += bi[t] * bi[t];
    gs_norm_sq_[i] = ns;
    max_gs_norm_ = std::max(max_gs_norm_, std::sqrt(ns));
  }
  if (max_gs_norm_ > std::sqrt(5.0) + 1e-9)
    throw Error("gadget basis quality bound violated");
}

void GadgetBasis::sample_coset(uint64_t target, double width, double tail, ChaChaRng& rng,
                               int64_t* out) const {
  const uint32_t k = k_;
  // particular solution: the bit decomposition of the target
  std::vector<double> c(k);
  for (uint32_t j = 0; j < k; ++j) c[j] = static_cast<double>((target >> j) & 1);
  for (uint32_t i = k; i-- > 0;) {
    const double* bt = &gs_[size_t(i) * k];
    double dot = 0;
    for (uint32_t t = 0; t < k; ++t) dot += c[t] * bt[t];
    double center = dot / gs_norm_sq_[i];
    double si = width / std::sqrt(gs_norm_sq_[i]);
    int64_t z = sample_z(si, center, tail, rng);
    const double* col = &cols_[size_t(i) * k];
    if (i + 1 < k) {
      c[i] -= 2.0 * z;
      c[i + 1] += static_cast<double>(z);
    } else {
      for (uint32_t t = 0; t < k; ++t) c[t] -= z * col[t];
    }
  }
  for (uint32_t t = 0; t < k; ++t) out[t] = static_cast<int64_t>(std::llround(c[t]));
}

RingElem gadget_apply(const RingContext& ctx, uint32_t k, const RingVec& z) {
  if (z.size() != k) throw DimensionError("gadget_apply: expected k elements");
  RingElem acc(ctx.n);
  uint64_t pw = 1;
  for (uint32_t l = 0; l < k; ++l) {
    for (uint32_t j = 0; j < ctx.n; ++j)
      acc.c[j] = ctx.mod.add(acc.c[j], ctx.mod.mul(pw % ctx.q, z[l].c[j]));
    pw = (pw << 1);
  }
  return acc;
}

RingElem gadget_apply_int(const RingContext& ctx, uint32_t k, const IntVec& z) {
  return gadget_apply(ctx, k, reduce_vec(ctx, z));
}

IntVec gadget_decompose(const RingContext& ctx, uint32_t k, const RingElem& u) {
  if (u.size() != ctx.n) throw DimensionError("gadget_decompose: bad dimension");
  IntVec out(k, IntPoly(ctx.n, 0));
  for (uint32_t j = 0; j < ctx.n; ++j) {
    uint64_t v = u.c[j];
    for (uint32_t l = 0; l < k; ++l) out[l][j] = static_cast<int64_t>((v >> l) & 1);
  }
  return out;
}

IntVec sample_poly_g(const Params& p, double sigma, const RingElem& v, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  if (v.size() != ctx.n) throw DimensionError("sample_poly_g: bad dimension");
  const double width = std::sqrt(5.0) * sigma;
  const uint32_t k = p.k;
  IntVec z(k, IntPoly(ctx.n, 0));
  std::vector<int64_t> slot(k);
  for (uint32_t j = 0; j < ctx.n; ++j) {
    p.gadget->sample_coset(v.c[j], width, p.gauss.t, rng, slot.data());
    for (uint32_t l = 0; l < k; ++l) z[l][j] = slot[l];
  }
  return z;
}

GTrapdoor make_trapdoor(const Params& p, IntVec rows, RingElem tag, double sigma) {
  GTrapdoor T;
  T.rows = std::move(rows);
  T.tag = std::move(tag);
  T.sigma_used = sigma;
  T.xf = make_trapdoor_transforms(*p.ring, *p.fft, T.rows);
  return T;
}

std::pair<RingVec, GTrapdoor> trap_gen(const Params& p, double sigma,
                                       std::optional<RingVec> a_prime,
                                       std::optional<RingElem> h, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  const uint32_t k = p.k;
  const uint32_t mk = p.m - p.k;
  if (!a_prime) {
    RingVec ap(mk);
    for (uint32_t i = 0; i < mk; ++i) ap[i] = sample_uniform_ring(ctx, rng);
    a_prime = std::move(ap);
    if (!h) h = ring_one(ctx);
  }
  if (!h) h = ring_one(ctx);
  if (a_prime->size() != mk) throw DimensionError("trap_gen: a' must have m-k entries");

  // per-column sampling keeps the ‖T‖ ≤ tσ√((m−k)n) column bound
  IntVec rows(size_t(mk) * k);
  for (uint32_t l = 0; l < k; ++l) {
    IntVec col = sample_ring_vec(ctx.n, mk, sigma, p.gauss.t, rng, p.samplers.get());
    for (uint32_t i = 0; i < mk; ++i) rows[size_t(i) * k + l] = recenter(ctx, col[i]);
  }
  GTrapdoor T = make_trapdoor(p, std::move(rows), *h, sigma);

  RingVec a(p.m);
  for (uint32_t i = 0; i < mk; ++i) a[i] = (*a_prime)[i];

  RingVec ap_ntt(mk);
  for (uint32_t i = 0; i < mk; ++i) ap_ntt[i] = ntt_forward(ctx, (*a_prime)[i]);
  for (uint32_t l = 0; l < k; ++l) {
    RingElem acc(ctx.n);
    for (uint32_t i = 0; i < mk; ++i) {
      const RingElem& trow = T.xf.rows_ntt[size_t(i) * k + l];
      for (uint32_t j = 0; j < ctx.n; ++j)
        acc.c[j] = ctx.mod.add(acc.c[j], ctx.mod.mul(ap_ntt[i].c[j], trow.c[j]));
    }
    acc = ntt_inverse(ctx, acc);
    uint64_t pw = ctx.mod.from_signed(int64_t(1) << l);
    a[mk + l] = ring_sub(ctx, ring_scalar_mul(ctx, pw, *h), acc);
  }
  return {std::move(a), std::move(T)};
}

RingVec tag_shift(const Params& p, const RingVec& a, const RingElem& h) {
  const RingContext& ctx = *p.ring;
  if (a.size() != p.m) throw DimensionError("tag_shift: bad vector length");
  RingVec out = a;
  const uint32_t mk = p.m - p.k;
  for (uint32_t l = 0; l < p.k; ++l) {
    uint64_t pw = ctx.mod.from_signed(int64_t(1) << l);
    out[mk + l] = ring_add(ctx, out[mk + l], ring_scalar_mul(ctx, pw, h));
  }
  return out;
}

IntVec sample_p(const Params& p, double zeta, double alpha, const GTrapdoor& T, ChaChaRng& rng) {
  return sample_p(*p.ring, *p.fft, T.rows, T.xf, zeta, alpha, p.gauss.t, rng,
                  p.samplers.get());
}

IntVec sample_pre(const Params& p, const GTrapdoor& T, const RingVec& a, const RingElem& h,
                  double zeta, double sigma, double alpha, const RingElem& u, ChaChaRng& rng) {
  const RingContext& ctx = *p.ring;
  g_sample_pre_calls.fetch_add(1, std::memory_order_relaxed);
  auto hinv = ring_inverse(ctx, h);
  if (!hinv) throw TagNotInvertibleError("sample_pre: tag is not invertible");

  IntVec perturb = sample_p(p, zeta, alpha, T, rng);
  RingElem ap = ring_dot(ctx, a, reduce_vec(ctx, perturb));
  RingElem v = ring_mul(ctx, *hinv, ring_sub(ctx, u, ap));
  IntVec z = sample_poly_g(p, sigma, v, rng);

  const uint32_t mk = p.m - p.k;
  std::array<IntPoly, 2> tz = trapdoor_apply_int(ctx, T.rows, T.xf, z);
  IntVec x(p.m);
  for (uint32_t i = 0; i < mk; ++i) {
    x[i] = perturb[i];
    for (uint32_t j = 0; j < ctx.n; ++j) x[i][j] += tz[i][j];
  }
  for (uint32_t l = 0; l < p.k; ++l) {
    x[mk + l] = perturb[mk + l];
    for (uint32_t j = 0; j < ctx.n; ++j) x[mk + l][j] += z[l][j];
  }

  RingElem check = ring_dot(ctx, a, reduce_vec(ctx, x));
  if (!(check == u)) throw Error("sample_pre: recomposition self-check failed");
  return x;
}

uint64_t sample_pre_invocations() { return g_sample_pre_calls.load(std::memory_order_relaxed); }

}  // namespace pkeet
