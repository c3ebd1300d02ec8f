#include "pkeet/gauss.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "pkeet/errors.hpp"

#ifdef PKEET_HAVE_QUADMATH
#include <quadmath.h>
#endif

namespace pkeet {

namespace {

// ---- Karney's exact-style sampler -----------------------------------------
//
// Samples the discrete normal with standard deviation `sdev` and mean `mean`
// using only uniform deviates (Karney, "Sampling exactly from the normal
// distribution", 2016). Bernoulli(e^{-1/2}) trials drive the envelope; the
// acceptance step is a von Neumann chain.

bool alg_h(ChaChaRng& rng) {
  long double a = rng.real64();
  if (!(a < 0.5L)) return true;
  for (;;) {
    long double b = rng.real64();
    if (!(b < a)) return false;
    a = rng.real64();
    if (!(a < b)) return true;
  }
}

// Bernoulli(e^{-n/2})
bool alg_p(int n, ChaChaRng& rng) {
  while (n-- > 0) {
    if (!alg_h(rng)) return false;
  }
  return true;
}

int alg_g(ChaChaRng& rng) {
  int k = 0;
  while (alg_h(rng)) ++k;
  return k;
}

// Bernoulli(e^{-x(2k+x)/2}) for x in [0,1)
bool alg_b(int k, long double x, ChaChaRng& rng) {
  long double y = x;
  uint64_t n = 0;
  long double m = 2.0L * k + 2.0L;
  for (;; ++n) {
    long double z = rng.real64();
    if (!(z < y)) break;
    long double r = rng.real64();
    if (!(r < (2.0L * k + x) / m)) break;
    y = z;
  }
  return (n & 1) == 0;
}

int64_t karney(long double sdev, long double mean, ChaChaRng& rng) {
  const uint64_t ceil_sdev = static_cast<uint64_t>(std::ceil((double)sdev));
  for (;;) {
    int k = alg_g(rng);
    if (!alg_p(k * (k - 1), rng)) continue;
    int64_t sign = rng.bit() ? 1 : -1;
    long double di0 = sdev * k + sign * mean;
    long double i0 = std::ceil((double)di0);
    long double x0 = (i0 - di0) / sdev;
    uint64_t j = rng.below(ceil_sdev ? ceil_sdev : 1);
    long double x = x0 + static_cast<long double>(j) / sdev;
    if (!(x < 1.0L)) continue;
    if (x == 0.0L && sign < 0 && k == 0) continue;
    int h = k + 1;
    while (h-- > 0 && alg_b(k, x, rng)) {
    }
    if (!(h < 0)) continue;
    return sign * static_cast<int64_t>(i0 + static_cast<long double>(j));
  }
}

std::vector<cd> to_slots(const FftEngine& fft, const IntPoly& p) {
  std::vector<double> d(p.size());
  for (size_t i = 0; i < p.size(); ++i) d[i] = static_cast<double>(p[i]);
  return fft.forward(d);
}

// ---- recursive field sampler ----------------------------------------------
//
// sample_fz draws z ∈ Z^d (as a negacyclic coefficient vector) from the
// discrete Gaussian of covariance f (a self-adjoint, slotwise-positive field
// element) around center c. Descends by even/odd coefficient splitting: the
// pair (z_even, z_odd) over dimension d/2 has Gram [[f0, f1],[f1*, f0]] with
// f(x) = f0(x²) + x·f1(x²).

struct SplitPair {
  std::vector<cd> even, odd;
};

SplitPair split_slots(const FftEngine& fft, const std::vector<cd>& f) {
  uint32_t d = static_cast<uint32_t>(f.size());
  uint32_t h = d / 2;
  SplitPair out;
  out.even.resize(h);
  out.odd.resize(h);
  for (uint32_t j = 0; j < h; ++j) {
    cd w = fft.point(d, j);
    out.even[j] = (f[j] + f[j + h]) * 0.5;
    out.odd[j] = (f[j] - f[j + h]) / (2.0 * w);
  }
  return out;
}

std::vector<int64_t> sample_fz(const FftEngine& fft, const std::vector<cd>& f,
                               const std::vector<cd>& c, double tail, ChaChaRng& rng);

// Covariance [[a, b],[b*, d]] over dimension `dim`, centers (c0, c1);
// samples the second component first, then the first from the conditional.
std::pair<std::vector<int64_t>, std::vector<int64_t>> sample_2z(
    const FftEngine& fft, const std::vector<cd>& a, const std::vector<cd>& b,
    const std::vector<cd>& d, const std::vector<cd>& c0, const std::vector<cd>& c1,
    double tail, ChaChaRng& rng) {
  const size_t dim = d.size();
  std::vector<int64_t> z1 = sample_fz(fft, d, c1, tail, rng);

  std::vector<cd> z1_slots = to_slots(fft, IntPoly(z1.begin(), z1.end()));
  std::vector<cd> c0p(dim), schur(dim);
  for (size_t j = 0; j < dim; ++j) {
    double dj = d[j].real();
    if (!(dj > 0)) throw NotPositiveDefiniteError("perturbation covariance has a nonpositive slot");
    cd bd = b[j] / dj;
    c0p[j] = c0[j] + bd * (z1_slots[j] - c1[j]);
    schur[j] = a[j] - bd * std::conj(b[j]);
  }
  std::vector<int64_t> z0 = sample_fz(fft, schur, c0p, tail, rng);
  return {std::move(z0), std::move(z1)};
}

std::vector<int64_t> sample_fz(const FftEngine& fft, const std::vector<cd>& f,
                               const std::vector<cd>& c, double tail, ChaChaRng& rng) {
  const size_t dim = f.size();
  if (dim == 1) {
    double var = f[0].real();
    if (!(var > 0)) throw NotPositiveDefiniteError("perturbation covariance has a nonpositive leaf");
    return {sample_z(std::sqrt(var), c[0].real(), tail, rng)};
  }
  SplitPair fs = split_slots(fft, f);
  SplitPair cs = split_slots(fft, c);
  auto [ze, zo] = sample_2z(fft, fs.even, fs.odd, fs.even, cs.even, cs.odd, tail, rng);
  std::vector<int64_t> out(dim);
  for (size_t j = 0; j < dim / 2; ++j) {
    out[2 * j] = ze[j];
    out[2 * j + 1] = zo[j];
  }
  return out;
}

}  // namespace

int64_t sample_z(double width, double center, double tail, ChaChaRng& rng) {
  if (!(width > 0)) throw Error("sample_z: width must be positive");
  const long double sdev = static_cast<long double>(width) / std::sqrt(2.0L * M_PIl);
  for (;;) {
    int64_t v = karney(sdev, static_cast<long double>(center), rng);
    if (std::abs(static_cast<double>(v) - center) <= tail * width) return v;
  }
}

CdtSampler::CdtSampler(double width, double tail) : width_(width) {
  tail_ = static_cast<int64_t>(std::floor(tail * width));
  size_t count = static_cast<size_t>(2 * tail_ + 1);
  cdf_.resize(count);
#ifdef PKEET_HAVE_QUADMATH
  std::vector<__float128> mass(count);
  __float128 total = 0;
  for (size_t i = 0; i < count; ++i) {
    __float128 x = static_cast<__float128>(static_cast<int64_t>(i) - tail_);
    mass[i] = expq(-static_cast<__float128>(M_PIq) * x * x /
                   (static_cast<__float128>(width) * static_cast<__float128>(width)));
    total += mass[i];
  }
  __float128 acc = 0;
  const __float128 top = 0x1p64Q * 0x1p64Q;  // 2^128
  for (size_t i = 0; i < count; ++i) {
    acc += mass[i];
    __float128 frac = acc / total;
    u128 v = frac >= 1 ? ~u128(0) : static_cast<u128>(frac * top);
    cdf_[i] = v;
  }
#else
  std::vector<long double> mass(count);
  long double total = 0;
  for (size_t i = 0; i < count; ++i) {
    long double x = static_cast<long double>(static_cast<int64_t>(i) - tail_);
    mass[i] = expl(-M_PIl * x * x / (static_cast<long double>(width) * width));
    total += mass[i];
  }
  long double acc = 0;
  for (size_t i = 0; i < count; ++i) {
    acc += mass[i];
    long double frac = acc / total;
    cdf_[i] = frac >= 1 ? ~u128(0) : static_cast<u128>(frac * 0x1p64L * 0x1p64L);
  }
#endif
  cdf_.back() = ~u128(0);

  guide_.assign(1u << 16, 0);
  size_t idx = 0;
  for (uint32_t b = 0; b < (1u << 16); ++b) {
    u128 lo = u128(b) << 112;
    while (idx + 1 < count && cdf_[idx] < lo) ++idx;
    guide_[b] = static_cast<uint32_t>(idx);
  }
}

int64_t CdtSampler::sample(ChaChaRng& rng) const {
  u128 r = (u128(rng.next_u64()) << 64) | rng.next_u64();
  size_t i = guide_[static_cast<uint32_t>(r >> 112)];
  while (cdf_[i] <= r) ++i;
  return static_cast<int64_t>(i) - tail_;
}

void SamplerSet::add(double width, double tail) {
  if (lookup(width)) return;
  tables_.push_back(std::make_unique<CdtSampler>(width, tail));
}

const CdtSampler* SamplerSet::lookup(double width) const {
  for (const auto& t : tables_)
    if (t->width() == width) return t.get();
  return nullptr;
}

IntPoly sample_int_poly(uint32_t n, double width, double tail, ChaChaRng& rng,
                        const SamplerSet* tables) {
  const CdtSampler* cdt = tables ? tables->lookup(width) : nullptr;
  IntPoly p(n);
  if (cdt) {
    for (uint32_t i = 0; i < n; ++i) p[i] = cdt->sample(rng);
  } else {
    for (uint32_t i = 0; i < n; ++i) p[i] = sample_z(width, 0.0, tail, rng);
  }
  return p;
}

IntVec sample_ring_vec(uint32_t n, size_t len, double width, double tail, ChaChaRng& rng,
                       const SamplerSet* tables) {
  for (;;) {
    IntVec v(len);
    for (size_t i = 0; i < len; ++i) v[i] = sample_int_poly(n, width, tail, rng, tables);
    double bound = tail * width * std::sqrt(static_cast<double>(len) * n);
    if (len == 0 || norm(v) <= bound) return v;
  }
}

TrapdoorTransforms make_trapdoor_transforms(const RingContext& ctx, const FftEngine& fft,
                                            const IntVec& rows) {
  const uint32_t n = ctx.n;
  const size_t k = rows.size() / 2;
  TrapdoorTransforms xf;
  xf.g11.assign(n, 0);
  xf.g12.assign(n, 0);
  xf.g22.assign(n, 0);
  xf.rows_ntt.resize(rows.size());
  std::vector<std::vector<cd>> slots(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    slots[i] = to_slots(fft, rows[i]);
    xf.rows_ntt[i] = ntt_forward(ctx, reduce_poly(ctx, rows[i]));
  }
  for (size_t l = 0; l < k; ++l) {
    for (uint32_t j = 0; j < n; ++j) {
      cd a = slots[l][j];        // row 0, column l
      cd b = slots[k + l][j];    // row 1, column l
      xf.g11[j] += a * std::conj(a);
      xf.g12[j] += a * std::conj(b);
      xf.g22[j] += b * std::conj(b);
    }
  }
  double s1_sq = 0;
  for (uint32_t j = 0; j < n; ++j) {
    double tr = xf.g11[j].real() + xf.g22[j].real();
    double det_part = xf.g11[j].real() - xf.g22[j].real();
    double disc = std::sqrt(det_part * det_part + 4.0 * std::norm(xf.g12[j]));
    s1_sq = std::max(s1_sq, 0.5 * (tr + disc));
  }
  xf.s1 = std::sqrt(s1_sq);
  return xf;
}

IntVec sample_p(const RingContext& ctx, const FftEngine& fft, const IntVec& rows,
                const TrapdoorTransforms& xf, double zeta, double alpha, double tail,
                ChaChaRng& rng, const SamplerSet* tables) {
  const uint32_t n = ctx.n;
  const size_t k = rows.size() / 2;
  if (rows.size() != 2 * k || rows.empty()) throw DimensionError("sample_p: trapdoor must be 2×k");
  if (!(zeta > alpha)) throw NotPositiveDefiniteError("sample_p: zeta must exceed alpha");
  // Σ_p ≻ 0 iff ζ > α·s₁(T;I) and s₁(T;I)² = s₁(T)²+1.
  if (!(zeta * zeta > alpha * alpha * (xf.s1 * xf.s1 + 1.0)))
    throw NotPositiveDefiniteError("sample_p: zeta below alpha·s1(T;I)");

  const double s2_sq = zeta * zeta - alpha * alpha;
  const double s2 = std::sqrt(s2_sq);

  // gadget block: i.i.d. width √(ζ²−α²)
  IntVec phat(k);
  for (size_t l = 0; l < k; ++l) phat[l] = sample_int_poly(n, s2, tail, rng, tables);

  // conditional center for the leading 2-block: c = −α²/(ζ²−α²) · T·p̂
  IntPoly tp0(n, 0), tp1(n, 0);
  if (n <= 64) {
    for (size_t l = 0; l < k; ++l) {
      IntPoly a = negacyclic_mul_int(rows[l], phat[l]);
      IntPoly b = negacyclic_mul_int(rows[k + l], phat[l]);
      for (uint32_t j = 0; j < n; ++j) {
        tp0[j] += a[j];
        tp1[j] += b[j];
      }
    }
  } else {
    // centered mod-q recovery is exact: |T·p̂| ≤ k·n·max|T|·max|p̂| ≪ q/2
    RingVec ph_red = reduce_vec(ctx, phat);
    RingVec row0(xf.rows_ntt.begin(), xf.rows_ntt.begin() + k);
    RingVec row1(xf.rows_ntt.begin() + k, xf.rows_ntt.end());
    tp0 = centered(ctx, ring_dot_ntt(ctx, row0, ph_red));
    tp1 = centered(ctx, ring_dot_ntt(ctx, row1, ph_red));
  }
  const double scale = -(alpha * alpha) / s2_sq;
  std::vector<double> c0d(n), c1d(n);
  for (uint32_t j = 0; j < n; ++j) {
    c0d[j] = scale * static_cast<double>(tp0[j]);
    c1d[j] = scale * static_cast<double>(tp1[j]);
  }
  std::vector<cd> c0 = fft.forward(c0d);
  std::vector<cd> c1 = fft.forward(c1d);

  // Σ₂ = ζ²I₂ − β·TT* with β = α²ζ²/(ζ²−α²)
  const double beta = alpha * alpha * zeta * zeta / s2_sq;
  std::vector<cd> a(n), b(n), d(n);
  for (uint32_t j = 0; j < n; ++j) {
    a[j] = zeta * zeta - beta * xf.g11[j].real();
    b[j] = -beta * xf.g12[j];
    d[j] = zeta * zeta - beta * xf.g22[j].real();
  }
  auto [p0, p1] = sample_2z(fft, a, b, d, c0, c1, tail, rng);

  IntVec out;
  out.reserve(2 + k);
  out.push_back(IntPoly(p0.begin(), p0.end()));
  out.push_back(IntPoly(p1.begin(), p1.end()));
  for (size_t l = 0; l < k; ++l) out.push_back(std::move(phat[l]));
  return out;
}

}  // namespace pkeet
