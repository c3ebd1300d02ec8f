#ifndef PKEET_GAUSS_HPP
#define PKEET_GAUSS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "pkeet/fft.hpp"
#include "pkeet/ring.hpp"
#include "pkeet/rng.hpp"

namespace pkeet {

/// Gaussian widths of the scheme. The convention throughout is
/// ρ_s(x) = exp(-π x²/s²), so D_{Z,s} has standard deviation ≈ s/√(2π).
struct GaussParams {
  double sigma = 0;  // trapdoor sampling width
  double alpha = 0;  // G-sampling width, √5·σ
  double zeta = 0;   // preimage width
  double tau = 0;    // encryption error width
  double gamma = 0;  // gadget-block noise width in CT₃/CT₄
  double mu = 0;     // proof-side width; stored, unused at runtime
  double t = 0;      // tail-cut factor
};

/// Exact-style rejection sampler (Karney) for D_{Z,width,center} with a hard
/// tail cut |x - center| <= tail·width. Handles arbitrary width and center;
/// internal uniforms have 2^-64 granularity, putting the per-sample
/// statistical distance around 2^-60 against the 2^-64 design target (the
/// fixed-width CDT path below meets the target outright).
int64_t sample_z(double width, double center, double tail, ChaChaRng& rng);

/// Cumulative distribution table for zero-centered D_{Z,width} truncated at
/// tail·width. Probabilities are accumulated in 128-bit fixed point; a 2^16
/// guide table makes a draw cost O(1).
class CdtSampler {
 public:
  CdtSampler(double width, double tail);
  int64_t sample(ChaChaRng& rng) const;
  double width() const { return width_; }

 private:
  double width_;
  int64_t tail_;
  std::vector<u128> cdf_;
  std::vector<uint32_t> guide_;
};

/// Prebuilt CDTs for a parameter set's fixed widths. Lookups fall back to
/// nullptr (callers then use sample_z).
class SamplerSet {
 public:
  void add(double width, double tail);
  const CdtSampler* lookup(double width) const;

 private:
  std::vector<std::unique_ptr<CdtSampler>> tables_;
};

/// n i.i.d. D_{Z,width} coefficients.
IntPoly sample_int_poly(uint32_t n, double width, double tail, ChaChaRng& rng,
                        const SamplerSet* tables = nullptr);

/// len polynomials of n i.i.d. coefficients each; resamples in the
/// (practically unreachable) event the whole-vector norm bound
/// ‖v‖ <= tail·width·√(len·n) fails.
IntVec sample_ring_vec(uint32_t n, size_t len, double width, double tail, ChaChaRng& rng,
                       const SamplerSet* tables = nullptr);

/// FFT-domain data derived from the trapdoor rows T ∈ R^{2×k}: the Gram
/// (TT*)_{ij} and the largest singular value of T, plus the NTT forms of the
/// rows for exact ring products.
struct TrapdoorTransforms {
  std::vector<cd> g11, g12, g22;  // slots of (TT*)₁₁, (TT*)₁₂, (TT*)₂₂
  double s1 = 0;                  // s₁(T), exact over the slot decomposition
  RingVec rows_ntt;               // 2k entries, row-major, NTT domain
};

TrapdoorTransforms make_trapdoor_transforms(const RingContext& ctx, const FftEngine& fft,
                                            const IntVec& rows);

/// SampleP: p ← D_{Z^{mn},√Σ_p} with Σ_p = ζ²I_m − α²(T;I_k)(Tᵀ I_k).
/// Gadget-block coordinates are i.i.d. of width √(ζ²−α²); the two leading
/// ring coordinates are drawn from the conditional law by the recursive
/// field sampler (GM18 §4.1 structure). Throws NotPositiveDefiniteError when
/// ζ² <= α²(s₁(T)²+1).
IntVec sample_p(const RingContext& ctx, const FftEngine& fft, const IntVec& rows,
                const TrapdoorTransforms& xf, double zeta, double alpha, double tail,
                ChaChaRng& rng, const SamplerSet* tables = nullptr);

}  // namespace pkeet

#endif
