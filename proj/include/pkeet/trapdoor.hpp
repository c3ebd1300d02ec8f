#ifndef PKEET_TRAPDOOR_HPP
#define PKEET_TRAPDOOR_HPP

#include <optional>
#include <utility>

#include "pkeet/gauss.hpp"
#include "pkeet/params.hpp"
#include "pkeet/ring.hpp"
#include "pkeet/rng.hpp"

namespace pkeet {

/// Basis B_q of Λ⊥_q(gᵀ) with its Gram-Schmidt data, used by the randomized
/// gadget-coset sampler (Klein/GPV over the k-dimensional integer lattice,
/// invoked once per coefficient slot). Construction asserts the quality
/// bound ‖B̃_q‖ ≤ √5.
class GadgetBasis {
 public:
  GadgetBasis(uint64_t q, uint32_t k);

  /// One coset sample: z ∈ Z^k with ⟨g,z⟩ ≡ target (mod q), Gaussian of
  /// width `width` around 0.
  void sample_coset(uint64_t target, double width, double tail, ChaChaRng& rng,
                    int64_t* out) const;

  double max_gs_norm() const { return max_gs_norm_; }
  uint32_t k() const { return k_; }

 private:
  uint32_t k_;
  uint64_t q_;
  std::vector<double> cols_;       // k×k basis, column-major
  std::vector<double> gs_;         // Gram-Schmidt vectors, column-major
  std::vector<double> gs_norm_sq_;
  double max_gs_norm_ = 0;
};

/// gᵀ·z for a k-vector of ring elements (g_i = constant 2^i).
RingElem gadget_apply(const RingContext& ctx, uint32_t k, const RingVec& z);
RingElem gadget_apply_int(const RingContext& ctx, uint32_t k, const IntVec& z);

/// Deterministic binary decomposition: gᵀ·out = u, coefficients in {0,1}.
IntVec gadget_decompose(const RingContext& ctx, uint32_t k, const RingElem& u);

/// SamplePolyG: z ← D_{Λ⊥q(gᵀ),√5·sigma,v}; n independent per-coefficient
/// gadget samples.
IntVec sample_poly_g(const Params& p, double sigma, const RingElem& v, ChaChaRng& rng);

/// g-trapdoor: small matrix T ∈ R^{(m−k)×k} with aᵀ(T;I_k) = h·gᵀ.
struct GTrapdoor {
  IntVec rows;        // row-major, rows[i*k + l], centered representatives
  RingElem tag;       // h
  double sigma_used = 0;
  TrapdoorTransforms xf;

  uint32_t k(const Params& p) const { return p.k; }
};

GTrapdoor make_trapdoor(const Params& p, IntVec rows, RingElem tag, double sigma);

/// Algorithm: choose T ← D_{R^(m−k)×k,σ}, a = (a′ᵀ | h·g − a′ᵀT)ᵀ. When
/// a_prime is absent it is drawn uniformly and h defaults to 1; h may be 0.
std::pair<RingVec, GTrapdoor> trap_gen(const Params& p, double sigma,
                                       std::optional<RingVec> a_prime,
                                       std::optional<RingElem> h, ChaChaRng& rng);

/// a_h = a + (0 | h·g): the trapdoor of a tag-0 vector becomes a tag-h one.
RingVec tag_shift(const Params& p, const RingVec& a, const RingElem& h);

/// SamplePre: x with aᵀx = u, statistically a discrete Gaussian of width ζ.
/// Throws TagNotInvertibleError when h has a zero NTT slot; verifies its own
/// output and aborts on mismatch.
IntVec sample_pre(const Params& p, const GTrapdoor& T, const RingVec& a, const RingElem& h,
                  double zeta, double sigma, double alpha, const RingElem& u, ChaChaRng& rng);

/// Wrapper matching the SampleP contract (Σ_p from ζ, α and the trapdoor).
IntVec sample_p(const Params& p, double zeta, double alpha, const GTrapdoor& T, ChaChaRng& rng);

/// Process-wide count of sample_pre invocations; the tests use deltas to
/// assert that preimage-holding trapdoors never trigger fresh sampling.
uint64_t sample_pre_invocations();

}  // namespace pkeet

#endif
