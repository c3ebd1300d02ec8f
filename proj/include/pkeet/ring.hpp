#ifndef PKEET_RING_HPP
#define PKEET_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pkeet/errors.hpp"
#include "pkeet/mod_arith.hpp"
#include "pkeet/rng.hpp"

namespace pkeet {

class ChaChaRng;

/// Element of R_q = Z_q[x]/(x^n+1), canonical coefficients in [0, q).
struct RingElem {
  std::vector<uint64_t> c;

  RingElem() = default;
  explicit RingElem(size_t n) : c(n, 0) {}

  size_t size() const { return c.size(); }
  bool operator==(const RingElem&) const = default;
};

using RingVec = std::vector<RingElem>;

/// Element of R = Z[x]/(x^n+1) with signed integer coefficients; used for
/// everything that must stay short (trapdoors, preimages, noise).
using IntPoly = std::vector<int64_t>;
using IntVec = std::vector<IntPoly>;

/// Twiddle tables for the negacyclic NTT of size n mod q. Immutable after
/// construction; q must be prime with q ≡ 1 (mod 2n).
class NttTables {
 public:
  NttTables(uint32_t n, uint64_t q);

  void forward(uint64_t* a) const;   // in-place, standard order in, bitrev out
  void inverse(uint64_t* a) const;   // exact inverse of forward

  uint32_t n() const { return n_; }
  uint64_t psi() const { return psi_; }

 private:
  struct ShoupPair {
    uint64_t w;
    uint64_t w_shoup;
  };
  uint32_t n_ = 0;
  uint32_t log_n_ = 0;
  uint64_t q_ = 0;
  uint64_t psi_ = 0;
  ModArith mod_;
  std::vector<ShoupPair> fwd_;   // ψ^bitrev(i)
  std::vector<ShoupPair> inv_;   // ψ^-bitrev(i)
  ShoupPair n_inv_{};
};

/// Shared, read-only arithmetic context for one (n, q).
struct RingContext {
  uint32_t n = 0;
  uint64_t q = 0;
  ModArith mod;
  std::shared_ptr<const NttTables> ntt;

  static RingContext make(uint32_t n, uint64_t q);
};

// --- element ops -----------------------------------------------------------

RingElem ring_zero(const RingContext& ctx);
RingElem ring_one(const RingContext& ctx);
RingElem ring_constant(const RingContext& ctx, uint64_t c);

RingElem ring_add(const RingContext& ctx, const RingElem& f, const RingElem& g);
RingElem ring_sub(const RingContext& ctx, const RingElem& f, const RingElem& g);
RingElem ring_neg(const RingContext& ctx, const RingElem& f);
RingElem ring_scalar_mul(const RingContext& ctx, uint64_t s, const RingElem& f);

/// f·g reduced mod (x^n+1, q) via the NTT; bit-identical to schoolbook
/// negacyclic convolution.
RingElem ring_mul(const RingContext& ctx, const RingElem& f, const RingElem& g);

/// Inverse in R_q, or nullopt when some NTT slot of f is zero.
std::optional<RingElem> ring_inverse(const RingContext& ctx, const RingElem& f);

bool ring_is_invertible(const RingContext& ctx, const RingElem& f);
bool ring_is_zero(const RingElem& f);

RingElem ntt_forward(const RingContext& ctx, const RingElem& f);
RingElem ntt_inverse(const RingContext& ctx, const RingElem& f);

RingElem sample_uniform_ring(const RingContext& ctx, ChaChaRng& rng);

// --- signed views ----------------------------------------------------------

RingElem reduce_poly(const RingContext& ctx, const IntPoly& p);
IntPoly centered(const RingContext& ctx, const RingElem& f);

/// Reduce a signed poly and re-center it; canonical storage for short
/// objects that get serialized mod q.
IntPoly recenter(const RingContext& ctx, const IntPoly& p);

// --- vector ops ------------------------------------------------------------

/// Σ_i a[i]·b[i]; one batched transform pass.
RingElem ring_dot(const RingContext& ctx, const RingVec& a, const RingVec& b);

/// Σ_i a[i]·b[i] where a is already in NTT domain.
RingElem ring_dot_ntt(const RingContext& ctx, const RingVec& a_ntt, const RingVec& b);

RingVec ring_vec_scalar_mul(const RingContext& ctx, const RingVec& a, const RingElem& s);
RingVec ring_vec_add(const RingContext& ctx, const RingVec& a, const RingVec& b);

RingVec reduce_vec(const RingContext& ctx, const IntVec& v);
IntVec centered_vec(const RingContext& ctx, const RingVec& v);

/// Exact negacyclic product over Z (no reduction mod q), O(n²); intended for
/// small n where centered mod-q recovery of integer products is impossible.
IntPoly negacyclic_mul_int(const IntPoly& a, const IntPoly& b);

// --- norms (exact, over the signed view) -----------------------------------

u128 norm_sq(const IntPoly& p);
u128 norm_sq(const IntVec& v);
double norm(const IntVec& v);

}  // namespace pkeet

#endif
