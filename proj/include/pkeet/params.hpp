#ifndef PKEET_PARAMS_HPP
#define PKEET_PARAMS_HPP

#include <memory>
#include <string>
#include <vector>

#include "pkeet/gauss.hpp"
#include "pkeet/ring.hpp"

namespace pkeet {

class GadgetBasis;

/// Full parameter tuple with the shared read-only machinery (NTT tables,
/// FFT plans, CDTs, gadget basis) built once at construction.
struct Params {
  uint32_t n = 0;   // ring degree, power of two
  uint64_t q = 0;   // prime modulus, q ≡ 1 mod 2n
  uint32_t k = 0;   // ⌈log₂ q⌉
  uint32_t m = 0;   // ring-vector length, m−k = 2
  GaussParams gauss;
  std::string security_label;

  std::shared_ptr<const RingContext> ring;
  std::shared_ptr<const FftEngine> fft;
  std::shared_ptr<const SamplerSet> samplers;
  std::shared_ptr<const GadgetBasis> gadget;

  /// Known presets: "paper62" (n=1024, 62-bit q) and
  /// "toy17" (n=8, q=17; INSECURE, TESTS ONLY). Throws UnknownPresetError.
  static Params preset(const std::string& name);

  /// Assemble a parameter set from raw numbers (k, m derived).
  static Params make(uint32_t n, uint64_t q, GaussParams gauss, std::string label);

  bool operator==(const Params& o) const {
    return n == o.n && q == o.q && k == o.k && m == o.m;
  }
};

/// Evaluates every structural invariant and the §-style parameter rules;
/// returns the list of violated constraints (empty = ok). Violations are
/// data, not errors.
std::vector<std::string> validate(const Params& p);

}  // namespace pkeet

#endif
