#ifndef PKEET_RNG_HPP
#define PKEET_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>

namespace pkeet {

/// Deterministic ChaCha20-based generator. A fixed (seed, stream) pair always
/// produces the same byte stream, which the tests and the PKEET_SEED hook rely
/// on. Instances are cheap; every sampling routine takes an exclusively owned
/// reference. Use fork() to derive independent child streams for parallel
/// bench trials.
class ChaChaRng {
 public:
  explicit ChaChaRng(uint64_t seed, uint64_t stream = 0);

  uint64_t next_u64();
  void fill_bytes(uint8_t* out, size_t len);

  /// Uniform in [0, bound), bound >= 1, by rejection on masked words.
  uint64_t below(uint64_t bound);

  bool bit() { return next_u64() & 1; }

  /// Uniform in [0,1) at 2^-64 granularity.
  long double real64() { return static_cast<long double>(next_u64()) * 0x1p-64L; }

  /// Standard normal deviate (Box-Muller, cached spare).
  double normal();

  /// Child generator with the same key and a distinct stream id.
  ChaChaRng fork(uint64_t stream) const { return ChaChaRng(seed_, stream); }

  uint64_t seed() const { return seed_; }

 private:
  void refill();

  std::array<uint32_t, 16> state_;
  std::array<uint8_t, 64> buf_;
  size_t pos_ = 64;
  uint64_t seed_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pkeet

#endif
