#ifndef PKEET_MOD_ARITH_HPP
#define PKEET_MOD_ARITH_HPP

#include <cstdint>

namespace pkeet {

using u128 = unsigned __int128;

/// Scalar arithmetic mod a fixed q < 2^62. Products use 128-bit intermediates
/// with Barrett reduction; the reduction path is branchless.
class ModArith {
 public:
  ModArith() = default;
  explicit ModArith(uint64_t q) : q_(q), ratio_(~u128(0) / q) {}

  uint64_t q() const { return q_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    s -= q_ & -uint64_t(s >= q_);
    return s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    uint64_t d = a - b;
    d += q_ & -uint64_t(a < b);
    return d;
  }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : q_ - a; }

  /// Barrett reduction of a 128-bit value.
  uint64_t reduce(u128 x) const {
    // quotient estimate: floor(x * floor(2^128/q) / 2^128), off by at most 1
    uint64_t xlo = static_cast<uint64_t>(x), xhi = static_cast<uint64_t>(x >> 64);
    uint64_t rlo = static_cast<uint64_t>(ratio_), rhi = static_cast<uint64_t>(ratio_ >> 64);
    u128 m1 = (u128)xhi * rlo;
    u128 m2 = (u128)xlo * rhi;
    u128 lo = (u128)static_cast<uint64_t>(m1) + static_cast<uint64_t>(m2) +
              static_cast<uint64_t>(((u128)xlo * rlo) >> 64);
    u128 qhat = (u128)xhi * rhi + (m1 >> 64) + (m2 >> 64) + (lo >> 64);
    uint64_t r = static_cast<uint64_t>(x - qhat * q_);
    r -= q_ & -uint64_t(r >= q_);
    r -= q_ & -uint64_t(r >= q_);
    return r;
  }

  uint64_t mul(uint64_t a, uint64_t b) const { return reduce((u128)a * b); }

  uint64_t pow(uint64_t base, uint64_t e) const {
    uint64_t acc = 1;
    uint64_t b = base >= q_ ? base % q_ : base;
    while (e) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }

  /// Inverse of a nonzero residue (q prime).
  uint64_t inv(uint64_t a) const { return pow(a, q_ - 2); }

  /// Centered representative in (-q/2, q/2].
  int64_t centered(uint64_t a) const {
    return a > q_ / 2 ? static_cast<int64_t>(a) - static_cast<int64_t>(q_)
                      : static_cast<int64_t>(a);
  }

  /// Canonical representative of a signed value.
  uint64_t from_signed(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(q_);
    if (r < 0) r += static_cast<int64_t>(q_);
    return static_cast<uint64_t>(r);
  }

 private:
  uint64_t q_ = 0;
  u128 ratio_ = 0;
};

inline uint32_t ceil_log2(uint64_t v) {
  uint32_t k = 0;
  while ((u128(1) << k) < v) ++k;
  return k;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  ModArith m(n);
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = m.pow(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = m.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace pkeet

#endif
