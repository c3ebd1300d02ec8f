#include "pkeet/rng.hpp"

#include <cmath>
#include <cstring>

namespace pkeet {

namespace {

inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint32_t rotl(uint32_t v, int s) { return (v << s) | (v >> (32 - s)); }

inline void quarter_round(uint32_t& a, uint32_t& b, uint32_t& c, uint32_t& d) {
  a += b; d ^= a; d = rotl(d, 16);
  c += d; b ^= c; b = rotl(b, 12);
  a += b; d ^= a; d = rotl(d, 8);
  c += d; b ^= c; b = rotl(b, 7);
}

void chacha20_block(const std::array<uint32_t, 16>& in, uint8_t out[64]) {
  std::array<uint32_t, 16> x = in;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) {
    uint32_t v = x[i] + in[i];
    std::memcpy(out + 4 * i, &v, 4);
  }
}

}  // namespace

ChaChaRng::ChaChaRng(uint64_t seed, uint64_t stream) : seed_(seed) {
  state_[0] = 0x61707865;
  state_[1] = 0x3320646e;
  state_[2] = 0x79622d32;
  state_[3] = 0x6b206574;
  uint64_t s = seed;
  for (int i = 0; i < 4; ++i) {
    uint64_t w = splitmix64(s);
    state_[4 + 2 * i] = static_cast<uint32_t>(w);
    state_[5 + 2 * i] = static_cast<uint32_t>(w >> 32);
  }
  state_[12] = 0;  // 64-bit block counter
  state_[13] = 0;
  state_[14] = static_cast<uint32_t>(stream);
  state_[15] = static_cast<uint32_t>(stream >> 32);
}

void ChaChaRng::refill() {
  chacha20_block(state_, buf_.data());
  if (++state_[12] == 0) ++state_[13];
  pos_ = 0;
}

uint64_t ChaChaRng::next_u64() {
  if (pos_ + 8 > buf_.size()) refill();
  uint64_t v;
  std::memcpy(&v, buf_.data() + pos_, 8);
  pos_ += 8;
  return v;
}

void ChaChaRng::fill_bytes(uint8_t* out, size_t len) {
  while (len > 0) {
    if (pos_ == buf_.size()) refill();
    size_t take = std::min(len, buf_.size() - pos_);
    std::memcpy(out, buf_.data() + pos_, take);
    pos_ += take;
    out += take;
    len -= take;
  }
}

uint64_t ChaChaRng::below(uint64_t bound) {
  if (bound <= 1) return 0;
  uint64_t mask = ~uint64_t(0) >> __builtin_clzll((bound - 1) | 1);
  for (;;) {
    uint64_t v = next_u64() & mask;
    if (v < bound) return v;
  }
}

double ChaChaRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  double u2 = static_cast<double>(next_u64() >> 11) * 0x1p-53;
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace pkeet
