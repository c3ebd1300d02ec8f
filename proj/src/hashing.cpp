#include "pkeet/hashing.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>

#include "pkeet/errors.hpp"

namespace pkeet {

namespace {

constexpr uint8_t kDomainFrd = 0x46;      // 'F'
constexpr uint8_t kDomainMessage = 0x4d;  // 'M'

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

}  // namespace

std::vector<uint8_t> shake256(uint8_t domain, const std::vector<uint8_t>& data, size_t out_len) {
  std::vector<uint8_t> out(out_len);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> md(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!md || EVP_DigestInit_ex(md.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(md.get(), &domain, 1) != 1 ||
      EVP_DigestUpdate(md.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinalXOF(md.get(), out.data(), out.size()) != 1)
    throw Error("SHAKE-256 failure");
  return out;
}

std::vector<uint8_t> message_to_bytes(const RingContext& ctx, const RingElem& m) {
  if (m.size() != ctx.n) throw DimensionError("message_to_bytes: bad dimension");
  std::vector<uint8_t> out((ctx.n + 7) / 8, 0);
  for (uint32_t i = 0; i < ctx.n; ++i) {
    if (m.c[i] > 1) throw Error("message coefficients must be binary");
    out[i / 8] |= static_cast<uint8_t>(m.c[i] << (i % 8));
  }
  return out;
}

RingElem message_from_bytes(const RingContext& ctx, const std::vector<uint8_t>& bytes) {
  if (bytes.size() != (ctx.n + 7) / 8) throw CodecError("message: wrong byte length");
  RingElem m(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) m.c[i] = (bytes[i / 8] >> (i % 8)) & 1;
  return m;
}

RingElem frd_encode(const RingContext& ctx, const IdentityVector& v) {
  if (v.size() != ctx.n) throw DimensionError("frd_encode: identity must have n entries");
  std::vector<uint8_t> input;
  input.reserve(8 + v.size() * 8);
  append_u32(input, ctx.n);
  for (uint64_t e : v) {
    if (e >= ctx.q) throw Error("frd_encode: identity entry out of range");
    append_u64(input, e);
  }
  const uint64_t mask =
      (ctx.q & (ctx.q - 1)) == 0 ? ctx.q - 1 : (~uint64_t(0) >> __builtin_clzll(ctx.q));
  // Stream enough words that per-attempt exhaustion is negligible even at
  // acceptance rates just above 1/2.
  const size_t words = size_t(ctx.n) * 5 / 2 + 64;

  for (uint32_t attempt = 0; attempt < 256; ++attempt) {
    std::vector<uint8_t> seeded = input;
    append_u32(seeded, attempt);
    std::vector<uint8_t> stream = shake256(kDomainFrd, seeded, words * 8);
    RingElem cand(ctx.n);
    uint32_t filled = 0;
    for (size_t w = 0; w < words && filled < ctx.n; ++w) {
      uint64_t x;
      std::memcpy(&x, stream.data() + 8 * w, 8);
      x &= mask;
      if (x < ctx.q) cand.c[filled++] = x;
    }
    if (filled < ctx.n) continue;
    if (ring_is_invertible(ctx, cand)) return cand;
  }
  throw RejectionExhaustedError("frd_encode: no invertible candidate in 256 attempts");
}

RingElem hash_message(const RingContext& ctx, const RingElem& m) {
  std::vector<uint8_t> bytes = message_to_bytes(ctx, m);
  std::vector<uint8_t> digest = shake256(kDomainMessage, bytes, (ctx.n + 7) / 8);
  RingElem out(ctx.n);
  for (uint32_t i = 0; i < ctx.n; ++i) out.c[i] = (digest[i / 8] >> (i % 8)) & 1;
  return out;
}

}  // namespace pkeet
