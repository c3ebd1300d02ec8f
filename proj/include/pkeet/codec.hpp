#ifndef PKEET_CODEC_HPP
#define PKEET_CODEC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pkeet/pkeetfa.hpp"

namespace pkeet {

enum class ObjectKind : uint8_t { PK = 1, SK = 2, CT = 3, TD = 4 };

/// Fixed 31-byte header preceding every serialized object. Little-endian
/// throughout; parsed and sanity-checked before any payload allocation.
struct FileHeader {
  static constexpr char kMagic[4] = {'P', 'K', 'E', 'F'};
  static constexpr uint16_t kVersion = 1;
  static constexpr size_t kSize = 31;

  uint16_t version = kVersion;
  ObjectKind kind = ObjectKind::PK;
  uint32_t n = 0;
  uint64_t q = 0;
  uint16_t k = 0;
  uint16_t m = 0;
  uint64_t payload_len = 0;

  void write(std::vector<uint8_t>& out) const;
  static FileHeader parse(const std::vector<uint8_t>& bytes);

  bool matches(const Params& p) const {
    return n == p.n && q == p.q && k == p.k && m == p.m;
  }
};

// Coefficients are packed as ⌈log₂ q⌉-bit little-endian integers; payloads of
// secret material (SK, TD) start with a plaintext SENSITIVE flag byte.

std::vector<uint8_t> encode_public_key(const Params& p, const PublicKey& pk);
PublicKey decode_public_key(const Params& p, const std::vector<uint8_t>& bytes);

std::vector<uint8_t> encode_secret_key(const Params& p, const SecretKey& sk);
SecretKey decode_secret_key(const Params& p, const std::vector<uint8_t>& bytes);

std::vector<uint8_t> encode_ciphertext(const Params& p, const Ciphertext& ct);
Ciphertext decode_ciphertext(const Params& p, const std::vector<uint8_t>& bytes);

std::vector<uint8_t> encode_trapdoor(const Params& p, const AuthTrapdoor& td);
AuthTrapdoor decode_trapdoor(const Params& p, const std::vector<uint8_t>& bytes);

/// Exact payload bit count of a serialized ciphertext: n(2m+3)·⌈log₂ q⌉.
uint64_t ciphertext_payload_bits(const Params& p);

/// Match a header fingerprint against the known presets.
std::optional<Params> params_for_header(const FileHeader& h);

}  // namespace pkeet

#endif
