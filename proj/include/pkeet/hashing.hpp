#ifndef PKEET_HASHING_HPP
#define PKEET_HASHING_HPP

#include <cstdint>
#include <vector>

#include "pkeet/ring.hpp"

namespace pkeet {

/// Identity vector v ∈ Z_q^n.
using IdentityVector = std::vector<uint64_t>;

/// Canonical message byte encoding: n bits packed little-endian (bit i of
/// byte j is coefficient 8j+i), zero-padded to a byte boundary. Shared with
/// the codec and the CLI message files.
std::vector<uint8_t> message_to_bytes(const RingContext& ctx, const RingElem& m);
RingElem message_from_bytes(const RingContext& ctx, const std::vector<uint8_t>& bytes);

/// H: Z_q^n → R_q*, deterministic FRD-style encoding. Candidates are derived
/// from a SHAKE-256 stream over the input with an attempt counter; the first
/// candidate with no zero NTT slot is returned. Throws
/// RejectionExhaustedError after 256 attempts (never observed in practice).
RingElem frd_encode(const RingContext& ctx, const IdentityVector& v);

/// H′: R_2 → R_2, an n-bit digest of the canonical message encoding
/// (domain-separated SHAKE-256).
RingElem hash_message(const RingContext& ctx, const RingElem& m);

/// Raw XOF access used by both hashes; exposed for tests.
std::vector<uint8_t> shake256(uint8_t domain, const std::vector<uint8_t>& data, size_t out_len);

}  // namespace pkeet

#endif
