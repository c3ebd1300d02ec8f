#ifndef PKEET_PKEETFA_HPP
#define PKEET_PKEETFA_HPP

#include <cstdint>
#include <optional>

#include "pkeet/hashing.hpp"
#include "pkeet/params.hpp"
#include "pkeet/trapdoor.hpp"

namespace pkeet {

struct PublicKey {
  RingVec a;   // m elements, tag-0 trapdoor vector
  RingVec b;   // m elements, tag-0 trapdoor vector
  RingElem u;  // uniform syndrome target
};

/// Secret key. Besides the two trapdoors it carries copies of the public
/// (b, u): the Type-1/Type-3j trapdoors and the Test procedures need them,
/// and neither receives the public key as an argument.
struct SecretKey {
  GTrapdoor Ta;
  GTrapdoor Tb;
  RingVec b;
  RingElem u;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Ciphertext {
  IdentityVector v;  // n entries mod q
  RingElem ct1;
  RingElem ct2;
  RingVec ct3;  // m elements
  RingVec ct4;  // m elements
};

enum class TdVariant : uint8_t { Type1 = 1, Type2 = 2, Type3i = 3, Type3j = 4 };

/// Authorization trapdoor. Type1/Type3j hold a copy of T_b plus the public
/// companions; Type2/Type3i hold a preimage x′ bound to one ciphertext's v.
struct AuthTrapdoor {
  TdVariant variant;
  // Type1 / Type3j payload
  std::optional<GTrapdoor> tb;
  RingVec b;
  RingElem u;
  // Type2 / Type3i payload
  IntVec preimage;
  IdentityVector bound_v;
};

struct DecryptResult {
  std::optional<RingElem> message;  // nullopt = ⊥ (integrity failure)
  int64_t max_err_message = 0;      // max |centered(w − M·⌊q/2⌋)| over coefficients
  int64_t max_err_digest = 0;       // same for the digest side
};

KeyPair setup(const Params& p, ChaChaRng& rng);

/// Enc(PK, M) for M ∈ R_2. Draws a fresh v (re-drawn if all-zero).
Ciphertext encrypt(const Params& p, const PublicKey& pk, const RingElem& message, ChaChaRng& rng);

DecryptResult decrypt_detailed(const Params& p, const SecretKey& sk, const PublicKey& pk,
                               const Ciphertext& ct, ChaChaRng& rng);
std::optional<RingElem> decrypt(const Params& p, const SecretKey& sk, const PublicKey& pk,
                                const Ciphertext& ct, ChaChaRng& rng);

AuthTrapdoor td1(const Params& p, const SecretKey& sk);
AuthTrapdoor td2(const Params& p, const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct,
                 ChaChaRng& rng);
AuthTrapdoor td3_i(const Params& p, const SecretKey& sk, const PublicKey& pk, const Ciphertext& ct,
                   ChaChaRng& rng);
AuthTrapdoor td3_j(const Params& p, const SecretKey& sk);

/// Equality tests; 1 = same underlying digest. Throw VariantMismatchError /
/// BindingMismatchError on misuse. test3 accepts its pair in either order.
bool test1(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j, ChaChaRng& rng);
bool test2(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j);
bool test3(const Params& p, const AuthTrapdoor& td_i, const AuthTrapdoor& td_j,
           const Ciphertext& ct_i, const Ciphertext& ct_j, ChaChaRng& rng);

/// Per-coefficient threshold decision: 1 iff w is closer to ⌊q/2⌋ than to 0
/// under centered (cyclic) distance.
RingElem threshold_decode(const RingContext& ctx, const RingElem& w);

}  // namespace pkeet

#endif
