#ifndef PKEET_ERRORS_HPP
#define PKEET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pkeet {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live in rings of different (n, q).
struct DimensionError : Error {
  using Error::Error;
};

/// A preimage was requested for a trapdoor whose tag is not invertible.
struct TagNotInvertibleError : Error {
  using Error::Error;
};

/// ζ too small for the trapdoor at hand: Σ_p = ζ²I − α²(T;I)(Tᵀ I) is not
/// positive definite.
struct NotPositiveDefiniteError : Error {
  using Error::Error;
};

/// A test procedure received a trapdoor of the wrong variant.
struct VariantMismatchError : Error {
  using Error::Error;
};

/// A ciphertext-bound trapdoor was used with a different ciphertext.
struct BindingMismatchError : Error {
  using Error::Error;
};

/// Malformed or truncated serialized object.
struct CodecError : Error {
  using Error::Error;
};

/// FRD encoding failed to find an invertible candidate within the attempt
/// budget (256); practically unreachable for the supported parameter sets.
struct RejectionExhaustedError : Error {
  using Error::Error;
};

struct UnknownPresetError : Error {
  using Error::Error;
};

}  // namespace pkeet

#endif
