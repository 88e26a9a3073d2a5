#pragma once

#include <stdexcept>
#include <string>

namespace blotto {

class BlottoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance, strategy or argument.
class InvalidInput : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

// An enumeration or work bound from Caps was hit.
class CapExceeded : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

class PreconditionFailed : public BlottoError {
 public:
  using BlottoError::BlottoError;
};

}  // namespace blotto
