#pragma once

#include <stdexcept>
#include <string>

namespace apiinfer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by provider ports when a backend cannot answer.
class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace apiinfer
