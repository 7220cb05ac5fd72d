#pragma once

#include <stdexcept>
#include <string>

namespace wargame {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or a violated operation precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input that does not match a documented file or record schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace wargame
