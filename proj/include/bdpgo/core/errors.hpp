#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdpgo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(std::size_t line_number, const std::string& message)
      : Error("line " + std::to_string(line_number) + ": " + message), line(line_number) {}
  std::size_t line;
};

struct ReferenceError : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };
struct LookupError : Error { using Error::Error; };
struct UnreachableError : Error { using Error::Error; };
struct PathError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct ConnectivityError : Error { using Error::Error; };
struct AnchoringError : Error { using Error::Error; };
struct ParameterError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };

}  // namespace bdpgo
