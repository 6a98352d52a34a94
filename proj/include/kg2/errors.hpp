#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kg2 {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `offset` is a byte offset into the input.
struct ParseError : Error {
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset;
  std::vector<std::string> expected;
};

struct UnknownWorld : Error {
  explicit UnknownWorld(const std::string& label) : Error("unknown world '" + label + "'") {}
};

/// Malformed model, frame or classical-model document.
struct FormatError : Error {
  using Error::Error;
};

/// A brute-force enumeration passed its configured cap.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// A proof search passed one of its resource caps.
struct LimitExceeded : Error {
  enum class Resource { States, Constraints, Time };
  LimitExceeded(Resource r, const std::string& where);

  Resource resource;
};

/// An engine invariant failed (e.g. an extracted model does not realise its branch).
struct InternalError : Error {
  using Error::Error;
};

struct NotCrisp : Error {
  using Error::Error;
};

struct EdgeNotFractional : Error {
  using Error::Error;
};

struct EdgeNotDiffering : Error {
  using Error::Error;
};

struct IllegalConnective : Error {
  using Error::Error;
};

}  // namespace kg2
