#pragma once

#include <stdexcept>
#include <string>

namespace twk {

struct SingularPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateAtPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSubmersive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AtInfinity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoPreimage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnique : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

}  // namespace twk
