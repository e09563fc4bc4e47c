/*******************************************************************************
 * Basic type aliases and the library error type.
 *
 * @file:   definitions.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ilprefine {

using NodeID = std::uint32_t;
using EdgeID = std::uint64_t;
using PartitionID = std::uint32_t;
using NodeWeight = double;
using EdgeWeight = double;

constexpr PartitionID kInvalidBlock = std::numeric_limits<PartitionID>::max();
constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();

enum class ErrorCode {
  Io,
  MalformedHeader,
  MalformedLine,
  AsymmetricAdjacency,
  VertexOutOfRange,
  LengthMismatch,
  BlockOutOfRange,
  UnbalancedInput,
  InfeasibleFixing,
  CapExceeded,
  BootstrapFailed,
  InvalidArgument,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), _code(code) {}

  [[nodiscard]] ErrorCode code() const noexcept {
    return _code;
  }

private:
  ErrorCode _code;
};

} // namespace ilprefine
