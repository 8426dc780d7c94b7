#pragma once

#include <cstdint>
#include <stdexcept>

#include "ballot/control.hpp"

namespace ballot {

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleLimit = std::uint64_t{1} << 22;

/// Tries every voter subset (or every candidate subset containing the
/// target) from the largest down, lexicographically within a size, and
/// returns the first one meeting the mode. Works in original indices.
ControlSolution brute_force_control(const Election& election, const ControlSpec& spec,
                                    std::uint64_t limit = kDefaultOracleLimit);

}  // namespace ballot
