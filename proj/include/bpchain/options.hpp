#pragma once

#include "bpchain/smith.hpp"

#include <cstdint>
#include <optional>

namespace bpchain {

/// Knobs that must never change an isomorphism type; the determinism audit
/// varies them.
struct ComputeOptions {
  PivotRule rule = PivotRule::lex_first;
  std::optional<std::uint64_t> shuffle_seed;  // permutes bases and relation order
  unsigned workers = 0;                        // 0 = hardware concurrency
};

}  // namespace bpchain
