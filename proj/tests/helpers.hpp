#pragma once

#include <optional>
#include <utility>

#include "knapqsec/common.hpp"
#include "knapqsec/core.hpp"
#include "knapqsec/rng.hpp"

namespace testutil {

// Runs f and reports the typed error code it threw, if any.
template <typename F>
std::optional<knapqsec::Errc> errc_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const knapqsec::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Random instance with n weights over a random modulus in [2, r_max].
inline knapqsec::core::KnapsackInstance random_instance(
    knapqsec::SplitMix64& rng, int n, std::uint64_t r_max) {
  const std::uint64_t r = 2 + rng.bounded(r_max - 1);
  std::vector<std::uint64_t> b(n);
  for (auto& w : b) w = rng.bounded(r);
  return {std::move(b), rng.bounded(r), r};
}

}  // namespace testutil
