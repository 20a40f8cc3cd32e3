#pragma once

#include <cstddef>
#include <cstdint>

#include "rankkit/semiring.hpp"

namespace rankkit {

struct RankStats {
  std::size_t sets_enumerated = 0;
  std::size_t dp_states = 0;
  std::uint64_t arithmetic_ops = 0;
  double wall_ms = 0.0;
};

struct RankResult {
  std::size_t rank = 0;
  RankCertificate certificate;
  RankStats stats;
};

}  // namespace rankkit
