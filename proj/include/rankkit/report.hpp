#pragma once

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "rankkit/rank_result.hpp"
#include "rankkit/semiring.hpp"

namespace rankkit {

struct RunReport {
  Semiring semiring = Semiring::Tropical;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t rank = 0;
  std::optional<RankCertificate> certificate;
  RankStats stats;
  std::optional<std::size_t> oracle_rank;
};

/// Rationals are written as strings ("3/4") so nothing is rounded.
nlohmann::json to_json(const RankCertificate& cert);
nlohmann::json to_json(const RunReport& report);

/// Accepts a bare certificate object or a report carrying one.
/// Throws Error(ParseError) on malformed input.
RankCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace rankkit
