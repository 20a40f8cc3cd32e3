#include "rankkit/report.hpp"

#include <string>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

nlohmann::json rationals(const std::vector<Rational>& xs) {
  auto out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::ParseError, "certificate JSON: " + what);
}

std::vector<std::size_t> read_indices(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) malformed(std::string("missing array '") + key + "'");
  std::vector<std::size_t> out;
  for (const auto& x : j[key]) {
    if (!x.is_number_unsigned()) malformed(std::string("'") + key + "' must hold positive integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

std::vector<Rational> read_values(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) malformed(std::string("missing array '") + key + "'");
  std::vector<Rational> out;
  for (const auto& x : j[key]) {
    try {
      if (x.is_string()) {
        out.push_back(Rational::parse(x.get<std::string>()));
      } else if (x.is_number_integer()) {
        out.emplace_back(x.get<long>());
      } else {
        malformed(std::string("'") + key + "' values must be strings or integers");
      }
    } catch (const std::invalid_argument&) {
      malformed(std::string("bad rational in '") + key + "'");
    }
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const RankCertificate& cert) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(cert.kind));
  auto summands = nlohmann::json::array();
  for (const auto& s : cert.summands) {
    summands.push_back({{"rows", s.rows}, {"cols", s.cols}, {"u", rationals(s.u)},
                        {"v", rationals(s.v)}});
  }
  j["summands"] = std::move(summands);
  return j;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json j;
  j["semiring"] = std::string(to_string(report.semiring));
  j["n"] = report.n;
  j["k"] = report.k;
  j["rank"] = report.rank;
  j["certificate"] = report.certificate ? to_json(*report.certificate) : nlohmann::json(nullptr);
  j["stats"] = {{"sets_enumerated", report.stats.sets_enumerated},
                {"dp_states", report.stats.dp_states},
                {"arithmetic_ops", report.stats.arithmetic_ops},
                {"wall_ms", report.stats.wall_ms}};
  j["oracle_rank"] = report.oracle_rank ? nlohmann::json(*report.oracle_rank) : nlohmann::json(nullptr);
  return j;
}

RankCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) malformed("expected an object");
  if (j.contains("certificate")) {
    if (j["certificate"].is_null()) malformed("report carries no certificate");
    return certificate_from_json(j["certificate"]);
  }
  if (!j.contains("kind") || !j["kind"].is_string()) malformed("missing 'kind'");
  const auto kind = parse_semiring(j["kind"].get<std::string>());
  if (!kind) malformed("unknown kind '" + j["kind"].get<std::string>() + "'");
  if (!j.contains("summands") || !j["summands"].is_array()) malformed("missing 'summands'");
  RankCertificate cert;
  cert.kind = *kind;
  for (const auto& s : j["summands"]) {
    if (!s.is_object()) malformed("summand must be an object");
    Summand piece;
    piece.rows = read_indices(s, "rows");
    piece.cols = read_indices(s, "cols");
    piece.u = read_values(s, "u");
    piece.v = read_values(s, "v");
    cert.summands.push_back(std::move(piece));
  }
  return cert;
}

}  // namespace rankkit
