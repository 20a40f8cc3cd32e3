#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rankkit/band_cover.hpp"
#include "rankkit/bmx.hpp"
#include "rankkit/error.hpp"
#include "rankkit/generate.hpp"
#include "rankkit/report.hpp"
#include "rankkit/tridiag_nnr.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kFailure = 3;

struct CliError {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kInvalid, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

rankkit::Semiring semiring_flag(const std::string& name) {
  auto kind = rankkit::parse_semiring(name);
  if (!kind) throw CliError{kUsage, "unknown semiring '" + name + "'"};
  return *kind;
}

struct RankOptions {
  std::string semiring;
  std::string input;
  bool certificate = false;
  bool oracle = false;
  bool json = false;
};

int run_rank(const RankOptions& opt) {
  using namespace rankkit;
  const Semiring kind = semiring_flag(opt.semiring);
  const BandMatrix m = parse_bmx(slurp(opt.input));

  RunReport report;
  report.semiring = kind;
  report.n = m.n();
  report.k = m.k();
  RankResult result;
  if (kind == Semiring::Nonnegative) {
    if (m.k() > 1) {
      throw CliError{kInvalid, "nonneg needs k = 1: the nonnegative rank of band matrices with "
                               "k >= 2 has no known polynomial algorithm (open problem)"};
    }
    result = nnr_tridiagonal(m);
  } else {
    result = band_rank(m, kind);
  }
  report.rank = result.rank;
  report.stats = result.stats;
  if (opt.certificate) report.certificate = result.certificate;
  if (opt.oracle) {
    report.oracle_rank = kind == Semiring::Nonnegative ? pattern_oracle_nnr(m)
                                                       : brute_force_band_rank(m, kind);
  }
  std::cout << to_json(report).dump(opt.json ? -1 : 2) << '\n';
  if (report.oracle_rank && *report.oracle_rank != report.rank) {
    std::cerr << "oracle mismatch: rank " << report.rank << ", oracle " << *report.oracle_rank
              << '\n';
    return kFailure;
  }
  return 0;
}

int run_verify(const std::string& input, const std::string& cert_path) {
  using namespace rankkit;
  const BandMatrix m = parse_bmx(slurp(input));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(cert_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError{kInvalid, std::string("certificate is not JSON: ") + e.what()};
  }
  const RankCertificate cert = certificate_from_json(j);
  const bool ok = verify_certificate(m, cert);
  nlohmann::json out = {{"valid", ok}, {"semiring", std::string(to_string(cert.kind))},
                        {"summands", cert.size()}};
  std::cout << out.dump() << '\n';
  return ok ? 0 : kFailure;
}

int run_gen(std::uint64_t seed, std::size_t n, std::size_t k, double density,
            const std::string& semiring) {
  std::cout << rankkit::emit_bmx(rankkit::generate(seed, n, k, density, semiring_flag(semiring)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact factorization ranks of band matrices"};
  app.require_subcommand(1);

  RankOptions rank_opt;
  auto* rank = app.add_subcommand("rank", "compute a factorization rank");
  rank->add_option("--semiring", rank_opt.semiring, "boolean|fuzzy|tropical|nonneg")->required();
  rank->add_option("--input", rank_opt.input, "BMX file")->required();
  rank->add_flag("--certificate", rank_opt.certificate, "include the rank-one summands");
  rank->add_flag("--oracle", rank_opt.oracle, "cross-check against the brute-force oracle");
  rank->add_flag("--json", rank_opt.json, "compact single-line JSON");

  std::string verify_input, verify_cert;
  auto* verify = app.add_subcommand("verify", "check a certificate against a matrix");
  verify->add_option("--input", verify_input, "BMX file")->required();
  verify->add_option("--certificate", verify_cert, "certificate or report JSON")->required();

  std::uint64_t seed = 0;
  std::size_t n = 0, k = 1;
  double density = 1.0;
  std::string gen_semiring = "tropical";
  auto* gen = app.add_subcommand("gen", "emit a random band matrix as BMX");
  gen->add_option("--seed", seed)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k);
  gen->add_option("--density", density);
  gen->add_option("--semiring", gen_semiring);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*rank) return run_rank(rank_opt);
    if (*verify) return run_verify(verify_input, verify_cert);
    if (*gen) return run_gen(seed, n, k, density, gen_semiring);
  } catch (const CliError& e) {
    std::cerr << "rankkit: " << e.message << '\n';
    return e.code;
  } catch (const rankkit::Error& e) {
    std::cerr << "rankkit: " << e.what() << '\n';
    return e.code() == rankkit::ErrorCode::Internal ? kFailure : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "rankkit: internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
