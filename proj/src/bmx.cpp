#include "rankkit/bmx.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::size_t parse_index(const Token& tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || tok.text.empty() || tok.text[0] == '+') {
    throw ParseError(line, tok.column, std::string("expected a nonnegative integer ") + what +
                                           ", got '" + std::string(tok.text) + "'");
  }
  return value;
}

}  // namespace

BandMatrix parse_bmx(std::string_view text) {
  bool have_header = false;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Triplet> triplets;
  std::set<Position> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (tokens[0].text != "bmx") {
        throw ParseError(line_no, tokens[0].column, "expected header 'bmx <n> <k>'");
      }
      if (tokens.size() != 3) {
        throw ParseError(line_no, tokens.back().column, "header needs exactly 'bmx <n> <k>'");
      }
      n = parse_index(tokens[1], line_no, "for n");
      k = parse_index(tokens[2], line_no, "for k");
      have_header = true;
      continue;
    }

    if (tokens.size() != 3) {
      const std::size_t col = tokens.size() > 3 ? tokens[3].column : tokens.back().column;
      throw ParseError(line_no, col, "entry line needs exactly '<i> <j> <value>'");
    }
    const std::size_t i = parse_index(tokens[0], line_no, "row index");
    const std::size_t j = parse_index(tokens[1], line_no, "column index");
    Rational value;
    try {
      value = Rational::parse(tokens[2].text);
    } catch (const std::exception& e) {
      throw ParseError(line_no, tokens[2].column, "bad value '" + std::string(tokens[2].text) + "'");
    }
    const std::string where = " at line " + std::to_string(line_no);
    if (i < 1 || i > n || j < 1 || j > n) {
      throw Error(ErrorCode::OutOfRange, "(" + std::to_string(i) + "," + std::to_string(j) +
                                             ") outside 1.." + std::to_string(n) + where);
    }
    if (!seen.insert({i, j}).second) {
      throw Error(ErrorCode::DuplicateEntry, "(" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") given twice" + where);
    }
    if (value.is_negative()) {
      throw Error(ErrorCode::NegativeEntry, "value " + value.str() + where);
    }
    const std::size_t dist = i > j ? i - j : j - i;
    if (dist > k && !value.is_zero()) {
      throw Error(ErrorCode::OutOfBand, "(" + std::to_string(i) + "," + std::to_string(j) +
                                            ") outside half-width " + std::to_string(k) + where);
    }
    triplets.push_back({i, j, std::move(value)});
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'bmx <n> <k>' header");
  return from_triplets(n, k, triplets);
}

std::string emit_bmx(const BandMatrix& m) {
  std::ostringstream out;
  out << "bmx " << m.n() << ' ' << m.k() << '\n';
  for (const auto& [p, v] : m.entries()) out << p.row << ' ' << p.col << ' ' << v.str() << '\n';
  return out.str();
}

}  // namespace rankkit
