#pragma once

#include <string>
#include <string_view>

#include "rankkit/matrix.hpp"

namespace rankkit {

/// BMX text format:
///   # comment to end of line
///   bmx <n> <k>
///   <i> <j> <value>      value: integer, p/q or decimal
/// Throws ParseError (with line/column), DuplicateEntry, OutOfBand,
/// OutOfRange or NegativeEntry.
BandMatrix parse_bmx(std::string_view text);

/// Canonical BMX: header plus one line per stored entry in row-major order.
std::string emit_bmx(const BandMatrix& m);

}  // namespace rankkit
