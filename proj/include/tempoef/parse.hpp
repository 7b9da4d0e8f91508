#pragma once

#include <stdexcept>
#include <string>

#include "tempoef/formula.hpp"

namespace tempoef {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

/// Concrete syntax shared by both logics; see the grammar in the README.
/// parse_mtl rejects register syntax, parse_tptl rejects interval
/// annotations on temporal operators.
MtlPtr parse_mtl(const std::string& text);
TptlPtr parse_tptl(const std::string& text);

/// True when the text uses register syntax (x1., x1=0, ...); used by the
/// CLI to pick a logic when none is given.
bool looks_like_tptl(const std::string& text);

}  // namespace tempoef
