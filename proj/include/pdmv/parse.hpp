#pragma once

#include "pdmv/expr.hpp"

#include <map>
#include <set>
#include <string>

namespace pdmv {

struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& m)
      : std::runtime_error(m + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

/// Identifier table for the expression grammar.  `atoms` maps names to their
/// expansions (coordinates, the imaginary unit, parameters, and the derived
/// shorthands r, rt, phi, theta plus the dataset abbreviations documented in
/// docs/grammar.md).  `functions` lists opaque function names.
struct Symbols {
  std::map<std::string, Expr> atoms;
  std::set<std::string> functions;

  static const Symbols& standard();
  Symbols extended_with(const std::vector<std::string>& more_functions,
                        const std::vector<std::string>& more_params) const;
};

Expr parse(const std::string& text);
Expr parse(const std::string& text, const Symbols& symbols);

}  // namespace pdmv
