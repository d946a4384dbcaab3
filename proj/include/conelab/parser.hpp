#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "conelab/polynomial.hpp"

namespace conelab {

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar:
//   expr   := term { ("+"|"-") term }
//   term   := factor { "*" factor }
//   factor := base [ "^" uint ]
//   base   := ident | number | "(" expr ")" | "-" base
//   ident  := "x" | "y" | "z" | "x" uint
//   number := uint [ "/" uint ] | decimal
// Whitespace is insignificant; implicit multiplication is rejected.
// The resulting variable space is x,y,z (or x1..x8) up to the highest
// variable mentioned.
Polynomial parse_polynomial(std::string_view text);

}  // namespace conelab
