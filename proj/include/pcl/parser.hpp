#pragma once

#include "pcl/function_field.hpp"

#include <string>
#include <vector>

namespace pcl {

// Grammar shared by every command:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ['-'] atom ('^' exp)?
//   exp    := ['-'] nat | '(' ['-'] nat ')'
//   atom   := var | nat | 'alpha' | '(' expr ')'
//
// Integers are reduced mod p. 'alpha' names the adjoined root in GF(p^m)
// sessions. Errors carry the byte offset and the expected tokens.

RatFunc parse_element(const std::string &src, const AmbientPtr &ambient);

// Polynomial in the given ring; only constant divisors and non-negative
// exponents are accepted.
MPoly parse_polynomial(const std::string &src, const RingPtr &ring);

// Splits a comma-separated list, trimming blanks; "" gives an empty list.
std::vector<std::string> split_list(const std::string &src, char sep = ',');

std::vector<RatFunc> parse_tuple(const std::string &src, const AmbientPtr &ambient);

} // namespace pcl
