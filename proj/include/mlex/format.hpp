#pragma once

#include <string>
#include <vector>

#include "mlex/algebra.hpp"

namespace mlex {

// Tuple of elements, e.g. "(0,1)" over Z_2 or "((1,0),(0,1))" over Z_2^2.
std::string format_tuple(const Algebra& A, const std::vector<Elem>& t);
std::string format_map(const Algebra& src, const Algebra& dst, const std::vector<Elem>& f);

}  // namespace mlex
