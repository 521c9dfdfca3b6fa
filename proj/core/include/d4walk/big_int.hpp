#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "d4walk/double_double.hpp"

namespace d4walk {

using BigInt = boost::multiprecision::cpp_int;

DoubleDouble to_double_double(const BigInt& x);
double to_double(const BigInt& x);
std::string to_string(const BigInt& x);

// floor(sqrt(x)) for x >= 0.
BigInt isqrt(const BigInt& x);
bool is_perfect_square(std::int64_t x);

// x = square_part^2 * squarefree_part, x >= 1.
struct SquarefreeSplit {
  std::int64_t square_root_part;
  std::int64_t squarefree_part;
};
SquarefreeSplit split_squarefree(std::int64_t x);

}  // namespace d4walk
