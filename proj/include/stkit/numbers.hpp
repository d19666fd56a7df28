#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace stkit {

// Exact arithmetic everywhere: integer coefficients, rational evaluation.
// "Vanishes" is a literal zero test, never a tolerance.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace stkit
