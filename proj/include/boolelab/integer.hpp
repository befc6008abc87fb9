#pragma once

#include <gmpxx.h>

#include <string>

namespace boolelab {

/// Arbitrary precision integer used for every coefficient and literal.
using Integer = mpz_class;

inline std::string to_string(const Integer& value) { return value.get_str(); }

}  // namespace boolelab
