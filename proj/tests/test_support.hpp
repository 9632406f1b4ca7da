#pragma once

#include "divfan/random.hpp"

namespace divfan::testing {

inline Rational q(const char* s) { return parse_rational(s); }

using divfan::Gen;

}  // namespace divfan::testing
