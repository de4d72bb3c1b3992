#pragma once

#include "ladderpoly/rational.hpp"

// Canonical rational literal; mpq_class(num, den) alone is left unreduced.
inline ladderpoly::Rational Q(long num, long den) { return ladderpoly::scalar_from<ladderpoly::Rational>(num, den); }
