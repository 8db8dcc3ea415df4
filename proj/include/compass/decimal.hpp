#pragma once

#include <string>

#include "compass/exactfield.hpp"

namespace compass {

/// Fractional digits printed for a given working precision:
/// floor(bits * log10(2)) - 2, at least 1.
int decimal_digits(unsigned precision_bits);

/// Locale-independent fixed-point text, rounded half to even.  With
/// trim_zeros, trailing fractional zeros (and a bare point) are dropped.
std::string format_decimal(const Rational& q, int digits, bool trim_zeros);

/// Midpoint of to_decimal(x, precision_bits) in fixed-point text.
std::string decimal_text(const Constructible& x, unsigned precision_bits, bool trim_zeros);

}  // namespace compass
