#include "compass/decimal.hpp"

namespace compass {

int decimal_digits(unsigned precision_bits) {
  // floor(bits * log10 2) computed exactly: 10^d <= 2^bits.
  const mpz_class two_pow = mpz_class(1) << precision_bits;
  int d = 0;
  mpz_class ten = 10;
  while (ten <= two_pow) {
    ++d;
    ten *= 10;
  }
  return std::max(1, d - 2);
}

std::string format_decimal(const Rational& q, int digits, bool trim_zeros) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational scaled = abs(q) * scale;
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  const Rational frac = scaled - Rational(whole);
  const Rational half(1, 2);
  if (frac > half || (frac == half && mpz_odd_p(whole.get_mpz_t()))) whole += 1;

  std::string text = whole.get_str();
  if (digits > 0) {
    if (text.size() <= static_cast<std::size_t>(digits)) text.insert(0, digits + 1 - text.size(), '0');
    text.insert(text.size() - digits, ".");
    if (trim_zeros) {
      while (text.back() == '0') text.pop_back();
      if (text.back() == '.') text.pop_back();
    }
  }
  if (q < 0 && whole != 0) text.insert(0, "-");
  return text;
}

std::string decimal_text(const Constructible& x, unsigned precision_bits, bool trim_zeros) {
  return format_decimal(to_decimal(x, precision_bits).midpoint(), decimal_digits(precision_bits), trim_zeros);
}

}  // namespace compass
