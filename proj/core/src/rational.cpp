#include "srlp/rational.hpp"

#include <numeric>

#include "srlp/error.hpp"

namespace srlp {

Rational Rational::of(std::int64_t n, std::int64_t d) {
  if (d <= 0 || n < 0) fail("rational: need n >= 0 and d > 0, got %lld/%lld",
                            static_cast<long long>(n), static_cast<long long>(d));
  std::int64_t g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{n, d};
}

Rational Rational::from_decimal(const std::string& text) {
  if (text.empty()) fail("rational: empty literal");
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) fail("rational: bad literal \"%s\"", text.c_str());
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
      if (den > 1000000000000LL || num > 1000000000000LL)
        fail("rational: literal too precise \"%s\"", text.c_str());
    } else {
      fail("rational: bad literal \"%s\"", text.c_str());
    }
  }
  if (!seen_digit) fail("rational: bad literal \"%s\"", text.c_str());
  return of(num, den);
}

}  // namespace srlp
