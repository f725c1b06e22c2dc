#ifndef SRLP_RATIONAL_HPP
#define SRLP_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace srlp {

// Small non-negative rational for exact density-threshold comparisons.
// Thresholds like "0.8" are kept as 8/10 so that 4/5 >= 0.8 holds exactly,
// which a double product cannot guarantee.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d);

  // Parses a non-negative decimal literal such as "0.8", ".6", "1", "0.125".
  static Rational from_decimal(const std::string& text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Exact comparisons via cross-multiplication (magnitudes here stay tiny).
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
  bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
};

}  // namespace srlp

#endif
