#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace opf {

// Exact rational arithmetic over 64-bit words. Values in this library stay
// tiny (edge lengths in [0,1], heights bounded by tree depth, denominators
// from small sample grids), so overflow is a hard error, not a reason for
// bignums.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  // Accepts "p/q" or a bare integer "p".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Canonical form "p/q" in lowest terms, q > 0. Round-trips through parse.
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;  // invariant: den_ > 0 and gcd(|num_|, den_) == 1
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace opf
