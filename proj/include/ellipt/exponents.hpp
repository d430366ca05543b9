#pragma once

#include <compare>
#include <string>

namespace ellipt {

// Exponent of q, stored as an integer multiple of 1/24.
struct QExp {
  int n24 = 0;

  constexpr QExp() = default;
  static constexpr QExp from_24ths(int n) { QExp e; e.n24 = n; return e; }
  static constexpr QExp integer(int n) { return from_24ths(24 * n); }
  // p/q; throws BadExponent unless q divides 24 after reduction.
  static QExp rational(long p, long q);

  bool is_integer() const { return n24 % 24 == 0; }
  bool is_half_integer() const { return n24 % 12 == 0; }
  double to_double() const { return n24 / 24.0; }
  // Numerator and denominator in lowest terms.
  long num() const;
  long den() const;

  friend constexpr QExp operator+(QExp a, QExp b) { return from_24ths(a.n24 + b.n24); }
  friend constexpr QExp operator-(QExp a, QExp b) { return from_24ths(a.n24 - b.n24); }
  constexpr QExp operator-() const { return from_24ths(-n24); }
  friend constexpr QExp operator*(int k, QExp a) { return from_24ths(k * a.n24); }
  friend constexpr auto operator<=>(QExp a, QExp b) = default;

  std::string str() const;
};

// Exponent of y, stored as an integer multiple of 1/2.
struct YExp {
  int n2 = 0;

  constexpr YExp() = default;
  static constexpr YExp from_halves(int n) { YExp e; e.n2 = n; return e; }
  static constexpr YExp integer(int n) { return from_halves(2 * n); }
  static YExp rational(long p, long q);

  bool is_integer() const { return n2 % 2 == 0; }
  double to_double() const { return n2 / 2.0; }

  friend constexpr YExp operator+(YExp a, YExp b) { return from_halves(a.n2 + b.n2); }
  friend constexpr YExp operator-(YExp a, YExp b) { return from_halves(a.n2 - b.n2); }
  constexpr YExp operator-() const { return from_halves(-n2); }
  friend constexpr YExp operator*(int k, YExp a) { return from_halves(k * a.n2); }
  friend constexpr auto operator<=>(YExp a, YExp b) = default;

  std::string str() const;
};

}  // namespace ellipt
