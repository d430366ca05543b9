#include "ellipt/exponents.hpp"

#include <numeric>

#include "ellipt/errors.hpp"

namespace ellipt {

namespace {

std::string fraction_str(long p, long q) {
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

}  // namespace

QExp QExp::rational(long p, long q) {
  if (q == 0) throw BadExponent("zero denominator");
  if (q < 0) { p = -p; q = -q; }
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (24 % q != 0)
    throw BadExponent("q-exponent " + std::to_string(p) + "/" + std::to_string(q) +
                      " is outside the 1/24 lattice");
  return from_24ths(static_cast<int>(p * (24 / q)));
}

long QExp::num() const { return n24 / std::gcd(n24, 24); }
long QExp::den() const { return 24 / std::gcd(n24, 24); }
std::string QExp::str() const { return fraction_str(n24, 24); }

YExp YExp::rational(long p, long q) {
  if (q == 0) throw BadExponent("zero denominator");
  if (q < 0) { p = -p; q = -q; }
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (2 % q != 0)
    throw BadExponent("y-exponent " + std::to_string(p) + "/" + std::to_string(q) +
                      " is outside the 1/2 lattice");
  return from_halves(static_cast<int>(p * (2 / q)));
}

std::string YExp::str() const { return fraction_str(n2, 2); }

}  // namespace ellipt
