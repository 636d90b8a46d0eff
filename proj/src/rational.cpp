#include "cachedof/rational.hpp"

#include <stdexcept>

namespace cachedof {

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_fraction(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in fraction");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
      }
    }
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace cachedof
