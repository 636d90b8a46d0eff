#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cachedof {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

BigInt factorial(int n);

// Always "p/q", including integers ("2/1"), so consumers can parse uniformly.
std::string to_fraction_string(const Rational& value);

// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument.
Rational parse_fraction(std::string_view text);

double to_double(const Rational& value);

}  // namespace cachedof
