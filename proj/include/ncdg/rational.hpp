#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncdg {

// Always canonical: gmp normalizes after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q". Throws ParseError otherwise or on zero denominator.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

Integer factorial(unsigned k);
Rational inverse_factorial(unsigned k);
Integer binomial(unsigned n, unsigned k);

}  // namespace ncdg
