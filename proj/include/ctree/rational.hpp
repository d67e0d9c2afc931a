#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ctree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Lowest terms; integral values drop the denominator ("0", "1", "2/3").
std::string format_rational(const Rational& r);

// Always "num/den" in lowest terms ("0/1", "1/1", "2/3").
std::string format_fraction(const Rational& r);

// Strict "<int>/<int>" form, nonzero denominator. False on anything else.
bool parse_fraction(const std::string& text, Rational& out);

}  // namespace ctree
