#include "ctree/rational.hpp"

#include <cctype>

namespace ctree {

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_fraction(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(const std::string& s, size_t from) {
  if (from >= s.size()) return false;
  for (size_t i = from; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

bool parse_fraction(const std::string& text, Rational& out) {
  size_t slash = text.find('/');
  if (slash == std::string::npos) return false;
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (num.empty() || den.empty()) return false;
  size_t num_start = (num[0] == '-' || num[0] == '+') ? 1 : 0;
  if (!all_digits(num, num_start) || !all_digits(den, 0)) return false;
  BigInt n(num);
  BigInt d(den);
  if (d == 0) return false;
  out = Rational(n, d);
  return true;
}

}  // namespace ctree
