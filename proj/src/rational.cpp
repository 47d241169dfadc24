#include "carpool/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <sstream>

namespace carpool {

namespace {

bool parse_int(const std::string& s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = neg ? -v : v;
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return std::nullopt;

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Int num, den;
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rat(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) return std::nullopt;
    if (head.empty() || head == "-" || head == "+") head += '0';
    Int num;
    if (!parse_int(head + frac, num)) return std::nullopt;
    Int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rat(num, den);
  }

  Int num;
  if (!parse_int(s, num)) return std::nullopt;
  return Rat(num);
}

std::string to_fraction_string(const Rat& value) {
  std::ostringstream os;
  os << numerator(value) << '/' << denominator(value);
  return os.str();
}

std::string to_decimal_string(const Rat& value, int digits) {
  Int num = numerator(value);
  Int den = denominator(value);
  bool neg = num < 0;
  if (neg) num = -num;
  Int whole = num / den;
  Int rem = num % den;
  std::ostringstream os;
  if (neg) os << '-';
  os << whole;
  if (rem != 0) {
    os << '.';
    for (int i = 0; i < digits && rem != 0; ++i) {
      rem *= 10;
      os << rem / den;
      rem %= den;
    }
  }
  return os.str();
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

}  // namespace carpool
