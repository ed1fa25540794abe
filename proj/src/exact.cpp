#include "curvetop/exact.hpp"

#include <cctype>

namespace curvetop {

Rat parse_rational(const std::string& text) {
  auto fail = [&]() -> Rat {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = (text[pos] == '-');
    ++pos;
  }
  auto digits = [&](std::size_t& p) {
    std::string d;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) d += text[p++];
    return d;
  };
  std::string whole = digits(pos);
  Int num, den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string denom = digits(pos);
    if (whole.empty() || denom.empty() || pos != text.size()) fail();
    num = Int(whole);
    den = Int(denom);
    if (den == 0) fail();
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::string frac = digits(pos);
    if ((whole.empty() && frac.empty()) || pos != text.size()) fail();
    num = Int(whole.empty() ? "0" : whole);
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else {
    if (whole.empty() || pos != text.size()) fail();
    num = Int(whole);
  }
  Rat value(num, den);
  return negative ? Rat(-value) : value;
}

}  // namespace curvetop
