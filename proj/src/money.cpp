#include "bilanz/money.hpp"

#include <cctype>
#include <cstdlib>

#include "bilanz/errors.hpp"

namespace bilanz {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Money Money::parse(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty amount");

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }

  std::int64_t units = 0;
  bool any_digit = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    char c = text[i];
    if (c == ',') continue;  // thousands separator
    if (!is_digit(c)) throw ParseError("invalid amount '" + std::string(text) + "'");
    if (units > (INT64_MAX - 9) / 10) throw ParseError("amount out of range '" + std::string(text) + "'");
    units = units * 10 + (c - '0');
    any_digit = true;
  }

  std::int64_t cents = 0;
  if (i < text.size()) {  // fractional part
    ++i;
    int digits = 0;
    for (; i < text.size(); ++i, ++digits) {
      if (!is_digit(text[i])) throw ParseError("invalid amount '" + std::string(text) + "'");
      if (digits >= 2) throw ParseError("more than two decimal places in '" + std::string(text) + "'");
      cents = cents * 10 + (text[i] - '0');
      any_digit = true;
    }
    if (digits == 1) cents *= 10;
  }
  if (!any_digit) throw ParseError("invalid amount '" + std::string(text) + "'");

  std::int64_t total = units * 100 + cents;
  return Money::from_cents(negative ? -total : total);
}

std::string Money::str() const {
  std::int64_t c = cents_;
  std::string sign;
  if (c < 0) {
    sign = "-";
    c = -c;
  }
  std::string out = sign + std::to_string(c / 100);
  if (c % 100 != 0) {
    std::int64_t frac = c % 100;
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    out += static_cast<char>('0' + frac % 10);
  }
  return out;
}

}  // namespace bilanz
