#pragma once

#include <compare>
#include <string>

namespace binfar {

// A monthly period. Parses "yyyy-mm" and FRED-style "m/d/yyyy" date labels.
struct Period {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const Period&) const = default;
};

Period parse_period(const std::string& text);
std::string to_string(const Period& p);

Period add_months(const Period& p, int months);
// b - a in months.
int months_between(const Period& a, const Period& b);

}  // namespace binfar
