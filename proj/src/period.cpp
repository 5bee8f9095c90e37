#include "binfar/period.hpp"

#include <cstdio>

#include "binfar/errors.hpp"

namespace binfar {

Period parse_period(const std::string& text) {
  int y = 0, m = 0, d = 0;
  // "yyyy-mm" (optionally "yyyy-mm-dd"); the day is ignored.
  if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d) >= 2 && y >= 1000) {
    if (m < 1 || m > 12) throw ParseError("bad month in period '" + text + "'");
    return Period{y, m};
  }
  // "m/d/yyyy"
  if (std::sscanf(text.c_str(), "%d/%d/%d", &m, &d, &y) == 3) {
    if (m < 1 || m > 12) throw ParseError("bad month in period '" + text + "'");
    return Period{y, m};
  }
  throw ParseError("unrecognized period '" + text + "' (expected yyyy-mm or m/d/yyyy)");
}

std::string to_string(const Period& p) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", p.year, p.month);
  return buf;
}

Period add_months(const Period& p, int months) {
  int idx = p.year * 12 + (p.month - 1) + months;
  Period out;
  out.year = idx / 12;
  out.month = idx % 12 + 1;
  if (idx < 0 && idx % 12 != 0) {
    out.year -= 1;
    out.month = idx % 12 + 13;
  }
  return out;
}

int months_between(const Period& a, const Period& b) {
  return (b.year * 12 + b.month) - (a.year * 12 + a.month);
}

}  // namespace binfar
