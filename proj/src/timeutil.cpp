#include "gridpca/timeutil.hpp"

#include <cstdio>

#include "gridpca/errors.hpp"

namespace gridpca {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y += (m <= 2);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t positive_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

std::string format_iso8601(std::int64_t unix_seconds) {
  const std::int64_t days = floor_div(unix_seconds, 86400);
  const std::int64_t sod = positive_mod(unix_seconds, 86400);
  std::int64_t y;
  int m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02d-%02dT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d, static_cast<long long>(sod / 3600),
                static_cast<long long>((sod / 60) % 60), static_cast<long long>(sod % 60));
  return buf;
}

std::int64_t parse_iso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0, tail = 0;
  const int got = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c",
                              &y, &mo, &d, &sep, &h, &mi, &s, &tail);
  const bool sep_ok = sep == 'T' || sep == ' ' || sep == 't';
  const bool tail_ok = got == 7 || (got == 8 && (tail == 'Z' || tail == 'z'));
  if (got < 7 || !sep_ok || !tail_ok || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 ||
      mi > 59 || s > 60) {
    throw validation_error("cannot parse timestamp '" + text +
                           "' (expected ISO-8601 like 2011-01-01T00:00:00Z)");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

int hour_of_day(std::int64_t unix_seconds) {
  return static_cast<int>(positive_mod(unix_seconds, 86400) / 3600);
}

int hour_of_week(std::int64_t unix_seconds) {
  // Unix epoch (1970-01-01) was a Thursday; shift so Monday 00:00 maps to 0.
  const std::int64_t hours = floor_div(unix_seconds, 3600);
  return static_cast<int>(positive_mod(hours + 3 * 24, 7 * 24));
}

double day_of_year(std::int64_t unix_seconds) {
  const std::int64_t days = floor_div(unix_seconds, 86400);
  std::int64_t y;
  int m, d;
  civil_from_days(days, y, m, d);
  const std::int64_t jan1 = days_from_civil(y, 1, 1);
  const double frac = static_cast<double>(positive_mod(unix_seconds, 86400)) / 86400.0;
  return static_cast<double>(days - jan1) + frac;
}

}  // namespace gridpca
