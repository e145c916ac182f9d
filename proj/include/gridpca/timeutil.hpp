#pragma once

#include <cstdint>
#include <string>

namespace gridpca {

// All instants are UTC unix seconds; no leap seconds, no time zones.

std::string format_iso8601(std::int64_t unix_seconds);  // YYYY-MM-DDTHH:MM:SSZ

/// Parses YYYY-MM-DDTHH:MM:SS with optional trailing 'Z'. Throws validation_error.
std::int64_t parse_iso8601(const std::string& text);

int hour_of_day(std::int64_t unix_seconds);   // 0..23
int hour_of_week(std::int64_t unix_seconds);  // 0..167, Monday 00:00 -> 0

/// Days since Jan 1 of the instant's year, fractional (0.0 = midnight Jan 1).
double day_of_year(std::int64_t unix_seconds);

}  // namespace gridpca
