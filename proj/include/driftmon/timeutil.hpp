#pragma once

#include <cstdint>
#include <string>

namespace driftmon {

constexpr std::int64_t kSecondsPerDay = 86400;

// Parses "YYYY-MM-DDTHH:MM:SS" (optional trailing 'Z', 'T' or ' ' separator)
// as UTC and returns Unix seconds. Throws DataError on malformed input.
std::int64_t parse_iso8601_utc(const std::string& text);

std::string format_iso8601_utc(std::int64_t unix_seconds);

// UTC calendar day number (days since 1970-01-01, floored).
inline std::int64_t day_of(std::int64_t unix_seconds) {
  std::int64_t day = unix_seconds / kSecondsPerDay;
  if (unix_seconds % kSecondsPerDay < 0) --day;
  return day;
}

// "YYYY-MM-DD" for a day number.
std::string format_date(std::int64_t day_number);

}  // namespace driftmon
