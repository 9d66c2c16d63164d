#include "driftmon/timeutil.hpp"

#include <cstdio>

#include "driftmon/types.hpp"

namespace driftmon {

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  year = static_cast<int>(y + (month <= 2));
}

bool in_range(int v, int lo, int hi) { return v >= lo && v <= hi; }

}  // namespace

std::int64_t parse_iso8601_utc(const std::string& text) {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  char sep = 0;
  char tail[4] = {0, 0, 0, 0};
  const int got = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%1s",
                              &year, &month, &day, &sep, &hour, &minute,
                              &second, tail);
  if (got < 7 || (sep != 'T' && sep != ' ')) {
    throw DataError("unparsable ISO-8601 timestamp: '" + text + "'");
  }
  if (got == 8 && !(tail[0] == 'Z' && tail[1] == 0)) {
    throw DataError("unsupported timestamp suffix in '" + text +
                    "' (only UTC / 'Z' timestamps are accepted)");
  }
  if (!in_range(month, 1, 12) || !in_range(day, 1, 31) ||
      !in_range(hour, 0, 23) || !in_range(minute, 0, 59) ||
      !in_range(second, 0, 60)) {
    throw DataError("out-of-range timestamp field in '" + text + "'");
  }
  return days_from_civil(year, month, day) * kSecondsPerDay + hour * 3600 +
         minute * 60 + second;
}

std::string format_iso8601_utc(std::int64_t unix_seconds) {
  const std::int64_t day = day_of(unix_seconds);
  std::int64_t rest = unix_seconds - day * kSecondsPerDay;
  int year, month, dom;
  civil_from_days(day, year, month, dom);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ",
                year, month, dom, static_cast<long long>(rest / 3600),
                static_cast<long long>(rest / 60 % 60),
                static_cast<long long>(rest % 60));
  return buf;
}

std::string format_date(std::int64_t day_number) {
  int year, month, dom;
  civil_from_days(day_number, year, month, dom);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, dom);
  return buf;
}

}  // namespace driftmon
