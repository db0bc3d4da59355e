#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mlcp {

// All circulation timestamps are kept as whole minutes since midnight of
// day 1, so the HH:MM input format round-trips without drift. Durations and
// intervals coming from configs stay as fractional hours and are converted
// with to_minutes() at comparison sites.
using Minutes = std::int64_t;

inline constexpr Minutes kMinutesPerDay = 24 * 60;

inline double to_hours(Minutes m) { return static_cast<double>(m) / 60.0; }
inline double to_minutes(double hours) { return hours * 60.0; }

/// Raised when an input file cannot be parsed at all (as opposed to a
/// well-formed file that violates domain rules).
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct ClockTime {
  int hour = 0;    // 0..23
  int minute = 0;  // 0..59
};

/// Parses "HH:MM" (H:MM also accepted). Throws FormatError on anything else.
ClockTime parse_clock(const std::string& text);

/// Minute-of-day for a wall clock value.
inline Minutes clock_minutes(ClockTime c) {
  return static_cast<Minutes>(c.hour) * 60 + c.minute;
}

/// (day, clock) -> minutes since midnight of day 1. Day is 1-based.
Minutes encode_minutes(int day, ClockTime clock);

/// (day, "HH:MM") -> real hours since midnight of day 1.
/// encode_time(4, "09:30") == 81.5
double encode_time(int day, const std::string& clock);

/// "HH:MM" for a minute-of-day value in [0, 1440).
std::string format_clock(Minutes minute_of_day);

/// Fixed 6-decimal hours rendering used by the MO CSV export.
std::string format_hours6(Minutes m);

}  // namespace mlcp
