#include "mlcp/time.hpp"

#include <cctype>
#include <cstdio>

namespace mlcp {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ClockTime parse_clock(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw FormatError("clock value '" + text + "' is not HH:MM");
  }
  const std::string h = text.substr(0, colon);
  const std::string m = text.substr(colon + 1);
  if (!all_digits(h) || !all_digits(m) || h.size() > 2 || m.size() != 2) {
    throw FormatError("clock value '" + text + "' is not HH:MM");
  }
  ClockTime c{std::stoi(h), std::stoi(m)};
  if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59) {
    throw FormatError("clock value '" + text + "' out of range");
  }
  return c;
}

Minutes encode_minutes(int day, ClockTime clock) {
  if (day < 1) throw FormatError("day must be >= 1");
  return static_cast<Minutes>(day - 1) * kMinutesPerDay + clock_minutes(clock);
}

double encode_time(int day, const std::string& clock) {
  return to_hours(encode_minutes(day, parse_clock(clock)));
}

std::string format_clock(Minutes minute_of_day) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d",
                static_cast<int>(minute_of_day / 60),
                static_cast<int>(minute_of_day % 60));
  return buf;
}

std::string format_hours6(Minutes m) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(m) / 60.0);
  return buf;
}

}  // namespace mlcp
