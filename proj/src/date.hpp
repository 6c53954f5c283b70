#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trendmine {

// Calendar day; arithmetic in whole days.
using Date = std::chrono::sys_days;

constexpr std::int64_t kSecondsPerDay = 86400;

// Parses YYYY-MM-DD. Returns nullopt on any syntax or range error.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date day);

// Day containing `epoch_seconds` after shifting by `offset_minutes`.
Date day_of(std::int64_t epoch_seconds, int offset_minutes);

// Epoch seconds of local midnight for `day` under `offset_minutes`.
std::int64_t local_midnight(Date day, int offset_minutes);

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

}  // namespace trendmine
