#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "date.hpp"

namespace trendmine::corpus {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  bool operator==(const GeoPoint&) const = default;
};

// One timestamped short text. Timestamps are UTC epoch seconds.
struct TweetRecord {
  std::string id;
  std::int64_t timestamp = 0;
  std::string source;
  std::string author;
  std::string text;
  std::optional<GeoPoint> geo;

  bool operator==(const TweetRecord&) const = default;
};

enum class RecordFormat { DelimitedColumns, KeyValueJsonLine };

// `.jsonl` / `.json` select the JSON-line layout, anything else the tab layout.
RecordFormat format_for_path(std::string_view path);

// Throws Error{MalformedRecord | EmptyText | CoordinateOutOfRange}.
TweetRecord parse_tweet_record(std::string_view line, RecordFormat format);

// Inverse of parse_tweet_record for records it can produce.
std::string serialize_tweet_record(const TweetRecord& record, RecordFormat format);

// Reads a whole tweet file. Blank lines are skipped; the first bad line
// throws with its 1-based line number in the message.
std::vector<TweetRecord> load_tweets(const std::string& path, RecordFormat format);
std::vector<TweetRecord> load_tweets(const std::string& path);

void write_tweets(const std::string& path, std::span<const TweetRecord> records, RecordFormat format);

struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
  int day_offset_minutes = -480;

  // Window covering local days [first, last] inclusive.
  static TimeWindow days(Date first, Date last, int offset_minutes = -480);
};

struct DailyBucket {
  Date day;
  std::vector<std::string> tweet_ids;
};

struct Bucketing {
  std::vector<DailyBucket> buckets;
  std::size_t dropped = 0;     // shifted timestamp outside [start, end)
  std::size_t duplicates = 0;  // id already present in its bucket
};

// Groups records into local days. The window bounds are compared against the
// offset-shifted timestamp. DST is not modelled; the offset is fixed.
Bucketing bucket_by_day(std::span<const TweetRecord> records, const TimeWindow& window);

// Uniform sample without replacement of min(n, |bucket|) ids. When n covers
// the whole bucket the ids come back in file order; otherwise the order is
// the one produced by a seeded partial Fisher-Yates shuffle.
std::vector<std::string> sample_daily(const DailyBucket& bucket, std::size_t n, std::uint64_t seed);

// id -> position in `records`. Later duplicates do not overwrite earlier ones.
std::unordered_map<std::string_view, std::size_t> index_by_id(std::span<const TweetRecord> records);

enum class Population { LikelyVoters, RegisteredVoters, Other };
enum class PollMethod { AutomatedPhone, Phone, Internet, Mixed };

const char* to_string(Population p);
const char* to_string(PollMethod m);

struct PollRecord {
  std::string pollster;
  Date end_date;
  Population population = Population::LikelyVoters;
  PollMethod method = PollMethod::Phone;
  double favor_a = 0.0;
  double favor_b = 0.0;

  bool operator==(const PollRecord&) const = default;
};

inline constexpr std::string_view kPollHeader = "pollster,end_date,population,method,favor_a,favor_b";

PollRecord parse_poll_line(std::string_view line);
std::string serialize_poll_record(const PollRecord& poll);

// Sorted by end_date (stable with respect to file order).
std::vector<PollRecord> load_polls(const std::string& path);
std::vector<PollRecord> parse_polls(std::string_view contents);

// Percent of polls per method / population; every enum value is present.
std::map<PollMethod, double> method_shares(std::span<const PollRecord> polls);
std::map<Population, double> population_shares(std::span<const PollRecord> polls);

}  // namespace trendmine::corpus
