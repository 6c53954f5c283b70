#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"
#include "strutil.hpp"

namespace trendmine::corpus {

namespace {

constexpr std::string_view kAbsent = "\\N";

[[noreturn]] void malformed(const std::string& why) { throw Error(Errc::MalformedRecord, why); }

void check_coordinates(double lat, double lon) {
  if (!std::isfinite(lat) || !std::isfinite(lon)) malformed("non-finite coordinate");
  if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0) {
    throw Error(Errc::CoordinateOutOfRange,
                "coordinate out of range: " + format_double(lat) + "," + format_double(lon));
  }
}

void check_text(const std::string& text) {
  if (trim(text).empty()) throw Error(Errc::EmptyText, "empty text");
}

std::optional<double> parse_coordinate(std::string_view field) {
  if (field == kAbsent || trim(field).empty()) return std::nullopt;
  auto v = parse_number<double>(field);
  if (!v) malformed("bad coordinate '" + std::string(field) + "'");
  return v;
}

TweetRecord parse_delimited(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = split(line, '\t');
  if (fields.size() != 7) {
    malformed("expected 7 tab-separated fields, got " + std::to_string(fields.size()));
  }
  TweetRecord r;
  r.id = std::string(trim(fields[0]));
  if (r.id.empty()) malformed("empty id");
  auto ts = parse_number<std::int64_t>(fields[1]);
  if (!ts || *ts < 0) malformed("bad timestamp '" + std::string(fields[1]) + "'");
  r.timestamp = *ts;
  r.source = std::string(fields[2]);
  r.author = std::string(fields[3]);
  r.text = std::string(fields[6]);
  check_text(r.text);
  auto lat = parse_coordinate(fields[4]);
  auto lon = parse_coordinate(fields[5]);
  if (lat && lon) {
    check_coordinates(*lat, *lon);
    r.geo = GeoPoint{*lat, *lon};
  }
  return r;
}

std::optional<double> json_coordinate(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) malformed(std::string("field '") + key + "' must be a number or null");
  return it->get<double>();
}

TweetRecord parse_json_line(std::string_view line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) malformed("JSON record must be an object");
  auto string_field = [&](const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) malformed(std::string("missing string field '") + key + "'");
    return it->get<std::string>();
  };
  TweetRecord r;
  r.id = string_field("id");
  if (r.id.empty()) malformed("empty id");
  auto ts = obj.find("ts");
  if (ts == obj.end() || !ts->is_number_integer()) malformed("missing integer field 'ts'");
  r.timestamp = ts->get<std::int64_t>();
  if (r.timestamp < 0) malformed("negative timestamp");
  r.source = string_field("source");
  r.author = string_field("author");
  r.text = string_field("text");
  check_text(r.text);
  auto lat = json_coordinate(obj, "lat");
  auto lon = json_coordinate(obj, "lon");
  if (lat && lon) {
    check_coordinates(*lat, *lon);
    r.geo = GeoPoint{*lat, *lon};
  }
  return r;
}

bool has_line_break_or_tab(std::string_view s) {
  return s.find_first_of("\t\r\n") != std::string_view::npos;
}

}  // namespace

RecordFormat format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  return (ends_with(".jsonl") || ends_with(".json")) ? RecordFormat::KeyValueJsonLine
                                                     : RecordFormat::DelimitedColumns;
}

TweetRecord parse_tweet_record(std::string_view line, RecordFormat format) {
  return format == RecordFormat::DelimitedColumns ? parse_delimited(line) : parse_json_line(line);
}

std::string serialize_tweet_record(const TweetRecord& r, RecordFormat format) {
  if (format == RecordFormat::KeyValueJsonLine) {
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["ts"] = r.timestamp;
    obj["source"] = r.source;
    obj["author"] = r.author;
    obj["lat"] = r.geo ? nlohmann::ordered_json(r.geo->lat) : nlohmann::ordered_json(nullptr);
    obj["lon"] = r.geo ? nlohmann::ordered_json(r.geo->lon) : nlohmann::ordered_json(nullptr);
    obj["text"] = r.text;
    return obj.dump();
  }
  for (const std::string* field : {&r.id, &r.source, &r.author, &r.text}) {
    if (has_line_break_or_tab(*field)) {
      throw Error(Errc::InvalidArgument, "record " + r.id + " has a tab or line break in a field");
    }
  }
  std::string out;
  out.reserve(r.text.size() + 64);
  out += r.id;
  out += '\t';
  out += std::to_string(r.timestamp);
  out += '\t';
  out += r.source;
  out += '\t';
  out += r.author;
  out += '\t';
  out += r.geo ? format_double(r.geo->lat) : std::string(kAbsent);
  out += '\t';
  out += r.geo ? format_double(r.geo->lon) : std::string(kAbsent);
  out += '\t';
  out += r.text;
  return out;
}

std::vector<TweetRecord> load_tweets(const std::string& path, RecordFormat format) {
  const std::string contents = read_file(path);
  std::vector<TweetRecord> records;
  std::size_t line_no = 0;
  for (std::string_view line : split(contents, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      records.push_back(parse_tweet_record(line, format));
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<TweetRecord> load_tweets(const std::string& path) {
  return load_tweets(path, format_for_path(path));
}

void write_tweets(const std::string& path, std::span<const TweetRecord> records, RecordFormat format) {
  std::string out;
  for (const auto& r : records) {
    out += serialize_tweet_record(r, format);
    out += '\n';
  }
  write_file(path, out);
}

TimeWindow TimeWindow::days(Date first, Date last, int offset_minutes) {
  // Bounds are in shifted (local) seconds, so the offset does not enter here.
  TimeWindow w;
  w.start = local_midnight(first, 0);
  w.end = local_midnight(last + std::chrono::days{1}, 0);
  w.day_offset_minutes = offset_minutes;
  return w;
}

Bucketing bucket_by_day(std::span<const TweetRecord> records, const TimeWindow& window) {
  if (window.start >= window.end) throw Error(Errc::InvalidArgument, "time window start must precede end");
  Bucketing result;
  std::map<Date, std::size_t> slot;
  std::vector<std::unordered_set<std::string_view>> seen;
  const std::int64_t offset = static_cast<std::int64_t>(window.day_offset_minutes) * 60;
  for (const auto& r : records) {
    const std::int64_t shifted = r.timestamp + offset;
    if (shifted < window.start || shifted >= window.end) {
      ++result.dropped;
      continue;
    }
    const Date day = day_of(r.timestamp, window.day_offset_minutes);
    auto [it, inserted] = slot.try_emplace(day, result.buckets.size());
    if (inserted) {
      result.buckets.push_back(DailyBucket{day, {}});
      seen.emplace_back();
    }
    if (!seen[it->second].insert(r.id).second) {
      ++result.duplicates;
      continue;
    }
    result.buckets[it->second].tweet_ids.push_back(r.id);
  }
  std::sort(result.buckets.begin(), result.buckets.end(),
            [](const DailyBucket& a, const DailyBucket& b) { return a.day < b.day; });
  return result;
}

std::vector<std::string> sample_daily(const DailyBucket& bucket, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sample size must be >= 1");
  const auto& ids = bucket.tweet_ids;
  if (n >= ids.size()) return ids;
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ids[order[i]]);
  return out;
}

std::unordered_map<std::string_view, std::size_t> index_by_id(std::span<const TweetRecord> records) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) index.try_emplace(records[i].id, i);
  return index;
}

const char* to_string(Population p) {
  switch (p) {
    case Population::LikelyVoters: return "LikelyVoters";
    case Population::RegisteredVoters: return "RegisteredVoters";
    case Population::Other: return "Other";
  }
  return "Other";
}

const char* to_string(PollMethod m) {
  switch (m) {
    case PollMethod::AutomatedPhone: return "AutomatedPhone";
    case PollMethod::Phone: return "Phone";
    case PollMethod::Internet: return "Internet";
    case PollMethod::Mixed: return "Mixed";
  }
  return "Mixed";
}

namespace {

// Case-insensitive, ignoring spaces, '-' and '_' ("Likely Voters" == "LikelyVoters").
std::string enum_key(std::string_view s) {
  std::string out;
  for (char c : trim(s)) {
    if (c == ' ' || c == '-' || c == '_') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

Population parse_population(std::string_view s) {
  const std::string key = enum_key(s);
  if (key == "likelyvoters" || key == "lv") return Population::LikelyVoters;
  if (key == "registeredvoters" || key == "rv") return Population::RegisteredVoters;
  if (key == "other") return Population::Other;
  malformed("unknown population '" + std::string(s) + "'");
}

PollMethod parse_method(std::string_view s) {
  const std::string key = enum_key(s);
  if (key == "automatedphone") return PollMethod::AutomatedPhone;
  if (key == "phone") return PollMethod::Phone;
  if (key == "internet") return PollMethod::Internet;
  if (key == "mixed") return PollMethod::Mixed;
  malformed("unknown method '" + std::string(s) + "'");
}

double parse_percent(std::string_view s, const char* name) {
  auto v = parse_number<double>(s);
  if (!v || !std::isfinite(*v) || *v < 0.0 || *v > 100.0) {
    malformed(std::string(name) + " must be a percentage in [0,100], got '" + std::string(s) + "'");
  }
  return *v;
}

}  // namespace

PollRecord parse_poll_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = split(line, ',');
  if (fields.size() != 6) malformed("expected 6 comma-separated fields, got " + std::to_string(fields.size()));
  PollRecord p;
  p.pollster = std::string(trim(fields[0]));
  auto date = parse_date(trim(fields[1]));
  if (!date) malformed("bad end_date '" + std::string(fields[1]) + "'");
  p.end_date = *date;
  p.population = parse_population(fields[2]);
  p.method = parse_method(fields[3]);
  p.favor_a = parse_percent(fields[4], "favor_a");
  p.favor_b = parse_percent(fields[5], "favor_b");
  if (p.favor_a + p.favor_b > 100.0) malformed("favor_a + favor_b exceeds 100");
  return p;
}

std::string serialize_poll_record(const PollRecord& p) {
  return p.pollster + "," + format_date(p.end_date) + "," + to_string(p.population) + "," +
         to_string(p.method) + "," + format_double(p.favor_a) + "," + format_double(p.favor_b);
}

std::vector<PollRecord> parse_polls(std::string_view contents) {
  std::vector<PollRecord> polls;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (std::string_view line : split(contents, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (trim(line) != kPollHeader) {
        throw Error(Errc::MalformedRecord, "line 1: expected header '" + std::string(kPollHeader) + "'");
      }
      continue;
    }
    try {
      polls.push_back(parse_poll_line(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::stable_sort(polls.begin(), polls.end(),
                   [](const PollRecord& a, const PollRecord& b) { return a.end_date < b.end_date; });
  return polls;
}

std::vector<PollRecord> load_polls(const std::string& path) {
  try {
    return parse_polls(read_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::Io) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::map<PollMethod, double> method_shares(std::span<const PollRecord> polls) {
  std::map<PollMethod, double> shares{{PollMethod::AutomatedPhone, 0.0},
                                      {PollMethod::Phone, 0.0},
                                      {PollMethod::Internet, 0.0},
                                      {PollMethod::Mixed, 0.0}};
  if (polls.empty()) return shares;
  for (const auto& p : polls) shares[p.method] += 1.0;
  for (auto& [_, v] : shares) v = 100.0 * v / static_cast<double>(polls.size());
  return shares;
}

std::map<Population, double> population_shares(std::span<const PollRecord> polls) {
  std::map<Population, double> shares{
      {Population::LikelyVoters, 0.0}, {Population::RegisteredVoters, 0.0}, {Population::Other, 0.0}};
  if (polls.empty()) return shares;
  for (const auto& p : polls) shares[p.population] += 1.0;
  for (auto& [_, v] : shares) v = 100.0 * v / static_cast<double>(polls.size());
  return shares;
}

}  // namespace trendmine::corpus
