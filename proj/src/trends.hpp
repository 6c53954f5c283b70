#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "date.hpp"
#include "sentiment.hpp"
#include "textprep.hpp"

namespace trendmine::trends {

struct SeriesPoint {
  Date day;
  double value = 0.0;
  bool operator==(const SeriesPoint&) const = default;
};

// Days strictly increasing, values finite.
struct TrendSeries {
  std::string label;
  std::vector<SeriesPoint> points;

  std::optional<double> at(Date day) const;
};

struct HistogramBin {
  std::string key;
  std::size_t count = 0;
  double share = 0.0;  // percent
  bool operator==(const HistogramBin&) const = default;
};

struct Histogram {
  std::vector<HistogramBin> bins;  // count desc, then key asc
  std::size_t total = 0;           // denominator used for shares
};

// A day's sampled records. Pointers refer into the loaded corpus.
struct DaySample {
  Date day;
  std::vector<const corpus::TweetRecord*> records;
};

using RecordView = std::span<const corpus::TweetRecord* const>;

// Bucket sizes per day; days between the first and last bucket that have no
// bucket are emitted with value 0.
TrendSeries daily_frequency(std::span<const corpus::DailyBucket> buckets);

// Same, over the explicit inclusive range [first, last].
TrendSeries daily_frequency(std::span<const corpus::DailyBucket> buckets, Date first, Date last);

// Interior day d is a peak iff v(d) > v(d-1), v(d) >= v(d+1) and
// v(d) / median(series) >= min_prominence. An endpoint is a peak only when it
// is the unique global maximum. Throws SeriesTooShort below three points.
std::vector<Date> find_peaks(const TrendSeries& series, double min_prominence = 1.5);

// Percent of records mentioning each candidate; a record mentioning both
// counts for both. Throws EmptySample.
std::map<std::string, double> mention_share(RecordView sample, std::span<const text::CandidateSpec> candidates);

// `top_n == 0` keeps every bin. Shares are percent of all hashtag
// occurrences in the sample.
Histogram hashtag_histogram(RecordView sample, std::size_t top_n);

// Shares are percent of records in the sample.
Histogram source_histogram(RecordView sample, std::size_t top_n);

struct SentimentTrend {
  TrendSeries pos_a;
  TrendSeries neg_a;
  TrendSeries pos_b;
  TrendSeries neg_b;
};

// Per-day counts of single-candidate classifications; Neutral excluded.
SentimentTrend sentiment_trend(std::span<const DaySample> days, const sentiment::NBModel& model,
                               std::span<const text::CandidateSpec> candidates);

// Mean (favor_a - favor_b) per poll end date.
TrendSeries poll_margin_series(std::span<const corpus::PollRecord> polls);

// sign(a - b) per day present in both series.
TrendSeries leader_series(const TrendSeries& a, const TrendSeries& b);

struct AgreementRow {
  Date day;
  int poll_leader = 0;     // +1 A, -1 B, 0 tie
  int twitter_leader = 0;
  bool agree = false;
};

struct PollAgreement {
  std::optional<double> agreement;  // unset when every overlapping day is a tie
  std::size_t compared_days = 0;
  std::size_t tie_days = 0;
  std::size_t poll_days_a = 0;  // over all poll days, not just the overlap
  std::size_t poll_days_b = 0;
  std::vector<AgreementRow> rows;  // every overlapping day, ties included
};

// Throws NoOverlap when no day has both polls and a Twitter leader.
PollAgreement poll_leader_agreement(std::span<const corpus::PollRecord> polls, const TrendSeries& twitter_leader);

std::string series_to_csv(const TrendSeries& series);
std::string histogram_to_csv(const Histogram& histogram);
nlohmann::json series_to_json(const TrendSeries& series);
nlohmann::json histogram_to_json(const Histogram& histogram);

}  // namespace trendmine::trends
