#include "trends.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "strutil.hpp"

namespace trendmine::trends {

std::optional<double> TrendSeries::at(Date day) const {
  auto it = std::lower_bound(points.begin(), points.end(), day,
                             [](const SeriesPoint& p, Date d) { return p.day < d; });
  if (it == points.end() || it->day != day) return std::nullopt;
  return it->value;
}

TrendSeries daily_frequency(std::span<const corpus::DailyBucket> buckets) {
  if (buckets.empty()) return {"daily_frequency", {}};
  auto [lo, hi] = std::minmax_element(buckets.begin(), buckets.end(),
                                      [](const auto& a, const auto& b) { return a.day < b.day; });
  return daily_frequency(buckets, lo->day, hi->day);
}

TrendSeries daily_frequency(std::span<const corpus::DailyBucket> buckets, Date first, Date last) {
  TrendSeries s{"daily_frequency", {}};
  if (last < first) return s;
  std::map<Date, double> sizes;
  for (const auto& b : buckets) sizes[b.day] += static_cast<double>(b.tweet_ids.size());
  for (Date d = first; d <= last; d += std::chrono::days{1}) {
    auto it = sizes.find(d);
    s.points.push_back({d, it == sizes.end() ? 0.0 : it->second});
  }
  return s;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Histogram make_histogram(const std::map<std::string, std::size_t>& counts, std::size_t denominator,
                         std::size_t top_n) {
  Histogram h;
  h.total = denominator;
  for (const auto& [key, count] : counts) h.bins.push_back({key, count, 0.0});
  std::stable_sort(h.bins.begin(), h.bins.end(),
                   [](const HistogramBin& a, const HistogramBin& b) { return a.count > b.count; });
  if (top_n != 0 && h.bins.size() > top_n) h.bins.resize(top_n);
  for (auto& b : h.bins) b.share = 100.0 * static_cast<double>(b.count) / static_cast<double>(denominator);
  return h;
}

int sign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

std::vector<Date> find_peaks(const TrendSeries& series, double min_prominence) {
  const auto& p = series.points;
  if (p.size() < 3) throw Error(Errc::SeriesTooShort, "peak detection needs at least 3 points");
  std::vector<double> values;
  values.reserve(p.size());
  for (const auto& pt : p) values.push_back(pt.value);
  const double med = median(values);
  auto prominent = [&](double v) { return med > 0 ? v / med >= min_prominence : v > 0; };
  auto unique_max = [&](std::size_t i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j != i && values[j] >= values[i]) return false;
    }
    return true;
  };
  std::vector<Date> peaks;
  const std::size_t n = values.size();
  if (unique_max(0)) peaks.push_back(p[0].day);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1] && prominent(values[i])) peaks.push_back(p[i].day);
  }
  if (unique_max(n - 1)) peaks.push_back(p[n - 1].day);
  return peaks;
}

std::map<std::string, double> mention_share(RecordView sample, std::span<const text::CandidateSpec> candidates) {
  if (sample.empty()) throw Error(Errc::EmptySample, "mention share of an empty sample");
  std::map<std::string, double> share;
  for (const auto& c : candidates) share[c.name] = 0.0;
  for (const auto* r : sample) {
    for (const auto& name : text::detect_mentions(r->text, candidates)) share[name] += 1.0;
  }
  for (auto& [_, v] : share) v = 100.0 * v / static_cast<double>(sample.size());
  return share;
}

Histogram hashtag_histogram(RecordView sample, std::size_t top_n) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto* r : sample) {
    for (auto& tag : text::extract_hashtags(r->text)) {
      ++counts[tag];
      ++total;
    }
  }
  if (total == 0) return {};
  return make_histogram(counts, total, top_n);
}

Histogram source_histogram(RecordView sample, std::size_t top_n) {
  if (sample.empty()) return {};
  std::map<std::string, std::size_t> counts;
  for (const auto* r : sample) ++counts[r->source];
  return make_histogram(counts, sample.size(), top_n);
}

SentimentTrend sentiment_trend(std::span<const DaySample> days, const sentiment::NBModel& model,
                               std::span<const text::CandidateSpec> candidates) {
  if (candidates.size() != 2) throw Error(Errc::InvalidArgument, "sentiment trend needs exactly two candidates");
  const std::string& a = candidates[0].name;
  const std::string& b = candidates[1].name;
  SentimentTrend t{{"pos_" + a, {}}, {"neg_" + a, {}}, {"pos_" + b, {}}, {"neg_" + b, {}}};
  std::vector<DaySample> sorted(days.begin(), days.end());
  std::sort(sorted.begin(), sorted.end(), [](const DaySample& x, const DaySample& y) { return x.day < y.day; });
  for (const auto& day : sorted) {
    double pa = 0, na = 0, pb = 0, nb = 0;
    for (const auto* r : day.records) {
      const auto call = sentiment::classify_candidate(model, r->text, candidates);
      if (!call || call->label == sentiment::Polarity::Neutral) continue;
      const bool pos = call->label == sentiment::Polarity::Positive;
      if (call->candidate == a) {
        (pos ? pa : na) += 1;
      } else {
        (pos ? pb : nb) += 1;
      }
    }
    t.pos_a.points.push_back({day.day, pa});
    t.neg_a.points.push_back({day.day, na});
    t.pos_b.points.push_back({day.day, pb});
    t.neg_b.points.push_back({day.day, nb});
  }
  return t;
}

TrendSeries poll_margin_series(std::span<const corpus::PollRecord> polls) {
  std::map<Date, std::pair<double, std::size_t>> by_day;
  for (const auto& p : polls) {
    auto& [sum, n] = by_day[p.end_date];
    sum += p.favor_a - p.favor_b;
    ++n;
  }
  TrendSeries s{"poll_margin", {}};
  for (const auto& [day, acc] : by_day) s.points.push_back({day, acc.first / static_cast<double>(acc.second)});
  return s;
}

TrendSeries leader_series(const TrendSeries& a, const TrendSeries& b) {
  TrendSeries s{"leader", {}};
  for (const auto& pt : a.points) {
    if (auto other = b.at(pt.day)) s.points.push_back({pt.day, static_cast<double>(sign(pt.value - *other))});
  }
  return s;
}

PollAgreement poll_leader_agreement(std::span<const corpus::PollRecord> polls, const TrendSeries& twitter_leader) {
  const TrendSeries margins = poll_margin_series(polls);
  PollAgreement out;
  std::size_t agree = 0;
  for (const auto& pt : margins.points) {
    const int poll = sign(pt.value);
    if (poll > 0) ++out.poll_days_a;
    if (poll < 0) ++out.poll_days_b;
    auto tw = twitter_leader.at(pt.day);
    if (!tw) continue;
    AgreementRow row{pt.day, poll, sign(*tw), false};
    if (row.poll_leader == 0 || row.twitter_leader == 0) {
      ++out.tie_days;
    } else {
      ++out.compared_days;
      row.agree = row.poll_leader == row.twitter_leader;
      if (row.agree) ++agree;
    }
    out.rows.push_back(row);
  }
  if (out.rows.empty()) throw Error(Errc::NoOverlap, "polls and Twitter leader series share no day");
  if (out.compared_days > 0) out.agreement = static_cast<double>(agree) / static_cast<double>(out.compared_days);
  return out;
}

std::string series_to_csv(const TrendSeries& series) {
  std::string out = "day,value\n";
  for (const auto& p : series.points) out += format_date(p.day) + "," + format_double(p.value) + "\n";
  return out;
}

std::string histogram_to_csv(const Histogram& h) {
  std::string out = "key,count,share\n";
  for (const auto& b : h.bins) {
    char share[32];
    std::snprintf(share, sizeof share, "%.4f", b.share);
    out += b.key + "," + std::to_string(b.count) + "," + share + "\n";
  }
  return out;
}

nlohmann::json series_to_json(const TrendSeries& series) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : series.points) pts.push_back({{"day", format_date(p.day)}, {"value", p.value}});
  return {{"label", series.label}, {"points", std::move(pts)}};
}

nlohmann::json histogram_to_json(const Histogram& h) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : h.bins) bins.push_back({{"key", b.key}, {"count", b.count}, {"share", b.share}});
  return {{"total", h.total}, {"bins", std::move(bins)}};
}

}  // namespace trendmine::trends
