#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "error.hpp"
#include "rng.hpp"
#include "trends.hpp"

using namespace trendmine;
using namespace trendmine::trends;
using sentiment::Polarity;

namespace {

const Date d0 = make_date(2012, 10, 1);

TrendSeries series(std::vector<double> v) {
  TrendSeries s;
  for (std::size_t i = 0; i < v.size(); ++i) s.points.push_back({d0 + std::chrono::days(i), v[i]});
  return s;
}

std::vector<int> peak_offsets(const TrendSeries& s, double prom = 1.5) {
  std::vector<int> out;
  for (Date d : find_peaks(s, prom)) out.push_back(static_cast<int>((d - d0).count()));
  return out;
}

corpus::TweetRecord rec(std::string text, std::string source = "web") {
  corpus::TweetRecord r;
  r.id = text;
  r.text = std::move(text);
  r.source = std::move(source);
  return r;
}

std::vector<const corpus::TweetRecord*> ptrs(const std::vector<corpus::TweetRecord>& v) {
  std::vector<const corpus::TweetRecord*> p;
  for (const auto& r : v) p.push_back(&r);
  return p;
}

corpus::PollRecord poll(Date d, double a, double b) {
  corpus::PollRecord p;
  p.pollster = "P";
  p.end_date = d;
  p.favor_a = a;
  p.favor_b = b;
  return p;
}

int code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return -1;
}

}  // namespace

TEST_CASE("daily_frequency fills gaps") {
  std::vector<corpus::DailyBucket> b = {{d0, {"a", "b"}}, {d0 + std::chrono::days(2), {"c"}}};
  const auto s = daily_frequency(b);
  REQUIRE(s.points.size() == 3);
  CHECK(s.points[1].value == 0);
  CHECK(s.points[2].value == 1);
  const auto r = daily_frequency(b, d0 - std::chrono::days(1), d0 + std::chrono::days(3));
  CHECK(r.points.size() == 5);
  CHECK(r.points.front().value == 0);
  CHECK(r.at(d0) == 2.0);
  CHECK_FALSE(r.at(d0 + std::chrono::days(9)));
}

TEST_CASE("find_peaks: examples") {
  CHECK(peak_offsets(series({1, 1, 5, 1, 1})) == std::vector<int>{2});
  CHECK(peak_offsets(series({1, 1, 1, 1})).empty());
  // plateau: first day of the rise only
  CHECK(peak_offsets(series({1, 4, 4, 1, 1})) == std::vector<int>{1});
  // not prominent enough
  CHECK(peak_offsets(series({10, 10, 14, 10, 10})).empty());
  // endpoints only as the unique maximum
  CHECK(peak_offsets(series({9, 1, 1, 1})) == std::vector<int>{0});
  CHECK(peak_offsets(series({1, 1, 1, 9})) == std::vector<int>{3});
  CHECK(peak_offsets(series({9, 1, 1, 9})).empty());
  CHECK(code_of([] { find_peaks(series({1, 2})); }) == static_cast<int>(Errc::SeriesTooShort));
}

TEST_CASE("find_peaks: planted spikes over noise") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(40);
    for (auto& x : v) x = 1000 + rng.uniform(-100, 100);
    std::vector<int> planted;
    for (int day = 3; day < 37; day += 5 + static_cast<int>(rng.below(4))) {
      v[static_cast<std::size_t>(day)] *= 2 + rng.uniform01() * 3;
      planted.push_back(day);
    }
    CHECK(peak_offsets(series(v)) == planted);
  }
}

TEST_CASE("find_peaks: properties") {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(3 + rng.below(30));
    for (auto& x : v) x = static_cast<double>(rng.below(20));
    const auto s = series(v);
    const auto p = peak_offsets(s);
    // scale invariant
    auto scaled = v;
    for (auto& x : scaled) x *= 7;
    CHECK(peak_offsets(series(scaled)) == p);
    // no two consecutive days are both peaks
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] - p[i - 1] >= 2);
    // raising the prominence threshold only removes peaks
    const auto strict = peak_offsets(s, 3.0);
    CHECK(std::includes(p.begin(), p.end(), strict.begin(), strict.end()));
  }
}

TEST_CASE("mention_share") {
  std::vector<corpus::TweetRecord> v = {rec("Obama tonight"), rec("Romney and Obama"), rec("weather"), rec("mitt!")};
  const auto p = ptrs(v);
  const auto s = mention_share(p, text::default_candidates());
  CHECK(s.at("obama") == doctest::Approx(50));
  CHECK(s.at("romney") == doctest::Approx(50));
  std::vector<const corpus::TweetRecord*> none;
  CHECK(code_of([&] { mention_share(none, text::default_candidates()); }) == static_cast<int>(Errc::EmptySample));
}

TEST_CASE("histograms") {
  std::vector<corpus::TweetRecord> v = {rec("#a #b", "web"), rec("#b", "web"), rec("#c #b #a", "iphone"),
                                        rec("plain", "android")};
  const auto p = ptrs(v);
  const auto h = hashtag_histogram(p, 0);
  CHECK(h.total == 6);
  REQUIRE(h.bins.size() == 3);
  CHECK(h.bins[0] == HistogramBin{"#b", 3, 50.0});
  CHECK(h.bins[1].key == "#a");
  const auto top = hashtag_histogram(p, 1);
  CHECK(top.bins.size() == 1);
  CHECK(top.total == 6);
  const auto src = source_histogram(p, 0);
  CHECK(src.total == 4);
  CHECK(src.bins[0] == HistogramBin{"web", 2, 50.0});
  CHECK(src.bins[1].key == "android");  // count tie -> key order
}

TEST_CASE("histogram shares sum to 100 without truncation") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<corpus::TweetRecord> v;
    for (int i = 0; i < 30; ++i) {
      std::string t = "x";
      for (std::uint64_t k = 0; k < rng.below(4); ++k) t += " #t" + std::to_string(rng.below(8));
      v.push_back(rec(t, "s" + std::to_string(rng.below(5))));
    }
    const auto p = ptrs(v);
    for (const auto& h : {hashtag_histogram(p, 0), source_histogram(p, 0)}) {
      if (h.total == 0) continue;
      double sum = 0;
      for (const auto& b : h.bins) sum += b.share;
      CHECK(sum == doctest::Approx(100.0));
      for (std::size_t i = 1; i < h.bins.size(); ++i) {
        CHECK((h.bins[i - 1].count > h.bins[i].count ||
               (h.bins[i - 1].count == h.bins[i].count && h.bins[i - 1].key < h.bins[i].key)));
      }
    }
  }
}

TEST_CASE("sentiment_trend counts single-candidate calls") {
  std::vector<sentiment::LabeledExample> ex = {{{"great"}, "obama", Polarity::Positive},
                                               {{"awful"}, "obama", Polarity::Negative},
                                               {{"tonight"}, "obama", Polarity::Neutral}};
  const auto model = sentiment::NBModel::train(ex);
  std::vector<corpus::TweetRecord> v = {rec("Obama great"), rec("Obama awful"), rec("Romney great"),
                                        rec("Romney tonight"), rec("Obama Romney great")};
  std::vector<DaySample> days = {{d0, ptrs(v)}, {d0 + std::chrono::days(1), {}}};
  const auto t = sentiment_trend(days, model, text::default_candidates());
  REQUIRE(t.pos_a.points.size() == 2);
  CHECK(t.pos_a.points[0].value == 1);
  CHECK(t.neg_a.points[0].value == 1);
  CHECK(t.pos_b.points[0].value == 1);
  CHECK(t.neg_b.points[0].value == 0);
  CHECK(t.pos_a.points[1].value == 0);
}

TEST_CASE("poll margin, leader and agreement") {
  const Date d1 = d0 + std::chrono::days(1), d2 = d0 + std::chrono::days(2);
  std::vector<corpus::PollRecord> polls = {poll(d0, 50, 46), poll(d0, 44, 48), poll(d1, 47, 47), poll(d2, 45, 49)};
  const auto m = poll_margin_series(polls);
  REQUIRE(m.points.size() == 3);
  CHECK(m.points[0].value == doctest::Approx(0));
  CHECK(m.points[2].value == doctest::Approx(-4));

  const auto lead = leader_series(series({5, 1, 1, 2}), series({1, 4, 3, 2}));
  REQUIRE(lead.points.size() == 4);
  CHECK(lead.points[0].value == 1);
  CHECK(lead.points[1].value == -1);
  CHECK(lead.points[3].value == 0);

  // d0 and d1 are poll ties; only d2 (B in both) is compared
  const auto ag = poll_leader_agreement(polls, lead);
  CHECK(ag.rows.size() == 3);
  CHECK(ag.compared_days == 1);
  CHECK(ag.tie_days == 2);
  CHECK(ag.poll_days_b == 1);
  CHECK(ag.poll_days_a == 0);
  REQUIRE(ag.agreement);
  CHECK(*ag.agreement == 1.0);

  // every overlap a tie: agreement stays unset
  const auto flat = poll_leader_agreement(polls, series({0, 0, 0}));
  CHECK_FALSE(flat.agreement);
}

TEST_CASE("agreement needs overlap") {
  std::vector<corpus::PollRecord> polls = {poll(d0 + std::chrono::days(30), 50, 40)};
  CHECK(code_of([&] { poll_leader_agreement(polls, series({1, 1, 1})); }) == static_cast<int>(Errc::NoOverlap));
}

TEST_CASE("series and histogram serialization") {
  const auto s = series({1, 2.5});
  const auto csv = series_to_csv(s);
  CHECK(csv.find("2012-10-02,2.5") != std::string::npos);
  const auto j = series_to_json(s);
  CHECK(j["points"][1]["day"] == "2012-10-02");
  CHECK(j["points"][1]["value"] == 2.5);
}
