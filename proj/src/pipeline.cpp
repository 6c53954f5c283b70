#include "pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>

#include "corpus.hpp"
#include "geo.hpp"
#include "lda.hpp"
#include "output.hpp"
#include "rng.hpp"
#include "sentiment.hpp"
#include "strutil.hpp"
#include "synth.hpp"
#include "textprep.hpp"
#include "trends.hpp"

namespace trendmine::pipeline {

namespace {

using nlohmann::json;

// Stream ids for derive_seed, so each stage gets its own sequence.
constexpr std::uint64_t kSampleStream = 0x5a3d;
constexpr std::uint64_t kSplitStream = 0x5b1e;
constexpr std::uint64_t kLdaStream = 0x1da;

void require(const std::string& path, const char* flag, const std::string& command) {
  if (path.empty()) throw Error(Errc::InvalidArgument, command + " needs --" + flag);
  if (!std::filesystem::is_regular_file(path)) throw Error(Errc::Io, "no such file: " + path);
}

text::Preprocessor make_preprocessor(const RunConfig& cfg) {
  auto cues = cfg.negations.empty() ? text::default_negation_cues() : text::load_word_list(cfg.negations);
  auto stops = cfg.stopwords.empty() ? text::default_stop_words() : text::load_word_list(cfg.stopwords);
  return text::Preprocessor(std::move(cues), std::move(stops));
}

// Everything a corpus-reading command shares.
struct Corpus {
  std::vector<corpus::TweetRecord> records;
  Date first;
  Date last;
  corpus::Bucketing bucketing;
  std::vector<const corpus::TweetRecord*> in_window;
  std::vector<trends::DaySample> samples;  // one per day in [first, last]
};

Corpus load_corpus(const RunConfig& cfg, std::uint64_t seed, std::ostream& log) {
  Corpus c;
  c.records = corpus::load_tweets(cfg.in);
  log << "load: " << c.records.size() << " records from " << cfg.in << "\n";
  if (c.records.empty() && (!cfg.first_day || !cfg.last_day)) {
    throw Error(Errc::EmptyCorpus, "corpus is empty and no window was given");
  }
  Date lo = Date::max(), hi = Date::min();
  for (const auto& r : c.records) {
    const Date d = day_of(r.timestamp, cfg.offset_minutes);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  c.first = cfg.first_day.value_or(lo);
  c.last = cfg.last_day.value_or(hi);
  if (c.last < c.first) throw Error(Errc::InvalidArgument, "window last day precedes first day");
  c.bucketing = corpus::bucket_by_day(c.records, corpus::TimeWindow::days(c.first, c.last, cfg.offset_minutes));
  log << "bucket: " << c.bucketing.buckets.size() << " days, " << c.bucketing.dropped << " outside window, "
      << c.bucketing.duplicates << " duplicate ids\n";

  const auto index = corpus::index_by_id(c.records);
  for (const auto& r : c.records) {
    const Date d = day_of(r.timestamp, cfg.offset_minutes);
    if (d >= c.first && d <= c.last) c.in_window.push_back(&r);
  }
  std::map<Date, const corpus::DailyBucket*> by_day;
  for (const auto& b : c.bucketing.buckets) by_day[b.day] = &b;
  std::size_t sampled = 0;
  for (Date d = c.first; d <= c.last; d += std::chrono::days{1}) {
    trends::DaySample s{d, {}};
    if (auto it = by_day.find(d); it != by_day.end()) {
      const auto serial = static_cast<std::uint64_t>(d.time_since_epoch().count());
      for (const auto& id : corpus::sample_daily(*it->second, cfg.sample_size, derive_seed(seed, kSampleStream + serial))) {
        s.records.push_back(&c.records[index.at(id)]);
      }
    }
    sampled += s.records.size();
    c.samples.push_back(std::move(s));
  }
  log << "sample: " << sampled << " records (up to " << cfg.sample_size << " per day)\n";
  return c;
}

sentiment::NBModel train_model(const std::vector<sentiment::LabeledExample>& examples, const text::Preprocessor& prep) {
  auto model = sentiment::NBModel::train(examples);
  model.set_preprocessor(prep);
  return model;
}

json window_json(Date first, Date last, int offset) {
  return {{"first", format_date(first)}, {"last", format_date(last)}, {"offset_minutes", offset}};
}

bool csv(const RunConfig& cfg) { return cfg.format == TableFormat::Csv; }

std::string safe_name(std::string s) {
  for (auto& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  }
  return s;
}

// Individual analyses. Each writes its own files and returns its JSON body
// for `report`.

json do_train(const RunConfig& cfg, const sentiment::LabeledSet& set, const sentiment::NBModel& model,
              OutputDir& out, std::ostream& log) {
  json j = model.to_json();
  out.write_json("model.json", j);
  json summary = {{"examples", set.examples.size()},
                  {"skipped_na", set.skipped_na},
                  {"skipped_mentions", set.skipped_mentions},
                  {"vocabulary_size", model.vocabulary_size()}};
  for (auto l : sentiment::kLabels) {
    summary["documents"][sentiment::to_string(l)] = model.label_doc_count(l);
    summary["priors"][sentiment::to_string(l)] = model.prior(l);
  }
  out.write_json("train.json", summary);
  log << "train: " << set.examples.size() << " examples, vocabulary " << model.vocabulary_size() << "\n";
  (void)cfg;
  return summary;
}

json do_eval(const RunConfig& cfg, std::uint64_t seed, const sentiment::LabeledSet& set,
             const text::Preprocessor& prep, OutputDir& out, std::ostream& log) {
  // Seeded 80/20 split, stratified per label so each side has all three.
  std::array<std::vector<std::size_t>, 3> by_label;
  for (std::size_t i = 0; i < set.examples.size(); ++i) {
    by_label[sentiment::label_index(set.examples[i].label)].push_back(i);
  }
  Rng rng(derive_seed(seed, kSplitStream));
  std::vector<sentiment::LabeledExample> train, test;
  for (auto& idx : by_label) {
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.below(i))]);
    const std::size_t n_test = idx.size() / 5;
    for (std::size_t i = 0; i < idx.size(); ++i) (i < n_test ? test : train).push_back(set.examples[idx[i]]);
  }
  if (test.empty()) throw Error(Errc::InvalidArgument, "labeled set too small for a held-out split");
  const auto model = train_model(train, prep);
  const auto ev = sentiment::evaluate(model, test);
  json confusion = json::object();
  for (auto truth : sentiment::kLabels) {
    for (auto pred : sentiment::kLabels) {
      confusion[sentiment::to_string(truth)][sentiment::to_string(pred)] =
          ev.confusion[sentiment::label_index(truth)][sentiment::label_index(pred)];
    }
  }
  json j = {{"train_size", train.size()}, {"test_size", test.size()}, {"accuracy", ev.accuracy},
            {"confusion", confusion}};
  out.write_json("eval.json", j);
  if (csv(cfg)) {
    std::string body = "truth,predicted,count\n";
    for (auto truth : sentiment::kLabels) {
      for (auto pred : sentiment::kLabels) {
        body += sentiment::to_string(truth) + "," + sentiment::to_string(pred) + "," +
                std::to_string(ev.confusion[sentiment::label_index(truth)][sentiment::label_index(pred)]) + "\n";
      }
    }
    out.write_csv("eval_confusion.csv", body);
  }
  log << "eval: accuracy " << ev.accuracy << " on " << test.size() << " held-out examples\n";
  return j;
}

json do_trends(const RunConfig& cfg, const Corpus& c, OutputDir& out, std::ostream& log) {
  const auto freq = trends::daily_frequency(c.bucketing.buckets, c.first, c.last);
  std::vector<Date> peaks;
  if (freq.points.size() >= 3) peaks = trends::find_peaks(freq, cfg.min_prominence);
  json peak_days = json::array();
  for (auto d : peaks) peak_days.push_back(format_date(d));

  std::vector<trends::TrendSeries> mentions;
  for (const auto& cand : cfg.candidates) mentions.push_back({"mentions_" + cand.name, {}});
  std::vector<const corpus::TweetRecord*> pooled;
  for (const auto& s : c.samples) {
    std::map<std::string, double> share;
    if (!s.records.empty()) share = trends::mention_share(s.records, cfg.candidates);
    for (std::size_t i = 0; i < cfg.candidates.size(); ++i) {
      mentions[i].points.push_back({s.day, share.empty() ? 0.0 : share[cfg.candidates[i].name]});
    }
    pooled.insert(pooled.end(), s.records.begin(), s.records.end());
  }
  const auto tags = trends::hashtag_histogram(pooled, cfg.top_n);
  const auto sources = trends::source_histogram(pooled, cfg.top_n);

  json mention_json = json::array();
  for (const auto& m : mentions) mention_json.push_back(trends::series_to_json(m));
  json daily = {{"window", window_json(c.first, c.last, cfg.offset_minutes)},
                {"daily_frequency", trends::series_to_json(freq)},
                {"peaks", peak_days},
                {"min_prominence", cfg.min_prominence},
                {"dropped", c.bucketing.dropped},
                {"duplicates", c.bucketing.duplicates},
                {"mentions", mention_json}};
  out.write_json("trends_daily.json", daily);
  if (csv(cfg)) {
    out.write_csv("daily_frequency.csv", trends::series_to_csv(freq));
    std::string pk = "day\n";
    for (auto d : peaks) pk += format_date(d) + "\n";
    out.write_csv("peaks.csv", pk);
    for (const auto& m : mentions) out.write_csv(safe_name(m.label) + ".csv", trends::series_to_csv(m));
    out.write_csv("hashtags.csv", trends::histogram_to_csv(tags));
    out.write_csv("sources.csv", trends::histogram_to_csv(sources));
  } else {
    out.write_json("hashtags.json", trends::histogram_to_json(tags));
    out.write_json("sources.json", trends::histogram_to_json(sources));
  }
  log << "trends: " << freq.points.size() << " days, " << peaks.size() << " peaks, " << tags.bins.size()
      << " hashtags, " << sources.bins.size() << " sources\n";
  json all = daily;
  all["hashtags"] = trends::histogram_to_json(tags);
  all["sources"] = trends::histogram_to_json(sources);
  return all;
}

json do_sentiment(const RunConfig& cfg, const Corpus& c, const sentiment::NBModel& model, OutputDir& out,
                  std::ostream& log) {
  if (cfg.candidates.size() != 2) throw Error(Errc::InvalidArgument, "sentiment trend needs exactly two candidates");
  const auto st = trends::sentiment_trend(c.samples, model, cfg.candidates);
  // Daily leader by the same ratio rule as the state calls.
  trends::TrendSeries leader_series{"twitter_leader", {}};
  double pos = 0, neg = 0;
  const trends::TrendSeries& leader = leader_series;
  for (std::size_t i = 0; i < st.pos_a.points.size(); ++i) {
    geo::StateTally t;
    t.pos_a = static_cast<std::size_t>(st.pos_a.points[i].value);
    t.neg_a = static_cast<std::size_t>(st.neg_a.points[i].value);
    t.pos_b = static_cast<std::size_t>(st.pos_b.points[i].value);
    t.neg_b = static_cast<std::size_t>(st.neg_b.points[i].value);
    pos += static_cast<double>(t.pos_a + t.pos_b);
    neg += static_cast<double>(t.neg_a + t.neg_b);
    const auto w = geo::call_state(t).winner;
    leader_series.points.push_back({st.pos_a.points[i].day, w == geo::Winner::A ? 1.0 : (w == geo::Winner::B ? -1.0 : 0.0)});
  }
  json series = json::array();
  for (const auto* s : {&st.pos_a, &st.neg_a, &st.pos_b, &st.neg_b}) series.push_back(trends::series_to_json(*s));
  json j = {{"candidates", {cfg.candidates[0].name, cfg.candidates[1].name}},
            {"series", series},
            {"totals", {{"positive", pos}, {"negative", neg}}},
            {"negative_to_positive", pos > 0 ? json(neg / pos) : json(nullptr)},
            {"leader", trends::series_to_json(leader)}};
  if (!cfg.polls.empty()) {
    const auto polls = corpus::load_polls(cfg.polls);
    json methods = json::object(), pops = json::object();
    for (const auto& [m, share] : corpus::method_shares(polls)) methods[corpus::to_string(m)] = share;
    for (const auto& [p, share] : corpus::population_shares(polls)) pops[corpus::to_string(p)] = share;
    const auto agreement = trends::poll_leader_agreement(polls, leader);
    json rows = json::array();
    std::string body = "day,poll_leader,twitter_leader,agree\n";
    for (const auto& r : agreement.rows) {
      rows.push_back({{"day", format_date(r.day)}, {"poll", r.poll_leader}, {"twitter", r.twitter_leader}, {"agree", r.agree}});
      body += format_date(r.day) + "," + std::to_string(r.poll_leader) + "," + std::to_string(r.twitter_leader) + "," +
              (r.agree ? "1" : "0") + "\n";
    }
    j["polls"] = {{"count", polls.size()},
                  {"method_shares", methods},
                  {"population_shares", pops},
                  {"poll_days_a", agreement.poll_days_a},
                  {"poll_days_b", agreement.poll_days_b},
                  {"compared_days", agreement.compared_days},
                  {"tie_days", agreement.tie_days},
                  {"agreement", agreement.agreement ? json(*agreement.agreement) : json(nullptr)},
                  {"rows", rows}};
    if (csv(cfg)) out.write_csv("poll_agreement.csv", body);
    log << "polls: " << polls.size() << " polls, A ahead on " << agreement.poll_days_a << " days\n";
  }
  out.write_json("sentiment.json", j);
  if (csv(cfg)) {
    for (const auto* s : {&st.pos_a, &st.neg_a, &st.pos_b, &st.neg_b, &leader}) {
      out.write_csv("sentiment_" + safe_name(s->label) + ".csv", trends::series_to_csv(*s));
    }
  }
  log << "sentiment: " << pos << " positive, " << neg << " negative candidate records\n";
  return j;
}

json do_geo(const RunConfig& cfg, const Corpus& c, const sentiment::NBModel& model, OutputDir& out,
            std::ostream& log) {
  if (cfg.candidates.size() != 2) throw Error(Errc::InvalidArgument, "geo needs exactly two candidates");
  const auto states = cfg.states.empty() ? geo::default_states() : geo::load_states(cfg.states);
  const geo::StateLocator locator(states);
  std::vector<corpus::TweetRecord> records;
  records.reserve(c.in_window.size());
  for (const auto* r : c.in_window) {
    if (r->geo) records.push_back(*r);
  }
  const auto agg = geo::aggregate_state_sentiment(records, model, locator, cfg.candidates);
  const auto calls = geo::call_all_states(states, agg.tallies);
  json j = {{"candidates", {{"A", cfg.candidates[0].name}, {"B", cfg.candidates[1].name}}},
            {"geo_records", records.size()},
            {"calls", geo::calls_to_json(calls)}};

  std::map<std::string, geo::Winner> actual;
  if (!cfg.results.empty()) {
    actual = geo::load_results(cfg.results);
  } else if (cfg.states.empty()) {
    actual = geo::results_2012();
  }
  if (!actual.empty()) {
    std::map<std::string, geo::Winner> called;
    for (const auto& call : calls) called[call.code] = call.winner;
    const auto s = geo::score_predictions(called, actual, states);
    j["score"] = {{"total", s.total},         {"correct", s.correct},     {"overall", s.overall},
                  {"actual_a", s.actual_a},   {"correct_a", s.correct_a}, {"accuracy_a", s.accuracy_a},
                  {"actual_b", s.actual_b},   {"correct_b", s.correct_b}, {"accuracy_b", s.accuracy_b},
                  {"electoral_a", s.electoral_a}, {"electoral_b", s.electoral_b},
                  {"electoral_undecided", s.electoral_undecided}};
    log << "geo: " << s.correct << "/" << s.total << " states match\n";
  }
  out.write_json("geo_calls.json", j);
  if (csv(cfg)) out.write_csv("geo_calls.csv", geo::calls_to_csv(calls));
  log << "geo: " << records.size() << " geo-tagged records, " << calls.size() << " state calls\n";
  return j;
}

json do_topics(const RunConfig& cfg, std::uint64_t seed, const Corpus& c, const text::Preprocessor& prep,
               OutputDir& out, std::ostream& log) {
  std::vector<text::TokenList> docs;
  for (const auto& s : c.samples) {
    for (const auto* r : s.records) docs.push_back(prep.preprocess(r->text));
  }
  lda::LdaConfig lc;
  lc.topics = cfg.k;
  lc.alpha = cfg.alpha;
  lc.beta = cfg.beta;
  lc.iterations = cfg.iters;
  lc.seed = derive_seed(seed, kLdaStream);
  lc.top_n = cfg.top_words;
  lc.min_count = cfg.min_count;
  const auto result = lda::run(docs, lc);
  json j = lda::report_to_json(result, lc);
  out.write_json("topics.json", j);
  if (csv(cfg)) {
    std::string body = "topic,rank,token,probability\n";
    for (std::size_t k = 0; k < result.report.size(); ++k) {
      for (std::size_t i = 0; i < result.report[k].size(); ++i) {
        body += std::to_string(k) + "," + std::to_string(i + 1) + "," + result.report[k][i].token + "," +
                format_double(result.report[k][i].probability) + "\n";
      }
    }
    out.write_csv("topics.csv", body);
  }
  log << "topics: K=" << lc.topics << ", " << lc.iterations << " sweeps over " << result.state.docs.size()
      << " documents\n";
  return j;
}

void cmd_synth(const RunConfig& cfg, std::uint64_t seed, std::ostream& log) {
  auto spec = synth::election_2012(seed, cfg.geo_per_state);
  spec.base_daily_volume = cfg.base_volume;
  spec.candidates = cfg.candidates;
  const auto scenario = synth::generate(spec);
  const auto labeled = synth::generate_labeled(spec, cfg.labeled_rows);
  OutputDir out(cfg.out, {kVersion, seed, cfg.hash()}, cfg.effective_run_id(),
                window_json(spec.first_day, spec.last_day, spec.offset_minutes));
  const bool jsonl = cfg.format == TableFormat::Json;
  std::string tweets;
  const auto fmt = jsonl ? corpus::RecordFormat::KeyValueJsonLine : corpus::RecordFormat::DelimitedColumns;
  for (const auto& r : scenario.tweets) tweets += corpus::serialize_tweet_record(r, fmt) + "\n";
  out.write_raw(jsonl ? "tweets.jsonl" : "tweets.tsv", tweets);
  std::string polls = std::string(corpus::kPollHeader) + "\n";
  for (const auto& p : scenario.polls) polls += corpus::serialize_poll_record(p) + "\n";
  out.write_raw("polls.csv", polls);
  out.write_raw("labeled.tsv", synth::labeled_to_tsv(labeled));
  out.write_json("truth.json", scenario.truth);
  out.finish();
  log << "synth: " << scenario.tweets.size() << " records, " << scenario.polls.size() << " polls, "
      << labeled.size() << " labeled rows -> " << cfg.out << "\n";
}

struct Session {
  const RunConfig& cfg;
  std::ostream& log;
  std::uint64_t seed;
  std::string hash;
  text::Preprocessor prep;

  Session(const RunConfig& c, std::ostream& l)
      : cfg(c), log(l), seed(c.effective_seed()), hash(c.hash()), prep(make_preprocessor(c)) {}

  sentiment::LabeledSet labeled() const { return sentiment::load_labeled(cfg.labeled, prep, cfg.candidates); }

  OutputDir output(Date first, Date last) const {
    return OutputDir(cfg.out, {kVersion, seed, hash}, cfg.effective_run_id(), window_json(first, last, cfg.offset_minutes));
  }
};

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"synth",  "train", "eval",   "trends",
                                                 "sentiment-trend", "geo", "topics", "report"};
  return names;
}

void run_command(const std::string& command, const RunConfig& cfg, std::ostream& log) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw Error(Errc::InvalidArgument, "unknown command '" + command + "'");
  }
  for (const auto* p : {&cfg.in, &cfg.polls, &cfg.states, &cfg.labeled, &cfg.results, &cfg.stopwords, &cfg.negations}) {
    if (!p->empty() && !std::filesystem::is_regular_file(*p)) throw Error(Errc::Io, "no such file: " + *p);
  }
  if (command == "synth") return cmd_synth(cfg, cfg.effective_seed(), log);

  Session s(cfg, log);
  log << command << ": seed " << s.seed << ", config " << s.hash.substr(0, 12) << "\n";

  if (command == "train" || command == "eval") {
    require(cfg.labeled, "labeled", command);
    const auto set = s.labeled();
    // No corpus here, so the manifest window is the epoch day.
    auto out = s.output(Date{}, Date{});
    if (command == "train") {
      do_train(cfg, set, train_model(set.examples, s.prep), out, log);
    } else {
      do_eval(cfg, s.seed, set, s.prep, out, log);
    }
    out.finish();
    return;
  }

  require(cfg.in, "in", command);
  const bool needs_model = command == "sentiment-trend" || command == "geo" || command == "report";
  if (needs_model) require(cfg.labeled, "labeled", command);
  const Corpus c = load_corpus(cfg, s.seed, log);
  auto out = s.output(c.first, c.last);

  std::optional<sentiment::LabeledSet> set;
  std::optional<sentiment::NBModel> model;
  if (needs_model) {
    set = s.labeled();
    model = train_model(set->examples, s.prep);
  }

  if (command == "trends") {
    do_trends(cfg, c, out, log);
  } else if (command == "sentiment-trend") {
    do_sentiment(cfg, c, *model, out, log);
  } else if (command == "geo") {
    do_geo(cfg, c, *model, out, log);
  } else if (command == "topics") {
    do_topics(cfg, s.seed, c, s.prep, out, log);
  } else {
    json report;
    report["records"] = c.records.size();
    report["train"] = do_train(cfg, *set, *model, out, log);
    report["eval"] = do_eval(cfg, s.seed, *set, s.prep, out, log);
    report["trends"] = do_trends(cfg, c, out, log);
    report["sentiment"] = do_sentiment(cfg, c, *model, out, log);
    report["geo"] = do_geo(cfg, c, *model, out, log);
    report["topics"] = do_topics(cfg, s.seed, c, s.prep, out, log);
    report["config"] = cfg.canonical();
    out.write_json("report.json", report);
  }
  out.finish();
}

int exit_code(Errc code) { return code == Errc::Io ? 2 : 1; }

}  // namespace trendmine::pipeline
