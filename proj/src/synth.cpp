#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

#include "error.hpp"
#include "rng.hpp"
#include "strutil.hpp"

namespace trendmine::synth {

namespace {

using sentiment::Polarity;

enum Stream : std::uint64_t { kTweets = 1, kGeo = 2, kPolls = 3, kLabeled = 4, kPlanting = 5, kTopics = 6 };

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::InvalidSpec, why); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct SourceWeight {
  const char* name;
  double percent;
};

// Election-day client mix; the remainder goes to "Other".
constexpr SourceWeight kSources[] = {
    {"Twitter for iPhone", 32.0}, {"web", 22.0},      {"Twitter for Android", 20.0},
    {"Echofon", 2.7},             {"Mobile Web", 2.5}, {"Twitter for iPad", 2.3},
    {"TweetDeck", 2.3},           {"TweetCaster for Android", 1.8},
    {"twitterfeed", 1.4},         {"Tweet Button", 1.1}};

std::string pick_source(Rng& rng) {
  double u = rng.uniform01() * 100.0;
  for (const auto& s : kSources) {
    if (u < s.percent) return s.name;
    u -= s.percent;
  }
  return "Other";
}

// Builds template tweets from the lexicons, exercising every cleaning rule.
class TextMaker {
 public:
  TextMaker(const ScenarioSpec& spec, Rng& rng) : spec_(spec), rng_(rng) {}

  std::string alias(std::size_t candidate) {
    const std::string& a = pick(rng_, spec_.candidates[candidate].aliases);
    switch (rng_.below(4)) {
      case 0: return "#" + capitalize(a);
      case 1: return a;
      default: return capitalize(a);
    }
  }

  std::string about(std::size_t candidate, Polarity label, bool debate_day) {
    const Lexicons& lx = spec_.lexicons;
    std::vector<std::string> words;
    std::string lead;
    if (label == Polarity::Negative && rng_.bernoulli(0.25)) {
      // "don't love Obama, ..." marks the positive word as negated.
      lead = "don't " + pick(rng_, lx.positive) + " " + alias(candidate) + ",";
      words.push_back(pick(rng_, lx.negative));
    } else {
      words.push_back(alias(candidate));
      const auto& lexicon =
          label == Polarity::Positive ? lx.positive : (label == Polarity::Negative ? lx.negative : lx.neutral);
      const std::size_t n = 2 + rng_.below(2);
      for (std::size_t i = 0; i < n; ++i) words.push_back(pick(rng_, lexicon));
    }
    const std::size_t fillers = 1 + rng_.below(2);
    for (std::size_t i = 0; i < fillers; ++i) words.push_back(pick(rng_, lx.filler));
    shuffle(rng_, words);
    return decorate(lead.empty() ? join(words) : lead + " " + join(words), debate_day);
  }

  std::string both(bool debate_day) {
    std::vector<std::string> words{alias(0), "vs", alias(1)};
    words.push_back(pick(rng_, spec_.lexicons.neutral));
    words.push_back(pick(rng_, spec_.lexicons.filler));
    return decorate(join(words), debate_day);
  }

  std::string chatter(bool debate_day) {
    std::vector<std::string> words;
    const std::size_t n = 3 + rng_.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      words.push_back(pick(rng_, rng_.bernoulli(0.5) ? spec_.lexicons.filler : spec_.lexicons.neutral));
    }
    return decorate(join(words), debate_day);
  }

 private:
  static std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }

  std::string decorate(std::string body, bool debate_day) {
    std::string text = capitalize(std::move(body));
    switch (rng_.below(4)) {
      case 0: text += "!"; break;
      case 1: text += "."; break;
      case 2: text += "!!!"; break;
      default: break;
    }
    if (rng_.bernoulli(0.1)) text += " " + std::to_string(2000 + rng_.below(20));
    if (debate_day && rng_.bernoulli(spec_.debate_hashtag_rate)) {
      text += " #debate";
    } else if (rng_.bernoulli(0.4)) {
      text += " " + pick(rng_, spec_.lexicons.hashtags);
    }
    if (rng_.bernoulli(0.3)) text += " http://t.co/" + std::to_string(100000 + rng_.below(900000));
    if (rng_.bernoulli(0.2)) text = "RT @user" + std::to_string(rng_.below(10000)) + ": " + text;
    return text;
  }

  const ScenarioSpec& spec_;
  Rng& rng_;
};

std::vector<Date> date_list(std::initializer_list<std::array<unsigned, 2>> md) {
  std::vector<Date> out;
  for (auto [m, d] : md) out.push_back(make_date(2012, m, d));
  return out;
}

bool contains(const std::vector<Date>& days, Date d) { return std::find(days.begin(), days.end(), d) != days.end(); }

}  // namespace

geo::Winner StateMix::planted_winner() const {
  // pos_a / pos_b vs neg_a / neg_b, cross-multiplied.
  const double lhs = pos_a * neg_b;
  const double rhs = neg_a * pos_b;
  return lhs > rhs ? geo::Winner::A : (lhs < rhs ? geo::Winner::B : geo::Winner::Undecided);
}

Lexicons default_lexicons() {
  Lexicons lx;
  lx.positive = {"love",    "great",   "win",     "best",    "proud",   "strong",  "hope",
                 "support", "awesome", "winning", "leader",  "honest",  "inspiring", "brilliant",
                 "excellent", "trust", "forward", "victory", "happy",   "amazing"};
  lx.negative = {"liar",  "fail",     "worst",  "hate",    "disaster", "weak",   "lies",
                 "awful", "terrible", "lose",   "failed",  "fraud",    "corrupt", "clueless",
                 "pathetic", "scary", "shame",  "joke",    "loser",    "wrong"};
  lx.neutral = {"debate",  "watching", "tonight", "news",    "live",     "speech", "coverage",
                "talking", "poll",     "rally",   "schedule", "interview", "channel", "stream",
                "update",  "report"};
  lx.filler = {"people", "today",  "election", "campaign", "america", "country", "voters",
               "state",  "ohio",   "economy",  "jobs",     "tax",     "plan",    "policy",
               "president", "vote", "week",    "morning"};
  lx.hashtags = {"#election2012", "#vote", "#tcot", "#p2", "#gop", "#politics", "#decision2012"};
  return lx;
}

void ScenarioSpec::validate() const {
  if (last_day < first_day) invalid("empty day range");
  if (candidates.size() != 2) invalid("scenario needs exactly two candidates");
  try {
    text::validate_candidates(candidates);
  } catch (const Error& e) {
    invalid(e.what());
  }
  if (mention_a < 0 || mention_b < 0 || mention_both < 0 || mention_a + mention_b + mention_both > 1.0) {
    invalid("mention rates must be non-negative and sum to <= 1");
  }
  if (positive_rate < 0 || negative_rate < 0 || positive_rate + negative_rate > 1.0) {
    invalid("polarity rates must be non-negative and sum to <= 1");
  }
  if (volume_noise < 0 || volume_noise >= 1) invalid("volume noise must be in [0,1)");
  for (const auto& s : spikes) {
    if (s.day < first_day || s.day > last_day) invalid("spike day outside the day range");
    if (s.multiplier <= 0) invalid("spike multiplier must be positive");
  }
  const Lexicons& lx = lexicons;
  if (lx.positive.empty() || lx.negative.empty() || lx.neutral.empty() || lx.filler.empty() || lx.hashtags.empty()) {
    invalid("every lexicon needs at least one entry");
  }
  for (const auto* list : {&lx.positive, &lx.negative, &lx.neutral, &lx.filler, &lx.hashtags}) {
    for (const auto& w : *list) {
      if (!text::detect_mentions(w, candidates).empty()) invalid("lexicon entry '" + w + "' contains an alias");
    }
  }
  std::set<std::string> codes;
  for (const auto& s : states) codes.insert(s.code);
  for (const auto& m : state_mixes) {
    if (!codes.contains(m.code)) invalid("state mix for unknown state " + m.code);
    if (m.pos_a < 0 || m.neg_a < 0 || m.pos_b < 0 || m.neg_b < 0 || m.pos_a + m.neg_a + m.pos_b + m.neg_b > 1.0 + 1e-12) {
      invalid("state " + m.code + " proportions must be non-negative and sum to <= 1");
    }
  }
  if (poll_count > 0) {
    if (poll_last < poll_first) invalid("empty poll range");
    const auto span_days = static_cast<std::size_t>((poll_last - poll_first).count() + 1);
    if (poll_count < span_days) invalid("poll count must cover every poll day");
    for (const auto& d : poll_a_lead_days) {
      if (d < poll_first || d > poll_last) invalid("poll lead day outside the poll range");
    }
  }
}

StateMix plant_state(const std::string& code, geo::Winner winner, std::size_t records, double separation,
                     Rng& rng) {
  // Favoured pair: pos high for the winner, neg high for the loser.
  const double hi_pos = rng.uniform(0.2, 0.3);
  const double hi_neg = rng.uniform(0.2, 0.3);
  const double lo_pos = hi_pos - rng.uniform(separation, separation + 0.05);
  const double lo_neg = hi_neg - rng.uniform(separation, separation + 0.05);
  StateMix m{code, records, 0, 0, 0, 0};
  if (winner == geo::Winner::B) {
    m.pos_b = hi_pos;
    m.pos_a = lo_pos;
    m.neg_a = hi_neg;
    m.neg_b = lo_neg;
  } else {
    m.pos_a = hi_pos;
    m.pos_b = lo_pos;
    m.neg_b = hi_neg;
    m.neg_a = lo_neg;
  }
  return m;
}

ScenarioSpec election_2012(std::uint64_t seed, std::size_t geo_records_per_state) {
  ScenarioSpec s;
  s.seed = seed;
  s.first_day = make_date(2012, 9, 29);
  s.last_day = make_date(2012, 11, 16);
  s.spikes = {{make_date(2012, 10, 3), 3.0},
              {make_date(2012, 10, 11), 3.0},
              {make_date(2012, 10, 16), 3.0},
              {make_date(2012, 10, 22), 3.0},
              {make_date(2012, 11, 6), 5.0}};
  // B briefly ahead in mentions the day after each presidential debate.
  s.b_lead_days = date_list({{10, 4}, {10, 17}, {10, 23}});
  s.states = geo::default_states();
  s.candidates = text::default_candidates();
  s.lexicons = default_lexicons();
  Rng rng(derive_seed(seed, kPlanting));
  for (const auto& [code, winner] : geo::results_2012()) {
    s.state_mixes.push_back(plant_state(code, winner, geo_records_per_state, 0.1, rng));
  }
  s.poll_first = make_date(2012, 10, 1);
  s.poll_last = make_date(2012, 11, 5);
  s.poll_count = 103;
  // Early October and the final stretch, plus nine days in between.
  s.poll_a_lead_days = date_list({{10, 1}, {10, 2}, {10, 3}, {10, 4}, {10, 5}, {10, 9}, {10, 12}, {10, 14},
                                  {10, 18}, {10, 20}, {10, 24}, {10, 26}, {10, 28}, {10, 31}, {11, 3},
                                  {11, 4}, {11, 5}});
  return s;
}

Scenario generate(const ScenarioSpec& spec) {
  spec.validate();
  Scenario out;
  struct Draft {
    std::int64_t ts;
    corpus::TweetRecord record;
  };
  std::vector<Draft> drafts;
  std::map<Date, std::size_t> planted_volume;
  std::size_t planted_labels[2][3] = {};

  Rng rng(derive_seed(spec.seed, kTweets));
  TextMaker maker(spec, rng);
  auto author = [&](Rng& r) { return "user" + std::to_string(r.below(50000)); };

  for (Date day = spec.first_day; day <= spec.last_day; day += std::chrono::days{1}) {
    double volume = static_cast<double>(spec.base_daily_volume) * (1.0 + spec.volume_noise * rng.uniform(-1.0, 1.0));
    bool spike = false;
    for (const auto& sp : spec.spikes) {
      if (sp.day == day) {
        volume *= sp.multiplier;
        spike = true;
      }
    }
    const auto n = static_cast<std::size_t>(std::llround(volume));
    planted_volume[day] = n;
    const bool b_leads = contains(spec.b_lead_days, day);
    const double pa = b_leads ? spec.mention_b : spec.mention_a;
    const double pb = b_leads ? spec.mention_a : spec.mention_b;
    const std::int64_t midnight = local_midnight(day, spec.offset_minutes);
    for (std::size_t i = 0; i < n; ++i) {
      corpus::TweetRecord r;
      r.source = pick_source(rng);
      r.author = author(rng);
      const double u = rng.uniform01();
      if (u < pa + pb) {
        const std::size_t cand = u < pa ? 0 : 1;
        const double v = rng.uniform01();
        const Polarity label = v < spec.positive_rate ? Polarity::Positive
                               : v < spec.positive_rate + spec.negative_rate ? Polarity::Negative
                                                                             : Polarity::Neutral;
        ++planted_labels[cand][sentiment::label_index(label)];
        r.text = maker.about(cand, label, spike);
      } else if (u < pa + pb + spec.mention_both) {
        r.text = maker.both(spike);
      } else {
        r.text = maker.chatter(spike);
      }
      const std::int64_t ts = midnight + static_cast<std::int64_t>(rng.below(kSecondsPerDay));
      r.timestamp = ts;
      drafts.push_back({ts, std::move(r)});
    }
  }

  // Geo-tagged block: exact planted counts per state, scattered in a disc
  // around the anchor small enough that the anchor is the nearest one.
  Rng grng(derive_seed(spec.seed, kGeo));
  TextMaker gmaker(spec, grng);
  const std::int64_t window_start = local_midnight(spec.first_day, spec.offset_minutes);
  const std::int64_t window_len = ((spec.last_day - spec.first_day).count() + 1) * kSecondsPerDay;
  nlohmann::json state_truth = nlohmann::json::array();
  std::map<std::string, const geo::StatePoint*> anchors;
  for (const auto& s : spec.states) anchors[s.code] = &s;
  for (const auto& mix : spec.state_mixes) {
    const geo::StatePoint& anchor = *anchors.at(mix.code);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& other : spec.states) {
      if (other.code != anchor.code) nearest = std::min(nearest, std::hypot(other.lat - anchor.lat, other.lon - anchor.lon));
    }
    const double radius = std::isfinite(nearest) ? 0.45 * nearest : 1.0;
    const auto count = [&](double p) { return static_cast<std::size_t>(std::llround(p * static_cast<double>(mix.records))); };
    const std::size_t n_pa = count(mix.pos_a), n_na = count(mix.neg_a), n_pb = count(mix.pos_b), n_nb = count(mix.neg_b);
    std::vector<int> kinds;
    kinds.insert(kinds.end(), n_pa, 0);
    kinds.insert(kinds.end(), n_na, 1);
    kinds.insert(kinds.end(), n_pb, 2);
    kinds.insert(kinds.end(), n_nb, 3);
    if (kinds.size() < mix.records) kinds.insert(kinds.end(), mix.records - kinds.size(), 4);
    kinds.resize(mix.records);
    shuffle(grng, kinds);
    for (int kind : kinds) {
      corpus::TweetRecord r;
      r.source = pick_source(grng);
      r.author = author(grng);
      switch (kind) {
        case 0: r.text = gmaker.about(0, Polarity::Positive, false); break;
        case 1: r.text = gmaker.about(0, Polarity::Negative, false); break;
        case 2: r.text = gmaker.about(1, Polarity::Positive, false); break;
        case 3: r.text = gmaker.about(1, Polarity::Negative, false); break;
        default:
          r.text = grng.bernoulli(0.5) ? gmaker.about(grng.below(2), Polarity::Neutral, false) : gmaker.chatter(false);
      }
      const double angle = grng.uniform(0.0, 2.0 * 3.14159265358979323846);
      const double dist = radius * std::sqrt(grng.uniform01());
      const double lat = std::clamp(anchor.lat + dist * std::sin(angle), -90.0, 90.0);
      const double lon = std::clamp(anchor.lon + dist * std::cos(angle), -180.0, 180.0);
      // Round to 1e-6 degrees, as a device would report.
      r.geo = corpus::GeoPoint{std::round(lat * 1e6) / 1e6, std::round(lon * 1e6) / 1e6};
      const std::int64_t ts = window_start + static_cast<std::int64_t>(grng.below(static_cast<std::uint64_t>(window_len)));
      r.timestamp = ts;
      drafts.push_back({ts, std::move(r)});
    }
    state_truth.push_back({{"code", mix.code},
                           {"records", mix.records},
                           {"pos_a", n_pa},
                           {"neg_a", n_na},
                           {"pos_b", n_pb},
                           {"neg_b", n_nb},
                           {"winner", geo::to_string(mix.planted_winner())}});
  }

  std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) { return a.ts < b.ts; });
  out.tweets.reserve(drafts.size());
  std::map<Date, std::size_t> actual_volume;
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& r = drafts[i].record;
    char id[24];
    std::snprintf(id, sizeof id, "t%08zu", i + 1);
    r.id = id;
    ++actual_volume[day_of(r.timestamp, spec.offset_minutes)];
    out.tweets.push_back(std::move(r));
  }

  // Polls: every day in range gets one poll, the rest are spread at random;
  // all polls of a day share the planted leader's sign.
  Rng prng(derive_seed(spec.seed, kPolls));
  std::vector<Date> poll_days;
  if (spec.poll_count > 0) {
    for (Date d = spec.poll_first; d <= spec.poll_last; d += std::chrono::days{1}) poll_days.push_back(d);
    std::vector<Date> assigned = poll_days;
    while (assigned.size() < spec.poll_count) assigned.push_back(pick(prng, poll_days));
    std::sort(assigned.begin(), assigned.end());
    const std::size_t n = spec.poll_count;
    const auto n_auto = static_cast<std::size_t>(std::llround(0.534 * static_cast<double>(n)));
    const auto n_phone = static_cast<std::size_t>(std::llround(0.243 * static_cast<double>(n)));
    const auto n_web = static_cast<std::size_t>(std::llround(0.184 * static_cast<double>(n)));
    std::vector<corpus::PollMethod> methods;
    methods.insert(methods.end(), n_auto, corpus::PollMethod::AutomatedPhone);
    methods.insert(methods.end(), n_phone, corpus::PollMethod::Phone);
    methods.insert(methods.end(), n_web, corpus::PollMethod::Internet);
    if (methods.size() < n) methods.insert(methods.end(), n - methods.size(), corpus::PollMethod::Mixed);
    methods.resize(n);
    shuffle(prng, methods);
    const auto n_lv = static_cast<std::size_t>(std::llround(0.98 * static_cast<double>(n)));
    std::vector<corpus::Population> pops(n, corpus::Population::RegisteredVoters);
    std::fill(pops.begin(), pops.begin() + static_cast<std::ptrdiff_t>(n_lv), corpus::Population::LikelyVoters);
    shuffle(prng, pops);
    static const std::vector<std::string> pollsters = {
        "Rasmussen", "Gallup", "Ipsos/Reuters", "YouGov/Economist", "PPP (D)", "ABC/Post",
        "IBD/TIPP", "UPI/CVOTER", "Purple Strategies", "CNN"};
    for (std::size_t i = 0; i < n; ++i) {
      corpus::PollRecord p;
      p.pollster = pick(prng, pollsters);
      p.end_date = assigned[i];
      p.method = methods[i];
      p.population = pops[i];
      const double sign = contains(spec.poll_a_lead_days, assigned[i]) ? 1.0 : -1.0;
      p.favor_b = std::round(prng.uniform(44.0, 48.0) * 10.0) / 10.0;
      const double margin = std::round(prng.uniform(0.5, 4.0) * 10.0) / 10.0;
      p.favor_a = p.favor_b + sign * margin;
      out.polls.push_back(p);
    }
  }

  nlohmann::json& t = out.truth;
  t["seed"] = spec.seed;
  t["rng"] = Rng::kAlgorithmId;
  t["window"] = {{"first_day", format_date(spec.first_day)},
                 {"last_day", format_date(spec.last_day)},
                 {"offset_minutes", spec.offset_minutes}};
  t["records"] = out.tweets.size();
  nlohmann::json volume = nlohmann::json::object();
  for (const auto& [d, c] : actual_volume) volume[format_date(d)] = c;
  t["daily_volume"] = std::move(volume);
  nlohmann::json spikes = nlohmann::json::array();
  for (const auto& sp : spec.spikes) spikes.push_back(format_date(sp.day));
  t["spike_days"] = std::move(spikes);
  nlohmann::json blead = nlohmann::json::array();
  for (const auto& d : spec.b_lead_days) blead.push_back(format_date(d));
  t["mention_b_lead_days"] = std::move(blead);
  t["mention_rates"] = {{"a", spec.mention_a}, {"b", spec.mention_b}, {"both", spec.mention_both}};
  t["polarity_rates"] = {{"positive", spec.positive_rate}, {"negative", spec.negative_rate}};
  nlohmann::json labels = nlohmann::json::object();
  for (std::size_t c = 0; c < 2; ++c) {
    labels[spec.candidates[c].name] = {{"neutral", planted_labels[c][0]},
                                       {"negative", planted_labels[c][1]},
                                       {"positive", planted_labels[c][2]}};
  }
  t["planted_labels"] = std::move(labels);
  t["states"] = std::move(state_truth);
  nlohmann::json lead = nlohmann::json::array();
  std::size_t a_days = 0;
  for (const auto& d : poll_days) {
    if (contains(spec.poll_a_lead_days, d)) {
      lead.push_back(format_date(d));
      ++a_days;
    }
  }
  t["polls"] = {{"count", out.polls.size()},
                {"days", poll_days.size()},
                {"a_lead_days", std::move(lead)},
                {"a_lead_day_count", a_days}};
  t["candidates"] = {spec.candidates[0].name, spec.candidates[1].name};
  return out;
}

void write_scenario(const Scenario& scenario, const std::string& dir, corpus::RecordFormat format) {
  std::filesystem::create_directories(dir);
  const std::string tweets = dir + (format == corpus::RecordFormat::KeyValueJsonLine ? "/tweets.jsonl" : "/tweets.tsv");
  corpus::write_tweets(tweets, scenario.tweets, format);
  std::string polls = std::string(corpus::kPollHeader) + "\n";
  for (const auto& p : scenario.polls) polls += corpus::serialize_poll_record(p) + "\n";
  write_file(dir + "/polls.csv", polls);
  write_file(dir + "/truth.json", scenario.truth.dump(2) + "\n");
}

std::vector<LabeledRow> generate_labeled(const ScenarioSpec& spec, std::size_t n) {
  if (n < 3) invalid("labeled set needs at least 3 rows");
  spec.validate();
  Rng rng(derive_seed(spec.seed, kLabeled));
  TextMaker maker(spec, rng);
  std::vector<LabeledRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Polarity label = sentiment::kLabels[i % 3];
    const std::size_t cand = (i / 3) % 2;
    rows.push_back({maker.about(cand, label, rng.bernoulli(0.1)), spec.candidates[cand].name, label});
  }
  return rows;
}

std::string labeled_to_tsv(const std::vector<LabeledRow>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.text + "\t" + r.target + "\t" + sentiment::to_string(r.label) + "\n";
  return out;
}

TopicCorpus generate_topic_corpus(const TopicCorpusSpec& spec) {
  if (spec.topics < 1 || spec.words_per_topic < 1 || spec.documents == 0 || spec.min_length == 0 ||
      spec.max_length < spec.min_length || spec.shared_mass < 0 || spec.shared_mass >= 1 ||
      spec.dominant_weight < 0 || spec.dominant_weight > 1) {
    invalid("bad topic corpus spec");
  }
  Rng rng(derive_seed(spec.seed, kTopics));
  TopicCorpus c;
  const auto K = static_cast<std::size_t>(spec.topics);
  const auto own = static_cast<std::size_t>(spec.words_per_topic);
  const auto shared = static_cast<std::size_t>(std::max(spec.shared_words, 0));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < own; ++i) c.vocab.push_back("topic" + std::to_string(k) + "word" + std::to_string(i));
  }
  for (std::size_t i = 0; i < shared; ++i) c.vocab.push_back("shared" + std::to_string(i));
  c.phi.assign(K, std::vector<double>(c.vocab.size(), 0.0));
  const double own_mass = shared == 0 ? 1.0 : 1.0 - spec.shared_mass;
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<double> w(own);
    for (auto& x : w) x = rng.uniform(0.5, 1.5);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < own; ++i) c.phi[k][k * own + i] = own_mass * w[i] / sum;
    for (std::size_t i = 0; i < shared; ++i) c.phi[k][K * own + i] = spec.shared_mass / static_cast<double>(shared);
  }
  auto draw_word = [&](std::size_t k) {
    double u = rng.uniform01();
    for (std::size_t w = 0; w < c.vocab.size(); ++w) {
      u -= c.phi[k][w];
      if (u < 0) return w;
    }
    return c.vocab.size() - 1;
  };
  for (std::size_t d = 0; d < spec.documents; ++d) {
    const auto main = static_cast<std::size_t>(rng.below(K));
    const std::size_t len = spec.min_length + static_cast<std::size_t>(rng.below(spec.max_length - spec.min_length + 1));
    text::TokenList doc;
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t k = rng.bernoulli(spec.dominant_weight) ? main : static_cast<std::size_t>(rng.below(K));
      doc.push_back(c.vocab[draw_word(k)]);
    }
    c.docs.push_back(std::move(doc));
    c.dominant.push_back(static_cast<int>(main));
  }
  return c;
}

}  // namespace trendmine::synth
