#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "geo.hpp"
#include "rng.hpp"
#include "sentiment.hpp"
#include "textprep.hpp"

namespace trendmine::synth {

struct SpikeDay {
  Date day;
  double multiplier = 3.0;
};

// Planted per-state shares of (A positive, A negative, B positive, B
// negative) among the state's geo records; the remainder is neutral or
// candidate-free chatter.
struct StateMix {
  std::string code;
  std::size_t records = 0;
  double pos_a = 0.0;
  double neg_a = 0.0;
  double pos_b = 0.0;
  double neg_b = 0.0;

  geo::Winner planted_winner() const;
};

struct Lexicons {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<std::string> neutral;
  std::vector<std::string> filler;
  std::vector<std::string> hashtags;
};

Lexicons default_lexicons();

struct ScenarioSpec {
  Date first_day;
  Date last_day;
  int offset_minutes = -480;

  // Daily volume: base * (1 + noise * U[-1,1]), times the multiplier on spike days.
  std::size_t base_daily_volume = 1000;
  double volume_noise = 0.1;
  std::vector<SpikeDay> spikes;

  // Per-record mention mix; on `b_lead_days` the A and B rates swap.
  double mention_a = 0.45;
  double mention_b = 0.30;
  double mention_both = 0.05;
  std::vector<Date> b_lead_days;

  // Polarity mix of single-candidate records (rest neutral).
  double positive_rate = 0.09;
  double negative_rate = 0.72;

  // Share of records on spike days that carry #debate.
  double debate_hashtag_rate = 0.5;

  std::vector<geo::StatePoint> states;
  std::vector<StateMix> state_mixes;

  Date poll_first;
  Date poll_last;
  std::size_t poll_count = 103;
  std::vector<Date> poll_a_lead_days;

  std::vector<text::CandidateSpec> candidates;
  Lexicons lexicons;
  std::uint64_t seed = 1;

  // Throws InvalidSpec.
  void validate() const;
};

// Sep 29 - Nov 16 2012 with spikes on the debate and election days, 51
// states whose planted winners follow the 2012 result, and 103 polls over
// Oct 1 - Nov 5 with A ahead on 17 days.
ScenarioSpec election_2012(std::uint64_t seed, std::size_t geo_records_per_state = 400);

// Draws (pos_a, neg_a, pos_b, neg_b) for a state so the planted winner
// is `winner` and each A/B pair differs by at least `separation`.
StateMix plant_state(const std::string& code, geo::Winner winner, std::size_t records, double separation,
                     Rng& rng);

struct Scenario {
  std::vector<corpus::TweetRecord> tweets;
  std::vector<corpus::PollRecord> polls;
  nlohmann::json truth;
};

Scenario generate(const ScenarioSpec& spec);

// Writes tweets.tsv (or tweets.jsonl), polls.csv and truth.json into `dir`.
void write_scenario(const Scenario& scenario, const std::string& dir, corpus::RecordFormat format);

struct LabeledRow {
  std::string text;
  std::string target;
  sentiment::Polarity label = sentiment::Polarity::Neutral;
};

// n rows cycling Neutral, Negative, Positive (balanced within one) and
// alternating the target candidate. Throws InvalidSpec when n < 3.
std::vector<LabeledRow> generate_labeled(const ScenarioSpec& spec, std::size_t n);
std::string labeled_to_tsv(const std::vector<LabeledRow>& rows);

struct TopicCorpusSpec {
  int topics = 3;
  int words_per_topic = 20;
  int shared_words = 10;
  double shared_mass = 0.1;       // per-topic probability of the shared block
  std::size_t documents = 2000;
  std::size_t min_length = 8;
  std::size_t max_length = 14;
  double dominant_weight = 0.8;   // chance a token comes from the doc's main topic
  std::uint64_t seed = 7;
};

struct TopicCorpus {
  std::vector<text::TokenList> docs;
  std::vector<std::string> vocab;
  std::vector<std::vector<double>> phi;  // topics x vocab
  std::vector<int> dominant;             // per document
};

TopicCorpus generate_topic_corpus(const TopicCorpusSpec& spec);

}  // namespace trendmine::synth
