#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "rng.hpp"
#include "textprep.hpp"

namespace trendmine::lda {

struct LdaConfig {
  int topics = 5;
  std::optional<double> alpha;  // defaults to 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 0;
  int top_n = 15;
  int min_count = 1;              // tokens rarer than this are dropped
  bool check_invariants = false;  // verify count identities after every sweep

  double effective_alpha() const { return alpha.value_or(50.0 / topics); }
  // Throws InvalidArgument.
  void validate() const;
  nlohmann::json to_json() const;
};

// Collapsed Gibbs sampler state. Counts are kept in sync with `z`.
struct LdaState {
  int topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<std::string> vocab;
  std::unordered_map<std::string, int> word_ids;
  std::vector<std::vector<int>> docs;  // word ids
  std::vector<std::vector<int>> z;     // topic per token
  std::vector<int> n_dk;               // docs x topics
  std::vector<int> n_wk;               // words x topics
  std::vector<int> n_k;                // topics
  std::size_t dropped_docs = 0;
  std::size_t total_tokens = 0;
  Rng rng{0};

  std::size_t vocab_size() const { return vocab.size(); }
  int doc_topic(std::size_t d, int k) const { return n_dk[d * static_cast<std::size_t>(topics) + static_cast<std::size_t>(k)]; }
  int topic_word(int k, std::size_t w) const { return n_wk[w * static_cast<std::size_t>(topics) + static_cast<std::size_t>(k)]; }

  // (n_kw + beta) / (n_k + |V| beta)
  double phi(int k, std::size_t w) const;
  // (n_dk + alpha) / (len(d) + K alpha)
  double theta(std::size_t d, int k) const;

  bool invariants_hold() const;

  // Recomputes every count from `z`.
  void rebuild_counts();
};

// Drops documents left empty after the min_count filter and assigns every
// token a uniformly random topic from the seeded generator. Throws
// EmptyCorpus when no document survives.
LdaState init_state(std::span<const text::TokenList> docs, const LdaConfig& config);

// Normalized full conditional for token i of document d, excluding its
// current assignment from the counts.
std::vector<double> token_conditional(const LdaState& state, std::size_t d, std::size_t i);

// One pass over all tokens in corpus order.
void gibbs_sweep(LdaState& state);

struct TopicWord {
  std::string token;
  double probability = 0.0;
  bool operator==(const TopicWord&) const = default;
};

using TopicReport = std::vector<std::vector<TopicWord>>;

// The n most probable words of topic k; equal probabilities in
// lexicographic order. Throws TopicIndexOutOfRange.
std::vector<TopicWord> top_words(const LdaState& state, int k, int n);

struct LdaRun {
  LdaState state;
  TopicReport report;
};

LdaRun run(std::span<const text::TokenList> docs, const LdaConfig& config);

nlohmann::json report_to_json(const LdaRun& run, const LdaConfig& config);

}  // namespace trendmine::lda
