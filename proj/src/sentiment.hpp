#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "textprep.hpp"

namespace trendmine::sentiment {

enum class Polarity : int { Negative = -1, Neutral = 0, Positive = 1 };

// Score arrays are indexed in this order, which is also the tie-break order.
inline constexpr std::array<Polarity, 3> kLabels{Polarity::Neutral, Polarity::Negative, Polarity::Positive};

constexpr std::size_t label_index(Polarity p) {
  switch (p) {
    case Polarity::Neutral: return 0;
    case Polarity::Negative: return 1;
    case Polarity::Positive: return 2;
  }
  return 0;
}

std::optional<Polarity> parse_polarity(std::string_view s);
std::string to_string(Polarity p);

using LabelScores = std::array<double, 3>;

struct LabeledExample {
  text::TokenList tokens;
  std::string target;
  Polarity label = Polarity::Neutral;
};

enum class PriorMode { Empirical, Uniform };

// Multinomial Naive Bayes over the three polarity labels with add-one
// smoothing. The likelihood denominator is the label's total token count
// plus |V|, so each label's likelihoods sum to one over V.
class NBModel {
 public:
  // Throws MissingLabelClass unless every label has at least one example.
  static NBModel train(std::span<const LabeledExample> examples, PriorMode priors = PriorMode::Empirical);

  std::size_t vocabulary_size() const { return counts_.size(); }
  std::vector<std::string> vocabulary() const;  // sorted

  std::uint64_t word_count(std::string_view word, Polarity label) const;
  std::uint64_t label_token_count(Polarity label) const { return token_totals_[label_index(label)]; }
  std::uint64_t label_doc_count(Polarity label) const { return doc_counts_[label_index(label)]; }
  PriorMode prior_mode() const { return prior_mode_; }

  double prior(Polarity label) const;
  double word_likelihood(std::string_view word, Polarity label) const;

  // log prior + sum of log likelihoods, unnormalized; repeated tokens count
  // once per occurrence.
  LabelScores log_posterior(std::span<const std::string> tokens) const;

  // First maximum in kLabels order wins.
  Polarity classify(std::span<const std::string> tokens) const;

  // Word-list configuration used to produce the training tokens; inference
  // goes through the same Preprocessor.
  const text::Preprocessor& preprocessor() const { return preprocessor_; }
  void set_preprocessor(text::Preprocessor prep) { preprocessor_ = std::move(prep); }

  nlohmann::json to_json() const;
  static NBModel from_json(const nlohmann::json& j);

 private:
  std::unordered_map<std::string, std::array<std::uint64_t, 3>> counts_;
  std::array<std::uint64_t, 3> token_totals_{};
  std::array<std::uint64_t, 3> doc_counts_{};
  PriorMode prior_mode_ = PriorMode::Empirical;
  text::Preprocessor preprocessor_;
};

struct CandidateLabel {
  std::string candidate;
  Polarity label = Polarity::Neutral;
  bool operator==(const CandidateLabel&) const = default;
};

// Absent unless exactly one candidate is mentioned in the raw text.
std::optional<CandidateLabel> classify_candidate(const NBModel& model, std::string_view text,
                                                 std::span<const text::CandidateSpec> candidates);

struct Evaluation {
  double accuracy = 0.0;
  std::size_t total = 0;
  // confusion[true][predicted], both indexed by label_index.
  std::array<std::array<std::size_t, 3>, 3> confusion{};
};

Evaluation evaluate(const NBModel& model, std::span<const LabeledExample> held_out);

struct LabeledSet {
  std::vector<LabeledExample> examples;
  std::size_t skipped_na = 0;
  std::size_t skipped_mentions = 0;  // text does not mention exactly its target
};

// `text<TAB>target<TAB>label` per line, label in {-1, 0, +1}. Rows whose
// target is NA are skipped, as are rows whose text does not mention exactly
// the target candidate.
LabeledSet parse_labeled(std::string_view contents, const text::Preprocessor& prep,
                         std::span<const text::CandidateSpec> candidates);
LabeledSet load_labeled(const std::string& path, const text::Preprocessor& prep,
                        std::span<const text::CandidateSpec> candidates);

}  // namespace trendmine::sentiment
