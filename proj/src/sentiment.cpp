#include "sentiment.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "strutil.hpp"

namespace trendmine::sentiment {

std::optional<Polarity> parse_polarity(std::string_view s) {
  s = trim(s);
  if (s == "-1") return Polarity::Negative;
  if (s == "0" || s == "+0" || s == "-0") return Polarity::Neutral;
  if (s == "1" || s == "+1") return Polarity::Positive;
  return std::nullopt;
}

std::string to_string(Polarity p) {
  switch (p) {
    case Polarity::Negative: return "-1";
    case Polarity::Neutral: return "0";
    case Polarity::Positive: return "+1";
  }
  return "0";
}

NBModel NBModel::train(std::span<const LabeledExample> examples, PriorMode priors) {
  NBModel m;
  m.prior_mode_ = priors;
  for (const auto& ex : examples) {
    const std::size_t l = label_index(ex.label);
    ++m.doc_counts_[l];
    for (const auto& w : ex.tokens) {
      ++m.counts_[w][l];
      ++m.token_totals_[l];
    }
  }
  for (Polarity p : kLabels) {
    if (m.doc_counts_[label_index(p)] == 0) {
      throw Error(Errc::MissingLabelClass, "no training examples with label " + to_string(p));
    }
  }
  return m;
}

std::vector<std::string> NBModel::vocabulary() const {
  std::vector<std::string> words;
  words.reserve(counts_.size());
  for (const auto& [w, _] : counts_) words.push_back(w);
  std::sort(words.begin(), words.end());
  return words;
}

std::uint64_t NBModel::word_count(std::string_view word, Polarity label) const {
  auto it = counts_.find(std::string(word));
  return it == counts_.end() ? 0 : it->second[label_index(label)];
}

double NBModel::prior(Polarity label) const {
  if (prior_mode_ == PriorMode::Uniform) return 1.0 / 3.0;
  std::uint64_t total = 0;
  for (auto c : doc_counts_) total += c;
  return static_cast<double>(doc_counts_[label_index(label)]) / static_cast<double>(total);
}

double NBModel::word_likelihood(std::string_view word, Polarity label) const {
  const double numerator = static_cast<double>(word_count(word, label)) + 1.0;
  const double denominator =
      static_cast<double>(label_token_count(label)) + static_cast<double>(vocabulary_size());
  return numerator / denominator;
}

LabelScores NBModel::log_posterior(std::span<const std::string> tokens) const {
  LabelScores scores{};
  const auto vocab = static_cast<double>(vocabulary_size());
  for (Polarity p : kLabels) {
    const std::size_t l = label_index(p);
    const double log_denominator = std::log(static_cast<double>(token_totals_[l]) + vocab);
    double s = std::log(prior(p));
    for (const auto& w : tokens) {
      auto it = counts_.find(w);
      const double count = it == counts_.end() ? 0.0 : static_cast<double>(it->second[l]);
      s += std::log(count + 1.0) - log_denominator;
    }
    scores[l] = s;
  }
  return scores;
}

Polarity NBModel::classify(std::span<const std::string> tokens) const {
  const LabelScores scores = log_posterior(tokens);
  // Log sums of exactly equal posteriors can differ in the last bits, so
  // near-equal scores count as a tie and fall to the fixed label order.
  auto beats = [](double a, double b) {
    return a - b > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  std::size_t best = 0;
  for (std::size_t l = 1; l < scores.size(); ++l) {
    if (beats(scores[l], scores[best])) best = l;
  }
  return kLabels[best];
}

nlohmann::json NBModel::to_json() const {
  nlohmann::json j;
  j["format"] = "trendmine-nb/1";
  j["prior_mode"] = prior_mode_ == PriorMode::Uniform ? "uniform" : "empirical";
  j["label_order"] = {0, -1, 1};
  j["doc_counts"] = doc_counts_;
  j["token_counts"] = token_totals_;
  nlohmann::json words = nlohmann::json::object();
  for (const auto& [w, c] : counts_) words[w] = c;
  j["words"] = std::move(words);
  j["negation_cues"] = preprocessor_.negation_cues();
  j["stop_words"] = preprocessor_.stop_words();
  return j;
}

NBModel NBModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "trendmine-nb/1") {
      throw Error(Errc::MalformedRecord, "unsupported model format");
    }
    NBModel m;
    m.prior_mode_ = j.at("prior_mode").get<std::string>() == "uniform" ? PriorMode::Uniform : PriorMode::Empirical;
    m.doc_counts_ = j.at("doc_counts").get<std::array<std::uint64_t, 3>>();
    m.token_totals_ = j.at("token_counts").get<std::array<std::uint64_t, 3>>();
    std::array<std::uint64_t, 3> sum{};
    for (const auto& [w, c] : j.at("words").items()) {
      auto counts = c.get<std::array<std::uint64_t, 3>>();
      for (std::size_t l = 0; l < 3; ++l) sum[l] += counts[l];
      m.counts_.emplace(w, counts);
    }
    if (sum != m.token_totals_) throw Error(Errc::MalformedRecord, "model token counts are inconsistent");
    for (auto c : m.doc_counts_) {
      if (c == 0) throw Error(Errc::MissingLabelClass, "model has a label without training examples");
    }
    m.preprocessor_ = text::Preprocessor(j.at("negation_cues").get<std::vector<std::string>>(),
                                         j.at("stop_words").get<std::vector<std::string>>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("invalid model file: ") + e.what());
  }
}

std::optional<CandidateLabel> classify_candidate(const NBModel& model, std::string_view text,
                                                 std::span<const text::CandidateSpec> candidates) {
  const auto mentioned = text::detect_mentions(text, candidates);
  if (mentioned.size() != 1) return std::nullopt;
  const auto tokens = model.preprocessor().preprocess(text);
  return CandidateLabel{*mentioned.begin(), model.classify(tokens)};
}

Evaluation evaluate(const NBModel& model, std::span<const LabeledExample> held_out) {
  if (held_out.empty()) throw Error(Errc::InvalidArgument, "evaluation set is empty");
  Evaluation e;
  std::size_t correct = 0;
  for (const auto& ex : held_out) {
    const std::size_t truth = label_index(ex.label);
    const std::size_t predicted = label_index(model.classify(ex.tokens));
    ++e.confusion[truth][predicted];
    if (truth == predicted) ++correct;
  }
  e.total = held_out.size();
  e.accuracy = static_cast<double>(correct) / static_cast<double>(e.total);
  return e;
}

LabeledSet parse_labeled(std::string_view contents, const text::Preprocessor& prep,
                         std::span<const text::CandidateSpec> candidates) {
  LabeledSet set;
  std::size_t line_no = 0;
  for (std::string_view line : split(contents, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    auto fail = [&](const std::string& why) {
      throw Error(Errc::MalformedRecord, "line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 3) fail("expected text<TAB>target<TAB>label");
    const std::string target(trim(fields[1]));
    if (target == "NA") {
      ++set.skipped_na;
      continue;
    }
    auto label = parse_polarity(fields[2]);
    if (!label) fail("label must be -1, 0 or +1");
    const auto mentioned = text::detect_mentions(fields[0], candidates);
    if (mentioned.size() != 1 || *mentioned.begin() != target) {
      ++set.skipped_mentions;
      continue;
    }
    set.examples.push_back(LabeledExample{prep.preprocess(fields[0]), target, *label});
  }
  return set;
}

LabeledSet load_labeled(const std::string& path, const text::Preprocessor& prep,
                        std::span<const text::CandidateSpec> candidates) {
  try {
    return parse_labeled(read_file(path), prep, candidates);
  } catch (const Error& e) {
    if (e.code() == Errc::Io) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace trendmine::sentiment
