#include "lda.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "error.hpp"

namespace trendmine::lda {

void LdaConfig::validate() const {
  if (topics < 1) throw Error(Errc::InvalidArgument, "topic count must be >= 1");
  if (effective_alpha() <= 0.0 || beta <= 0.0) throw Error(Errc::InvalidArgument, "alpha and beta must be > 0");
  if (iterations < 0) throw Error(Errc::InvalidArgument, "iterations must be >= 0");
  if (top_n < 1) throw Error(Errc::InvalidArgument, "top_n must be >= 1");
  if (min_count < 1) throw Error(Errc::InvalidArgument, "min_count must be >= 1");
}

nlohmann::json LdaConfig::to_json() const {
  return {{"topics", topics},       {"alpha", effective_alpha()}, {"beta", beta},
          {"iterations", iterations}, {"seed", seed},             {"top_n", top_n},
          {"min_count", min_count}};
}

double LdaState::phi(int k, std::size_t w) const {
  return (topic_word(k, w) + beta) / (n_k[static_cast<std::size_t>(k)] + static_cast<double>(vocab_size()) * beta);
}

double LdaState::theta(std::size_t d, int k) const {
  return (doc_topic(d, k) + alpha) / (static_cast<double>(docs[d].size()) + topics * alpha);
}

void LdaState::rebuild_counts() {
  const auto K = static_cast<std::size_t>(topics);
  n_dk.assign(docs.size() * K, 0);
  n_wk.assign(vocab.size() * K, 0);
  n_k.assign(K, 0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t i = 0; i < docs[d].size(); ++i) {
      const auto w = static_cast<std::size_t>(docs[d][i]);
      const auto k = static_cast<std::size_t>(z[d][i]);
      ++n_dk[d * K + k];
      ++n_wk[w * K + k];
      ++n_k[k];
    }
  }
}

bool LdaState::invariants_hold() const {
  const auto K = static_cast<std::size_t>(topics);
  if (n_dk.size() != docs.size() * K || n_wk.size() != vocab.size() * K || n_k.size() != K) return false;
  if (std::any_of(n_dk.begin(), n_dk.end(), [](int c) { return c < 0; })) return false;
  if (std::any_of(n_wk.begin(), n_wk.end(), [](int c) { return c < 0; })) return false;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    long row = 0;
    for (std::size_t k = 0; k < K; ++k) row += n_dk[d * K + k];
    if (row != static_cast<long>(docs[d].size())) return false;
  }
  std::vector<long> col(K, 0);
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    for (std::size_t k = 0; k < K; ++k) col[k] += n_wk[w * K + k];
  }
  long total = 0;
  for (std::size_t k = 0; k < K; ++k) {
    if (n_k[k] < 0 || col[k] != n_k[k]) return false;
    total += n_k[k];
  }
  if (total != static_cast<long>(total_tokens)) return false;
  // Counts must agree with the assignments themselves.
  LdaState copy_counts = *this;
  copy_counts.rebuild_counts();
  return copy_counts.n_dk == n_dk && copy_counts.n_wk == n_wk && copy_counts.n_k == n_k;
}

LdaState init_state(std::span<const text::TokenList> docs, const LdaConfig& config) {
  config.validate();
  LdaState s;
  s.topics = config.topics;
  s.alpha = config.effective_alpha();
  s.beta = config.beta;
  s.rng = Rng(config.seed);

  std::unordered_map<std::string, int> frequency;
  if (config.min_count > 1) {
    for (const auto& doc : docs) {
      for (const auto& t : doc) ++frequency[t];
    }
  }
  for (const auto& doc : docs) {
    std::vector<int> ids;
    ids.reserve(doc.size());
    for (const auto& t : doc) {
      if (config.min_count > 1 && frequency[t] < config.min_count) continue;
      auto [it, inserted] = s.word_ids.try_emplace(t, static_cast<int>(s.vocab.size()));
      if (inserted) s.vocab.push_back(t);
      ids.push_back(it->second);
    }
    if (ids.empty()) {
      ++s.dropped_docs;
      continue;
    }
    s.total_tokens += ids.size();
    s.docs.push_back(std::move(ids));
  }
  if (s.docs.empty()) throw Error(Errc::EmptyCorpus, "no non-empty documents for topic modelling");

  s.z.resize(s.docs.size());
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    s.z[d].resize(s.docs[d].size());
    for (auto& topic : s.z[d]) topic = static_cast<int>(s.rng.below(static_cast<std::uint64_t>(s.topics)));
  }
  s.rebuild_counts();
  return s;
}

namespace {

// Unnormalized weights for the token's topic, its own count already removed.
void fill_weights(const LdaState& s, std::size_t d, int w, std::vector<double>& weights) {
  const auto K = static_cast<std::size_t>(s.topics);
  const double vbeta = static_cast<double>(s.vocab_size()) * s.beta;
  const int* dk = &s.n_dk[d * K];
  const int* wk = &s.n_wk[static_cast<std::size_t>(w) * K];
  for (std::size_t k = 0; k < K; ++k) {
    weights[k] = (dk[k] + s.alpha) * (wk[k] + s.beta) / (s.n_k[k] + vbeta);
  }
}

void move_token(LdaState& s, std::size_t d, int w, int k, int delta) {
  const auto K = static_cast<std::size_t>(s.topics);
  s.n_dk[d * K + static_cast<std::size_t>(k)] += delta;
  s.n_wk[static_cast<std::size_t>(w) * K + static_cast<std::size_t>(k)] += delta;
  s.n_k[static_cast<std::size_t>(k)] += delta;
}

}  // namespace

std::vector<double> token_conditional(const LdaState& state, std::size_t d, std::size_t i) {
  const LdaState& s = state;
  const int w = s.docs[d][i];
  const int current = s.z[d][i];
  const double vbeta = static_cast<double>(s.vocab_size()) * s.beta;
  std::vector<double> weights(static_cast<std::size_t>(s.topics));
  for (int k = 0; k < s.topics; ++k) {
    const int own = k == current ? 1 : 0;
    weights[static_cast<std::size_t>(k)] = (s.doc_topic(d, k) - own + s.alpha) *
                                           (s.topic_word(k, static_cast<std::size_t>(w)) - own + s.beta) /
                                           (s.n_k[static_cast<std::size_t>(k)] - own + vbeta);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& p : weights) p /= total;
  return weights;
}

void gibbs_sweep(LdaState& s) {
  std::vector<double> weights(static_cast<std::size_t>(s.topics));
  for (std::size_t d = 0; d < s.docs.size(); ++d) {
    auto& doc = s.docs[d];
    auto& assignment = s.z[d];
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const int w = doc[i];
      move_token(s, d, w, assignment[i], -1);
      fill_weights(s, d, w, weights);
      double total = 0.0;
      for (auto& p : weights) {
        total += p;
        p = total;
      }
      const double u = s.rng.uniform01() * total;
      int k = s.topics - 1;
      for (int j = 0; j < s.topics; ++j) {
        if (u < weights[static_cast<std::size_t>(j)]) {
          k = j;
          break;
        }
      }
      assignment[i] = k;
      move_token(s, d, w, k, +1);
    }
  }
}

std::vector<TopicWord> top_words(const LdaState& s, int k, int n) {
  if (k < 0 || k >= s.topics) {
    throw Error(Errc::TopicIndexOutOfRange, "topic " + std::to_string(k) + " out of range");
  }
  std::vector<std::size_t> order(s.vocab_size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // phi is monotone in the raw count within one topic, so compare counts.
  auto better = [&](std::size_t a, std::size_t b) {
    const int ca = s.topic_word(k, a);
    const int cb = s.topic_word(k, b);
    return ca != cb ? ca > cb : s.vocab[a] < s.vocab[b];
  };
  const std::size_t take = std::min(order.size(), static_cast<std::size_t>(std::max(n, 0)));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
  std::vector<TopicWord> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({s.vocab[order[i]], s.phi(k, order[i])});
  return out;
}

LdaRun run(std::span<const text::TokenList> docs, const LdaConfig& config) {
  LdaRun result{init_state(docs, config), {}};
  LdaState& s = result.state;
  if (config.check_invariants && !s.invariants_hold()) throw std::logic_error("LDA counts inconsistent after init");
  for (int it = 0; it < config.iterations; ++it) {
    gibbs_sweep(s);
    if (config.check_invariants && !s.invariants_hold()) {
      throw std::logic_error("LDA counts inconsistent after sweep " + std::to_string(it + 1));
    }
  }
  for (int k = 0; k < s.topics; ++k) result.report.push_back(top_words(s, k, config.top_n));
  return result;
}

nlohmann::json report_to_json(const LdaRun& run, const LdaConfig& config) {
  nlohmann::json topics = nlohmann::json::array();
  for (std::size_t k = 0; k < run.report.size(); ++k) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& tw : run.report[k]) words.push_back({{"token", tw.token}, {"probability", tw.probability}});
    topics.push_back({{"topic", k}, {"words", std::move(words)}});
  }
  return {{"config", config.to_json()},
          {"sampler", {{"method", "collapsed-gibbs"}, {"rng", Rng::kAlgorithmId}}},
          {"metadata",
           {{"seed", config.seed},
            {"iterations", config.iterations},
            {"vocabulary_size", run.state.vocab_size()},
            {"documents", run.state.docs.size()},
            {"dropped_documents", run.state.dropped_docs},
            {"tokens", run.state.total_tokens}}},
          {"topics", std::move(topics)}};
}

}  // namespace trendmine::lda
