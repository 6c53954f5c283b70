#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "lda.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace trendmine;
using namespace trendmine::lda;
using TL = text::TokenList;

namespace {

LdaConfig cfg(int k, int iters, std::uint64_t seed = 1) {
  LdaConfig c;
  c.topics = k;
  c.iterations = iters;
  c.seed = seed;
  return c;
}

std::vector<TL> small_docs() {
  return {{"apple", "banana", "apple"}, {"car", "truck", "car", "road"}, {"apple", "fruit"}, {"road", "truck"}, {}};
}

// phi for one topic as a vector over the synthetic vocabulary
std::vector<std::vector<double>> recovered_phi(const LdaState& s, const std::vector<std::string>& vocab) {
  std::vector<std::vector<double>> out;
  for (int k = 0; k < s.topics; ++k) {
    std::vector<double> row;
    for (const auto& w : vocab) {
      auto it = s.word_ids.find(w);
      row.push_back(it == s.word_ids.end() ? 0.0 : s.phi(k, static_cast<std::size_t>(it->second)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("config validation and defaults") {
  LdaConfig c;
  CHECK(c.effective_alpha() == doctest::Approx(10.0));
  c.topics = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = LdaConfig{};
  c.beta = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = LdaConfig{};
  c.alpha = -1;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("init: empty documents dropped, counts consistent") {
  const auto docs = small_docs();
  const auto s = init_state(docs, cfg(2, 0));
  CHECK(s.docs.size() == 4);
  CHECK(s.dropped_docs == 1);
  CHECK(s.total_tokens == 11);
  CHECK(s.vocab_size() == 6);
  CHECK(s.invariants_hold());
  std::vector<TL> none = {{}, {}};
  try {
    init_state(none, cfg(2, 0));
    FAIL("expected EmptyCorpus");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyCorpus);
  }
}

TEST_CASE("min_count drops rare words") {
  auto c = cfg(2, 0);
  c.min_count = 2;
  const auto s = init_state(small_docs(), c);
  CHECK_FALSE(s.word_ids.contains("banana"));
  CHECK(s.word_ids.contains("apple"));
  CHECK(s.invariants_hold());
}

TEST_CASE("conditional is a distribution; phi and theta normalize") {
  const auto docs = small_docs();
  auto s = init_state(docs, cfg(3, 0, 9));
  for (int sweep = 0; sweep < 5; ++sweep) {
    gibbs_sweep(s);
    CHECK(s.invariants_hold());
    for (std::size_t d = 0; d < s.docs.size(); ++d) {
      for (std::size_t i = 0; i < s.docs[d].size(); ++i) {
        const auto p = token_conditional(s, d, i);
        REQUIRE(p.size() == 3);
        double sum = 0;
        for (double v : p) {
          CHECK(v > 0);
          sum += v;
        }
        CHECK(std::abs(sum - 1) <= 1e-12);
      }
      double th = 0;
      for (int k = 0; k < s.topics; ++k) th += s.theta(d, k);
      CHECK(std::abs(th - 1) <= 1e-12);
    }
    for (int k = 0; k < s.topics; ++k) {
      double ph = 0;
      for (std::size_t w = 0; w < s.vocab_size(); ++w) ph += s.phi(k, w);
      CHECK(std::abs(ph - 1) <= 1e-9);
    }
  }
}

TEST_CASE("conditional matches a hand computation") {
  // two docs, one topic assignment state set by hand
  std::vector<TL> docs = {{"a", "b"}, {"a"}};
  auto s = init_state(docs, cfg(2, 0));
  s.z = {{0, 1}, {0}};
  s.rebuild_counts();
  REQUIRE(s.invariants_hold());
  // token 0 of doc 0 ("a"), counts without it: n_dk(0)=[0,1], n_wk(a)=[1,0], n_k=[1,1], V=2
  const double a = s.alpha, b = s.beta, V = 2;
  const double w0 = (0 + a) * (1 + b) / (1 + V * b);
  const double w1 = (1 + a) * (0 + b) / (1 + V * b);
  const auto p = token_conditional(s, 0, 0);
  CHECK(p[0] == doctest::Approx(w0 / (w0 + w1)));
  CHECK(p[1] == doctest::Approx(w1 / (w0 + w1)));
}

TEST_CASE("same seed, same result; invariants checked each sweep") {
  const auto tc = synth::generate_topic_corpus({});
  auto c = cfg(3, 20, 42);
  c.check_invariants = true;
  const auto r1 = run(tc.docs, c);
  const auto r2 = run(tc.docs, c);
  CHECK(r1.state.z == r2.state.z);
  CHECK(r1.report == r2.report);
  CHECK(report_to_json(r1, c).dump() == report_to_json(r2, c).dump());
  c.seed = 43;
  CHECK(run(tc.docs, c).state.z != r1.state.z);
}

TEST_CASE("top_words") {
  const auto r = run(small_docs(), cfg(2, 10));
  CHECK(r.report.size() == 2);
  for (int k = 0; k < 2; ++k) {
    const auto tw = top_words(r.state, k, 100);
    CHECK(tw.size() == 6);
    for (std::size_t i = 1; i < tw.size(); ++i) {
      CHECK((tw[i - 1].probability > tw[i].probability ||
             (tw[i - 1].probability == tw[i].probability && tw[i - 1].token < tw[i].token)));
    }
  }
  try {
    top_words(r.state, 2, 3);
    FAIL("expected TopicIndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TopicIndexOutOfRange);
  }
  CHECK_THROWS_AS(top_words(r.state, -1, 3), Error);
}

TEST_CASE("single topic: phi is the smoothed corpus frequency") {
  const auto r = run(small_docs(), cfg(1, 3));
  const auto& s = r.state;
  for (const auto& [w, id] : s.word_ids) {
    std::size_t c = 0;
    for (const auto& d : s.docs)
      for (int t : d) c += t == id;
    const double want = (static_cast<double>(c) + s.beta) / (static_cast<double>(s.total_tokens) + 6 * s.beta);
    CHECK(s.phi(0, static_cast<std::size_t>(id)) == doctest::Approx(want));
  }
}

TEST_CASE("recovers planted topics") {
  synth::TopicCorpusSpec spec;
  spec.documents = 600;
  const auto tc = synth::generate_topic_corpus(spec);
  auto c = cfg(spec.topics, 200, 5);
  const auto r = run(tc.docs, c);
  const auto tv = oracle::matched_tv(tc.phi, recovered_phi(r.state, tc.vocab));
  for (double t : tv) {
    INFO("matched TV " << t);
    CHECK(t < 0.15);
  }
}
