#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "sentiment.hpp"
#include "synth.hpp"

using namespace trendmine;
using namespace trendmine::sentiment;
using Ex = LabeledExample;
using TL = text::TokenList;

namespace {

std::vector<Ex> micro() { return {{{"good"}, "a", Polarity::Positive}, {{"bad"}, "a", Polarity::Negative}, {{"meh"}, "a", Polarity::Neutral}}; }

std::vector<Ex> random_examples(Rng& rng, std::size_t n, std::size_t vocab, std::size_t max_len) {
  std::vector<Ex> out;
  for (std::size_t i = 0; i < n; ++i) {
    Ex e;
    e.label = kLabels[i < 3 ? i : rng.below(3)];
    const auto len = rng.below(max_len + 1);
    for (std::uint64_t j = 0; j < len; ++j) e.tokens.push_back("w" + std::to_string(rng.below(vocab)));
    out.push_back(std::move(e));
  }
  return out;
}

Polarity permute(Polarity p, const std::array<std::size_t, 3>& perm) { return kLabels[perm[label_index(p)]]; }

}  // namespace

TEST_CASE("train: micro corpus") {
  auto m = NBModel::train(micro());
  CHECK(m.vocabulary_size() == 3);
  CHECK(m.prior(Polarity::Positive) == doctest::Approx(1.0 / 3));
  CHECK(m.label_token_count(Polarity::Negative) == 1);
  CHECK(m.vocabulary() == std::vector<std::string>{"bad", "good", "meh"});
}

TEST_CASE("train: duplicates count twice, missing labels fail") {
  auto ex = micro();
  ex.push_back(ex[0]);
  auto m = NBModel::train(ex);
  CHECK(m.word_count("good", Polarity::Positive) == 2);
  CHECK(m.label_doc_count(Polarity::Positive) == 2);
  std::vector<Ex> two = {micro()[0], micro()[1]};
  try {
    NBModel::train(two);
    FAIL("expected MissingLabelClass");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingLabelClass);
  }
}

TEST_CASE("train: 989 generated examples") {
  const auto spec = synth::election_2012(5, 0);
  const auto rows = synth::generate_labeled(spec, 989);
  text::Preprocessor prep;
  const auto set = parse_labeled(synth::labeled_to_tsv(rows), prep, spec.candidates);
  CHECK(set.examples.size() == 989);
  const auto m = NBModel::train(set.examples);
  CHECK(m.vocabulary_size() > 20);
}

TEST_CASE("word_likelihood: worked values") {
  // neutral has a document but no tokens
  std::vector<Ex> ex = {{{"a"}, "x", Polarity::Positive}, {{"b", "c"}, "x", Polarity::Negative}, {{}, "x", Polarity::Neutral}};
  auto m = NBModel::train(ex);
  CHECK(m.vocabulary_size() == 3);
  CHECK(m.word_likelihood("zzz", Polarity::Neutral) == doctest::Approx(1.0 / 3));

  // w seen 2x under +1, 4 tokens under +1, |V| = 6
  std::vector<Ex> ex2 = {{{"w", "w", "p", "q"}, "x", Polarity::Positive},
                         {{"r", "s"}, "x", Polarity::Negative},
                         {{"t"}, "x", Polarity::Neutral}};
  auto m2 = NBModel::train(ex2);
  CHECK(m2.vocabulary_size() == 6);
  CHECK(m2.word_likelihood("w", Polarity::Positive) == doctest::Approx(0.3));
}

TEST_CASE("normalization: sum over V is 1, plus one OOV mass") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ex = random_examples(rng, 3 + rng.below(15), 2 + rng.below(10), 5);
    const auto m = NBModel::train(ex);
    for (auto l : kLabels) {
      double s = 0;
      oracle::Rational exact = 0;
      for (const auto& w : m.vocabulary()) {
        s += m.word_likelihood(w, l);
        exact += oracle::Rational(m.word_count(w, l) + 1, m.label_token_count(l) + m.vocabulary_size());
      }
      CHECK(exact == 1);
      CHECK(std::abs(s - 1.0) <= 1e-12);
      const double with_oov = s + m.word_likelihood("<oov>", l);
      CHECK(with_oov <= 1.0 + 1.0 / static_cast<double>(m.label_token_count(l) + m.vocabulary_size()) + 1e-12);
    }
    double priors = 0;
    for (auto l : kLabels) priors += m.prior(l);
    CHECK(priors == doctest::Approx(1.0));
  }
}

TEST_CASE("log_posterior: empty tokens and single-token ranking") {
  auto m = NBModel::train(micro());
  const auto s = m.log_posterior(TL{});
  for (auto l : kLabels) CHECK(s[label_index(l)] == doctest::Approx(std::log(m.prior(l))));

  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ex = random_examples(rng, 12, 6, 4);
    auto u = NBModel::train(ex, PriorMode::Uniform);
    const std::string w = "w" + std::to_string(rng.below(6));
    const auto sc = u.log_posterior(TL{w});
    for (auto a : kLabels) {
      for (auto b : kLabels) {
        if (u.word_likelihood(w, a) > u.word_likelihood(w, b)) CHECK(sc[label_index(a)] > sc[label_index(b)]);
      }
    }
  }
}

TEST_CASE("log_posterior agrees with the linear-space oracle") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ex = random_examples(rng, 3 + rng.below(20), 3 + rng.below(5), 4);
    const auto m = NBModel::train(ex);
    for (int q = 0; q < 10; ++q) {
      TL toks;
      const auto n = rng.below(6);
      for (std::uint64_t i = 0; i < n; ++i) toks.push_back("w" + std::to_string(rng.below(9)));
      const auto exact = oracle::nb_posterior(ex, toks);
      const oracle::Rational z = exact[0] + exact[1] + exact[2];
      const auto sc = m.log_posterior(toks);
      const double mx = std::max({sc[0], sc[1], sc[2]});
      double zs = 0;
      for (double v : sc) zs += std::exp(v - mx);
      for (std::size_t l = 0; l < 3; ++l) {
        const double want = static_cast<double>(exact[l] / z);
        const double got = std::exp(sc[l] - mx) / zs;
        CHECK(std::abs(got - want) <= 1e-12 * want);
      }
      CHECK(m.classify(toks) == oracle::argmax(exact));
    }
  }
}

TEST_CASE("classify: prior-only and separable cases") {
  std::vector<Ex> ex;
  for (int i = 0; i < 5; ++i) ex.push_back({{"x"}, "a", Polarity::Neutral});
  for (int i = 0; i < 3; ++i) ex.push_back({{"x"}, "a", Polarity::Negative});
  for (int i = 0; i < 2; ++i) ex.push_back({{"x"}, "a", Polarity::Positive});
  CHECK(NBModel::train(ex).classify(TL{}) == Polarity::Neutral);

  std::vector<Ex> sym = {{{"good"}, "a", Polarity::Positive}, {{"bad"}, "a", Polarity::Negative}, {{"ok"}, "a", Polarity::Neutral}};
  CHECK(NBModel::train(sym).classify(TL{"good"}) == Polarity::Positive);
  CHECK(NBModel::train(sym).classify(TL{"bad"}) == Polarity::Negative);
  // full tie -> Neutral first, then Negative
  CHECK(NBModel::train(sym).classify(TL{"unseen"}) == Polarity::Neutral);
  std::vector<Ex> np = {{{"a"}, "a", Polarity::Positive}, {{"a"}, "a", Polarity::Negative}, {{"b", "c", "d"}, "a", Polarity::Neutral}};
  CHECK(NBModel::train(np).classify(TL{"a"}) == Polarity::Negative);
}

TEST_CASE("label permutation equivariance") {
  Rng rng(31);
  const std::array<std::array<std::size_t, 3>, 5> perms = {{{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto ex = random_examples(rng, 15, 5, 4);
    const auto m = NBModel::train(ex);
    for (const auto& perm : perms) {
      auto relabeled = ex;
      for (auto& e : relabeled) e.label = permute(e.label, perm);
      const auto pm = NBModel::train(relabeled);
      for (int q = 0; q < 10; ++q) {
        TL toks;
        for (int i = 0; i < 3; ++i) toks.push_back("w" + std::to_string(rng.below(6)));
        const auto exact = oracle::nb_posterior(ex, toks);
        const auto top = std::max({exact[0], exact[1], exact[2]});
        if ((exact[0] == top) + (exact[1] == top) + (exact[2] == top) > 1) continue;  // tie order is not symmetric
        CHECK(pm.classify(toks) == permute(m.classify(toks), perm));
      }
    }
  }
}

TEST_CASE("a token with equal likelihood under every label never moves the argmax") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    // every label gets the same number of tokens, so any OOV token is flat
    std::vector<Ex> ex;
    for (auto l : kLabels) {
      for (int d = 0; d < 1 + static_cast<int>(rng.below(3)); ++d) {
        Ex e{{}, "a", l};
        for (int i = 0; i < 4; ++i) e.tokens.push_back("w" + std::to_string(rng.below(5)));
        ex.push_back(e);
      }
    }
    std::array<std::size_t, 3> tot{};
    for (const auto& e : ex) tot[label_index(e.label)] += e.tokens.size();
    const std::size_t target = std::max({tot[0], tot[1], tot[2]});
    for (auto l : kLabels) {
      while (tot[label_index(l)] < target) {
        ex.push_back({{"pad" + std::to_string(label_index(l))}, "a", l});
        ++tot[label_index(l)];
      }
    }
    const auto m = NBModel::train(ex);
    TL toks = {"w" + std::to_string(rng.below(5)), "w" + std::to_string(rng.below(5))};
    const auto before = m.classify(toks);
    toks.push_back("never-seen");
    CHECK(m.classify(toks) == before);
  }
}

TEST_CASE("classify_candidate") {
  std::vector<Ex> ex = {{{"win"}, "obama", Polarity::Positive},
                        {{"lose"}, "obama", Polarity::Negative},
                        {{"tonight"}, "obama", Polarity::Neutral}};
  auto m = NBModel::train(ex);
  const auto c = text::default_candidates();
  auto r = classify_candidate(m, "RT @MarkSalling: Obama is going to win", c);
  REQUIRE(r);
  CHECK(r->candidate == "obama");
  CHECK(r->label == Polarity::Positive);
  CHECK_FALSE(classify_candidate(m, "Obama vs Romney", c));
  CHECK_FALSE(classify_candidate(m, "rainy day", c));
}

TEST_CASE("evaluate") {
  auto m = NBModel::train(micro());
  auto e = evaluate(m, micro());
  CHECK(e.accuracy == 1.0);
  CHECK(e.total == 3);
  std::vector<Ex> wrong = {{{"good"}, "a", Polarity::Negative}};
  e = evaluate(m, wrong);
  CHECK(e.accuracy == 0.0);
  CHECK(e.confusion[label_index(Polarity::Negative)][label_index(Polarity::Positive)] == 1);
  std::size_t total = 0;
  for (auto& row : e.confusion)
    for (auto v : row) total += v;
  CHECK(total == 1);
}

TEST_CASE("evaluate: data drawn from a known NB model reaches the Bayes rate") {
  // 3 labels, 5 words, documents of 3 tokens; Bayes rate by enumeration.
  const std::array<double, 3> prior = {0.4, 0.35, 0.25};
  const std::array<std::array<double, 5>, 3> pw = {{{0.4, 0.3, 0.1, 0.1, 0.1},
                                                     {0.1, 0.1, 0.5, 0.2, 0.1},
                                                     {0.1, 0.2, 0.1, 0.2, 0.4}}};
  double bayes = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c) {
        double best = 0;
        for (int l = 0; l < 3; ++l) best = std::max(best, prior[l] * pw[l][a] * pw[l][b] * pw[l][c]);
        bayes += best;
      }
  Rng rng(404);
  auto draw = [&](std::size_t n) {
    std::vector<Ex> out;
    for (std::size_t i = 0; i < n; ++i) {
      double u = rng.uniform01();
      std::size_t l = 0;
      while (l < 2 && u >= prior[l]) u -= prior[l++];
      Ex e{{}, "a", kLabels[l]};
      for (int t = 0; t < 3; ++t) {
        double v = rng.uniform01();
        std::size_t w = 0;
        while (w < 4 && v >= pw[l][w]) v -= pw[l][w++];
        e.tokens.push_back("w" + std::to_string(w));
      }
      out.push_back(std::move(e));
    }
    return out;
  };
  const auto train = draw(2000);
  const auto test = draw(2000);
  const auto e = evaluate(NBModel::train(train), test);
  INFO("bayes rate " << bayes << ", accuracy " << e.accuracy);
  CHECK(e.accuracy >= bayes - 0.05);
}

TEST_CASE("model JSON round trip") {
  Rng rng(12);
  const auto ex = random_examples(rng, 30, 8, 5);
  const auto m = NBModel::train(ex);
  const auto back = NBModel::from_json(nlohmann::json::parse(m.to_json().dump()));
  CHECK(back.vocabulary() == m.vocabulary());
  for (const auto& w : m.vocabulary())
    for (auto l : kLabels) CHECK(back.word_count(w, l) == m.word_count(w, l));
  CHECK(back.to_json() == m.to_json());
  auto bad = m.to_json();
  bad["token_counts"][0] = 99999;
  CHECK_THROWS_AS(NBModel::from_json(bad), Error);
}

TEST_CASE("labeled file parsing") {
  text::Preprocessor prep;
  const auto c = text::default_candidates();
  const std::string tsv =
      "Obama will win\tobama\t+1\n"
      "Romney lies\tromney\t-1\n"
      "both Obama and Romney\tobama\t0\n"
      "Romney rally tonight\tNA\t0\n"
      "Barack wins\tromney\t0\n";
  const auto s = parse_labeled(tsv, prep, c);
  CHECK(s.examples.size() == 2);
  CHECK(s.skipped_na == 1);
  CHECK(s.skipped_mentions == 2);
  CHECK(s.examples[0].label == Polarity::Positive);
  CHECK(s.examples[0].tokens == TL{"obama", "win"});
  CHECK_THROWS_AS(parse_labeled("text only\n", prep, c), Error);
  CHECK_THROWS_AS(parse_labeled("Obama\tobama\t2\n", prep, c), Error);
}
