#pragma once
// Independent reference implementations the fast paths are checked against.

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "geo.hpp"
#include "sentiment.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// Prior times add-one likelihoods, straight from the raw examples, exact, in linear space.
// Returns the unnormalized posterior per label in kLabels order.
inline std::array<Rational, 3> nb_posterior(const std::vector<trendmine::sentiment::LabeledExample>& examples,
                                            const std::vector<std::string>& tokens) {
  using namespace trendmine::sentiment;
  std::set<std::string> vocab;
  std::array<long, 3> docs{}, totals{};
  std::array<std::map<std::string, long>, 3> counts;
  for (const auto& e : examples) {
    const auto l = label_index(e.label);
    ++docs[l];
    for (const auto& t : e.tokens) {
      vocab.insert(t);
      ++counts[l][t];
      ++totals[l];
    }
  }
  const long n = docs[0] + docs[1] + docs[2];
  const long v = static_cast<long>(vocab.size());
  std::array<Rational, 3> out;
  for (std::size_t l = 0; l < 3; ++l) {
    Rational p(docs[l], n);
    for (const auto& t : tokens) {
      auto it = counts[l].find(t);
      const long c = it == counts[l].end() ? 0 : it->second;
      p *= Rational(c + 1, totals[l] + v);
    }
    out[l] = p;
  }
  return out;
}

// First maximum in Neutral, Negative, Positive order.
inline trendmine::sentiment::Polarity argmax(const std::array<Rational, 3>& p) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < 3; ++l) {
    if (p[l] > p[best]) best = l;
  }
  return trendmine::sentiment::kLabels[best];
}

// Linear scan; exact ties go to the smaller code.
inline const trendmine::geo::StatePoint& nearest(const std::vector<trendmine::geo::StatePoint>& pts, double lat,
                                                 double lon) {
  const trendmine::geo::StatePoint* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double dlat = p.lat - lat, dlon = p.lon - lon;
    const double d = dlat * dlat + dlon * dlon;
    if (d < best_d || (d == best_d && p.code < best->code)) {
      best = &p;
      best_d = d;
    }
  }
  return *best;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

// Best one-to-one matching of recovered to planted topics (exhaustive over
// permutations, fine for small K). Returns per-planted-topic TV distance.
inline std::vector<double> matched_tv(const std::vector<std::vector<double>>& planted,
                                      const std::vector<std::vector<double>>& recovered) {
  std::vector<std::size_t> perm(recovered.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> best;
  double best_sum = std::numeric_limits<double>::infinity();
  do {
    std::vector<double> tv;
    double sum = 0;
    for (std::size_t k = 0; k < planted.size(); ++k) {
      tv.push_back(total_variation(planted[k], recovered[perm[k]]));
      sum += tv.back();
    }
    if (sum < best_sum) {
      best_sum = sum;
      best = tv;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
