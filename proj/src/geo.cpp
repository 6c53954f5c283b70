#include "geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include "error.hpp"
#include "strutil.hpp"

namespace trendmine::geo {

const char* to_string(Winner w) {
  switch (w) {
    case Winner::A: return "A";
    case Winner::B: return "B";
    case Winner::Undecided: return "Undecided";
  }
  return "Undecided";
}

std::vector<StatePoint> parse_states(std::string_view contents) {
  std::vector<StatePoint> states;
  std::size_t line_no = 0;
  bool header = false;
  for (std::string_view line : split(contents, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      if (line != "code,lat,lon,electoral_votes") {
        throw Error(Errc::MalformedRecord, "line 1: expected header code,lat,lon,electoral_votes");
      }
      continue;
    }
    const auto f = split(line, ',');
    auto bad = [&](const std::string& why) {
      throw Error(Errc::MalformedRecord, "line " + std::to_string(line_no) + ": " + why);
    };
    if (f.size() != 4) bad("expected 4 fields");
    StatePoint p;
    p.code = std::string(trim(f[0]));
    auto lat = parse_number<double>(f[1]);
    auto lon = parse_number<double>(f[2]);
    auto ev = parse_number<int>(f[3]);
    if (p.code.empty() || !lat || !lon || !ev) bad("bad field");
    if (*lat < -90 || *lat > 90 || *lon < -180 || *lon > 180) {
      throw Error(Errc::CoordinateOutOfRange, "line " + std::to_string(line_no) + ": coordinate out of range");
    }
    if (*ev <= 0) bad("electoral_votes must be positive");
    p.lat = *lat;
    p.lon = *lon;
    p.electoral_votes = *ev;
    for (const auto& q : states) {
      if (q.code == p.code) throw Error(Errc::DuplicateCode, "line " + std::to_string(line_no) + ": duplicate code " + p.code);
    }
    states.push_back(std::move(p));
  }
  return states;
}

std::vector<StatePoint> load_states(const std::string& path) {
  try {
    return parse_states(read_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::Io) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::map<std::string, Winner> load_results(const std::string& path) {
  std::map<std::string, Winner> results;
  bool header = false;
  for (std::string_view line : split(read_file(path), '\n')) {
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 2 || (trim(f[1]) != "A" && trim(f[1]) != "B")) {
      throw Error(Errc::MalformedRecord, path + ": bad results row '" + std::string(line) + "'");
    }
    results[std::string(trim(f[0]))] = trim(f[1]) == "A" ? Winner::A : Winner::B;
  }
  return results;
}

double distance_degrees(DistanceMetric metric, double lat1, double lon1, double lat2, double lon2) {
  if (metric == DistanceMetric::Euclidean) return std::hypot(lat1 - lat2, lon1 - lon2);
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * rad;
  const double dlon = (lon2 - lon1) * rad;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * std::asin(std::min(1.0, std::sqrt(a))) / rad;
}

KdTree2::KdTree2(std::vector<StatePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(Errc::InvalidArgument, "k-d tree needs at least one point");
  std::set<std::string> codes;
  for (const auto& p : points_) {
    if (!codes.insert(p.code).second) throw Error(Errc::DuplicateCode, "duplicate state code " + p.code);
  }
  nodes_.reserve(points_.size());
  std::vector<std::size_t> idx(points_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  root_ = build(idx, 0, idx.size(), 0);
}

double KdTree2::key(std::size_t point, int axis) const {
  return axis == 0 ? points_[point].lat : points_[point].lon;
}

int KdTree2::build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi, int depth) {
  if (lo >= hi) return -1;
  const int axis = depth % 2;
  std::sort(idx.begin() + static_cast<std::ptrdiff_t>(lo), idx.begin() + static_cast<std::ptrdiff_t>(hi),
            [&](std::size_t a, std::size_t b) {
              const double ka = key(a, axis);
              const double kb = key(b, axis);
              return ka < kb || (ka == kb && a < b);
            });
  const std::size_t mid = lo + (hi - lo) / 2;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{idx[mid], axis, -1, -1});
  const int left = build(idx, lo, mid, depth + 1);
  const int right = build(idx, mid + 1, hi, depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

void KdTree2::search(int node, double lat, double lon, std::size_t& best, double& best_d2) const {
  if (node < 0) return;
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  const StatePoint& p = points_[n.point];
  const double dlat = lat - p.lat;
  const double dlon = lon - p.lon;
  const double d2 = dlat * dlat + dlon * dlon;
  if (d2 < best_d2 || (d2 == best_d2 && p.code < points_[best].code)) {
    best = n.point;
    best_d2 = d2;
  }
  const double diff = (n.axis == 0 ? lat : lon) - key(n.point, n.axis);
  const int near = diff < 0 ? n.left : n.right;
  const int far = diff < 0 ? n.right : n.left;
  search(near, lat, lon, best, best_d2);
  // <= so that equal-distance candidates on the far side still get a say.
  if (diff * diff <= best_d2) search(far, lat, lon, best, best_d2);
}

const StatePoint& KdTree2::nearest(double lat, double lon) const {
  std::size_t best = nodes_[static_cast<std::size_t>(root_)].point;
  double best_d2 = std::numeric_limits<double>::infinity();
  search(root_, lat, lon, best, best_d2);
  return points_[best];
}

std::size_t KdTree2::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<int, std::size_t>> stack{{root_, 1}};
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    if (node < 0) continue;
    deepest = std::max(deepest, d);
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    stack.emplace_back(n.left, d + 1);
    stack.emplace_back(n.right, d + 1);
  }
  return deepest;
}

bool KdTree2::partition_holds() const {
  std::vector<int> seen(points_.size(), 0);
  // Collects the subtree's points, checking each node against its subtrees.
  bool ok = true;
  auto collect = [&](auto&& self, int node) -> std::vector<std::size_t> {
    if (node < 0) return {};
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    ++seen[n.point];
    auto left = self(self, n.left);
    auto right = self(self, n.right);
    const double split = key(n.point, n.axis);
    for (auto i : left) ok = ok && key(i, n.axis) <= split;
    for (auto i : right) ok = ok && key(i, n.axis) >= split;
    left.insert(left.end(), right.begin(), right.end());
    left.push_back(n.point);
    return left;
  };
  collect(collect, root_);
  return ok && std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

StateLocator::StateLocator(std::vector<StatePoint> points, DistanceMetric metric)
    : tree_(std::move(points)), metric_(metric) {}

const StatePoint& StateLocator::nearest(double lat, double lon) const {
  if (metric_ == DistanceMetric::Euclidean) return tree_.nearest(lat, lon);
  const auto& pts = tree_.points();
  const StatePoint* best = &pts.front();
  double best_d = distance_to(*best, lat, lon);
  for (const auto& p : pts) {
    const double d = distance_to(p, lat, lon);
    if (d < best_d || (d == best_d && p.code < best->code)) {
      best = &p;
      best_d = d;
    }
  }
  return *best;
}

double StateLocator::distance_to(const StatePoint& p, double lat, double lon) const {
  return distance_degrees(metric_, lat, lon, p.lat, p.lon);
}

StateTally& StateTally::operator+=(const StateTally& other) {
  pos_a += other.pos_a;
  neg_a += other.neg_a;
  pos_b += other.pos_b;
  neg_b += other.neg_b;
  total_geo += other.total_geo;
  return *this;
}

GeoAggregation aggregate_state_sentiment(std::span<const corpus::TweetRecord> records,
                                         const sentiment::NBModel& model, const StateLocator& locator,
                                         std::span<const text::CandidateSpec> candidates,
                                         const GeoOptions& options) {
  if (candidates.size() != 2) throw Error(Errc::InvalidArgument, "geo aggregation needs exactly two candidates");
  GeoAggregation agg;
  for (const auto& r : records) {
    if (!r.geo) {
      ++agg.without_geo;
      continue;
    }
    const StatePoint& state = locator.nearest(r.geo->lat, r.geo->lon);
    if (options.offshore_degrees && locator.distance_to(state, r.geo->lat, r.geo->lon) > *options.offshore_degrees) {
      ++agg.offshore;
      continue;
    }
    auto [it, inserted] = agg.tallies.try_emplace(state.code);
    StateTally& t = it->second;
    if (inserted) t.code = state.code;
    ++t.total_geo;
    const auto call = sentiment::classify_candidate(model, r.text, candidates);
    if (!call || call->label == sentiment::Polarity::Neutral) continue;
    const bool positive = call->label == sentiment::Polarity::Positive;
    if (call->candidate == candidates[0].name) {
      ++(positive ? t.pos_a : t.neg_a);
    } else {
      ++(positive ? t.pos_b : t.neg_b);
    }
  }
  return agg;
}

std::optional<double> count_ratio(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) {
    if (numerator == 0) return std::nullopt;
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

Winner decide_winner(std::optional<double> plus_ratio, std::optional<double> minus_ratio) {
  if (!plus_ratio || !minus_ratio) return Winner::Undecided;
  if (*plus_ratio > *minus_ratio) return Winner::A;
  if (*plus_ratio < *minus_ratio) return Winner::B;
  return Winner::Undecided;
}

StateCall call_state(const StateTally& t) {
  StateCall c;
  c.code = t.code;
  c.plus_ratio = count_ratio(t.pos_a, t.pos_b);
  c.minus_ratio = count_ratio(t.neg_a, t.neg_b);
  c.counts = t.total_geo;
  if (c.plus_ratio && c.minus_ratio) {
    // Cross-multiplied so the comparison is exact in integers; this also
    // orders inf against finite ratios and makes inf == inf.
    const auto lhs = static_cast<unsigned __int128>(t.pos_a) * t.neg_b;
    const auto rhs = static_cast<unsigned __int128>(t.neg_a) * t.pos_b;
    c.winner = lhs > rhs ? Winner::A : (lhs < rhs ? Winner::B : Winner::Undecided);
  } else {
    c.winner = Winner::Undecided;
  }
  return c;
}

std::vector<StateCall> call_all_states(std::span<const StatePoint> states,
                                       const std::map<std::string, StateTally>& tallies) {
  std::vector<StateCall> calls;
  calls.reserve(states.size());
  for (const auto& s : states) {
    auto it = tallies.find(s.code);
    StateTally t = it == tallies.end() ? StateTally{} : it->second;
    t.code = s.code;
    calls.push_back(call_state(t));
  }
  std::sort(calls.begin(), calls.end(), [](const StateCall& a, const StateCall& b) { return a.code < b.code; });
  return calls;
}

PredictionScore score_predictions(const std::map<std::string, Winner>& calls,
                                  const std::map<std::string, Winner>& actual,
                                  std::span<const StatePoint> states) {
  if (calls.size() != actual.size() ||
      !std::equal(calls.begin(), calls.end(), actual.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw Error(Errc::CodeMismatch, "predicted and actual state codes differ");
  }
  std::map<std::string, int> votes;
  for (const auto& s : states) votes[s.code] = s.electoral_votes;
  PredictionScore score;
  for (const auto& [code, predicted] : calls) {
    auto ev = votes.find(code);
    if (ev == votes.end()) throw Error(Errc::CodeMismatch, "state " + code + " missing from state table");
    const Winner truth = actual.at(code);
    const bool correct = predicted == truth;
    ++score.total;
    if (correct) ++score.correct;
    if (truth == Winner::A) {
      ++score.actual_a;
      if (correct) ++score.correct_a;
    } else if (truth == Winner::B) {
      ++score.actual_b;
      if (correct) ++score.correct_b;
    }
    (predicted == Winner::A ? score.electoral_a
                            : predicted == Winner::B ? score.electoral_b : score.electoral_undecided) += ev->second;
  }
  auto frac = [](std::size_t n, std::size_t d) { return d == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(d); };
  score.overall = frac(score.correct, score.total);
  score.accuracy_a = frac(score.correct_a, score.actual_a);
  score.accuracy_b = frac(score.correct_b, score.actual_b);
  return score;
}

std::string format_ratio(std::optional<double> ratio) {
  if (!ratio) return "NA";
  if (std::isinf(*ratio)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *ratio);
  return buf;
}

std::string calls_to_csv(std::span<const StateCall> calls) {
  std::string out = "code,plus_ratio,minus_ratio,counts,winner\n";
  for (const auto& c : calls) {
    out += c.code + "," + format_ratio(c.plus_ratio) + "," + format_ratio(c.minus_ratio) + "," +
           std::to_string(c.counts) + "," + to_string(c.winner) + "\n";
  }
  return out;
}

nlohmann::json calls_to_json(std::span<const StateCall> calls) {
  auto ratio = [](std::optional<double> r) -> nlohmann::json {
    if (!r) return nullptr;
    if (std::isinf(*r)) return "inf";
    return *r;
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : calls) {
    arr.push_back({{"code", c.code},
                   {"plus_ratio", ratio(c.plus_ratio)},
                   {"minus_ratio", ratio(c.minus_ratio)},
                   {"counts", c.counts},
                   {"winner", to_string(c.winner)}});
  }
  return arr;
}

}  // namespace trendmine::geo
