#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "sentiment.hpp"
#include "textprep.hpp"

namespace trendmine::geo {

struct StatePoint {
  std::string code;
  double lat = 0.0;
  double lon = 0.0;
  int electoral_votes = 0;
  bool operator==(const StatePoint&) const = default;
};

enum class Winner { A, B, Undecided };
const char* to_string(Winner w);

std::vector<StatePoint> default_states();
std::map<std::string, Winner> results_2012();

// CSV `code,lat,lon,electoral_votes` with that header line.
std::vector<StatePoint> parse_states(std::string_view contents);
std::vector<StatePoint> load_states(const std::string& path);

// CSV `code,winner` with winner A or B.
std::map<std::string, Winner> load_results(const std::string& path);

enum class DistanceMetric { Euclidean, Haversine };

// Euclidean distance in raw degrees, or great-circle central angle in degrees.
double distance_degrees(DistanceMetric metric, double lat1, double lon1, double lat2, double lon2);

// Balanced 2-d tree over (lat, lon), split axis alternating with depth
// (lat first). Nodes split at the median; equal keys keep the lower input
// index on the left.
class KdTree2 {
 public:
  // Throws InvalidArgument on empty input, DuplicateCode on repeated codes.
  explicit KdTree2(std::vector<StatePoint> points);

  // Closest point by squared Euclidean degree distance; exact ties go to
  // the lexicographically smallest code.
  const StatePoint& nearest(double lat, double lon) const;

  std::size_t size() const { return points_.size(); }
  std::size_t depth() const;
  const std::vector<StatePoint>& points() const { return points_; }

  // Every node's left subtree is <= its key and right subtree >= its key on
  // the node's axis, and every point appears exactly once.
  bool partition_holds() const;

 private:
  struct Node {
    std::size_t point = 0;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi, int depth);
  void search(int node, double lat, double lon, std::size_t& best, double& best_d2) const;
  double key(std::size_t point, int axis) const;

  std::vector<StatePoint> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Resolves coordinates to a state under the configured metric. Euclidean
// queries use the k-d tree; haversine queries scan all anchors.
class StateLocator {
 public:
  explicit StateLocator(std::vector<StatePoint> points, DistanceMetric metric = DistanceMetric::Euclidean);

  const StatePoint& nearest(double lat, double lon) const;
  double distance_to(const StatePoint& p, double lat, double lon) const;
  DistanceMetric metric() const { return metric_; }
  const KdTree2& tree() const { return tree_; }

 private:
  KdTree2 tree_;
  DistanceMetric metric_;
};

struct StateTally {
  std::string code;
  std::size_t pos_a = 0;
  std::size_t neg_a = 0;
  std::size_t pos_b = 0;
  std::size_t neg_b = 0;
  std::size_t total_geo = 0;

  bool operator==(const StateTally&) const = default;
  StateTally& operator+=(const StateTally& other);
};

struct GeoOptions {
  // Records farther than this from their nearest anchor go to the offshore
  // counter and are excluded. Unset disables the filter.
  std::optional<double> offshore_degrees;
};

struct GeoAggregation {
  std::map<std::string, StateTally> tallies;
  std::size_t offshore = 0;
  std::size_t without_geo = 0;
};

// Candidate A is candidates[0], B is candidates[1].
GeoAggregation aggregate_state_sentiment(std::span<const corpus::TweetRecord> records,
                                         const sentiment::NBModel& model, const StateLocator& locator,
                                         std::span<const text::CandidateSpec> candidates,
                                         const GeoOptions& options = {});

struct StateCall {
  std::string code;
  std::optional<double> plus_ratio;   // nullopt when 0/0; +inf when x/0
  std::optional<double> minus_ratio;
  Winner winner = Winner::Undecided;
  std::size_t counts = 0;
};

std::optional<double> count_ratio(std::size_t numerator, std::size_t denominator);

// A iff plus > minus, B iff plus < minus; equal or any undefined ratio is
// Undecided.
Winner decide_winner(std::optional<double> plus_ratio, std::optional<double> minus_ratio);

StateCall call_state(const StateTally& tally);

// One call per state in `states`, using an all-zero tally where none exists.
std::vector<StateCall> call_all_states(std::span<const StatePoint> states,
                                       const std::map<std::string, StateTally>& tallies);

struct PredictionScore {
  std::size_t total = 0;
  std::size_t correct = 0;
  double overall = 0.0;
  std::size_t actual_a = 0;
  std::size_t correct_a = 0;
  double accuracy_a = 0.0;
  std::size_t actual_b = 0;
  std::size_t correct_b = 0;
  double accuracy_b = 0.0;
  int electoral_a = 0;
  int electoral_b = 0;
  int electoral_undecided = 0;
};

// Undecided calls count as wrong. Throws CodeMismatch unless `calls` and
// `actual` cover the same codes and every code is in `states`.
PredictionScore score_predictions(const std::map<std::string, Winner>& calls,
                                  const std::map<std::string, Winner>& actual,
                                  std::span<const StatePoint> states);

// CSV `code,plus_ratio,minus_ratio,counts,winner`; NA for undefined ratios.
std::string format_ratio(std::optional<double> ratio);
std::string calls_to_csv(std::span<const StateCall> calls);
nlohmann::json calls_to_json(std::span<const StateCall> calls);

}  // namespace trendmine::geo
