#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "error.hpp"
#include "output.hpp"
#include "strutil.hpp"

namespace trendmine {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(Errc::InvalidArgument, "bad value for " + key + ": '" + value + "'");
}

template <typename T>
T number(const std::string& key, const std::string& value) {
  auto v = parse_number<T>(value);
  if (!v) bad(key, value);
  return *v;
}

std::size_t count(const std::string& key, const std::string& value) {
  auto v = parse_number<long long>(value);
  if (!v || *v < 0) bad(key, value);
  return static_cast<std::size_t>(*v);
}

Date date(const std::string& key, const std::string& value) {
  auto d = parse_date(trim(value));
  if (!d) bad(key, value);
  return *d;
}

std::string unquote(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

nlohmann::json input_checksum(const std::string& path) {
  if (path.empty()) return nullptr;
  return sha256_file(path);
}

}  // namespace

std::vector<text::CandidateSpec> parse_candidates(const std::string& spec) {
  // name=alias,alias;name=alias
  std::vector<text::CandidateSpec> out;
  for (auto part : split(spec, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    text::CandidateSpec c;
    c.name = std::string(trim(part.substr(0, eq)));
    if (eq != std::string_view::npos) {
      for (auto a : split(part.substr(eq + 1), ',')) {
        if (!trim(a).empty()) c.aliases.push_back(to_lower(trim(a)));
      }
    }
    if (c.aliases.empty()) c.aliases.push_back(to_lower(c.name));
    out.push_back(std::move(c));
  }
  text::validate_candidates(out);
  return out;
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = unquote(raw_value);
  if (key == "in") in = value;
  else if (key == "polls") polls = value;
  else if (key == "states") states = value;
  else if (key == "labeled") labeled = value;
  else if (key == "results") results = value;
  else if (key == "stopwords") stopwords = value;
  else if (key == "negations") negations = value;
  else if (key == "first" || key == "first_day") first_day = value.empty() ? std::nullopt : std::optional(date(key, value));
  else if (key == "last" || key == "last_day") last_day = value.empty() ? std::nullopt : std::optional(date(key, value));
  else if (key == "offset_minutes") offset_minutes = number<int>(key, value);
  else if (key == "seed") seed = value.empty() ? std::nullopt : std::optional(number<std::uint64_t>(key, value));
  else if (key == "sample_size") sample_size = count(key, value);
  else if (key == "out") out = value;
  else if (key == "run_id") run_id = value;
  else if (key == "format") {
    const std::string f = to_lower(value);
    if (f == "csv") format = TableFormat::Csv;
    else if (f == "json") format = TableFormat::Json;
    else bad(key, value);
  } else if (key == "top_n") top_n = count(key, value);
  else if (key == "min_prominence") min_prominence = number<double>(key, value);
  else if (key == "candidates") candidates = parse_candidates(value);
  else if (key == "k") k = number<int>(key, value);
  else if (key == "iters") iters = number<int>(key, value);
  else if (key == "alpha") alpha = value.empty() ? std::nullopt : std::optional(number<double>(key, value));
  else if (key == "beta") beta = number<double>(key, value);
  else if (key == "top_words") top_words = number<int>(key, value);
  else if (key == "min_count") min_count = number<int>(key, value);
  else if (key == "geo_per_state") geo_per_state = count(key, value);
  else if (key == "labeled_rows") labeled_rows = count(key, value);
  else if (key == "base_volume") base_volume = count(key, value);
  else if (key == "port") port = number<int>(key, value);
  else throw Error(Errc::InvalidArgument, "unknown config key '" + raw_key + "'");
}

void RunConfig::load_file(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    if (!std::filesystem::exists(path)) throw Error(Errc::Io, "cannot read config " + path);
    throw Error(Errc::InvalidArgument, std::string("config: ") + e.what());
  }
  // Relative input paths are taken relative to the config file.
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto apply = [&](const std::string& key, const std::string& value) {
    static const char* path_keys[] = {"in", "polls", "states", "labeled", "results", "stopwords", "negations"};
    std::string v = unquote(value);
    const bool is_path = std::find(std::begin(path_keys), std::end(path_keys), key) != std::end(path_keys);
    if (is_path && !v.empty() && std::filesystem::path(v).is_relative() && !base.empty()) v = (base / v).string();
    set(key, v);
  };
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      apply(name, node.data());
      continue;
    }
    if (name == "candidates") {
      std::string spec;
      for (const auto& [cand, aliases] : node) spec += cand + "=" + unquote(aliases.data()) + ";";
      set("candidates", spec);
      continue;
    }
    for (const auto& [key, leaf] : node) apply(key, leaf.data());
  }
}

std::uint64_t RunConfig::effective_seed() const {
  if (seed) return *seed;
  if (const char* env = std::getenv(kSeedEnv)) {
    if (auto v = parse_number<std::uint64_t>(env)) return *v;
    throw Error(Errc::InvalidArgument, std::string(kSeedEnv) + " is not an unsigned integer");
  }
  return 1;
}

std::string RunConfig::effective_run_id() const {
  if (!run_id.empty()) return run_id;
  auto name = std::filesystem::path(out).lexically_normal().filename().string();
  if (name.empty() || name == ".") name = std::filesystem::path(out).lexically_normal().parent_path().filename().string();
  return name.empty() ? "run" : name;
}

nlohmann::json RunConfig::canonical() const {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : candidates) cands.push_back({{"name", c.name}, {"aliases", c.aliases}});
  return {{"version", kVersion},
          {"inputs",
           {{"in", input_checksum(in)},
            {"polls", input_checksum(polls)},
            {"states", input_checksum(states)},
            {"labeled", input_checksum(labeled)},
            {"results", input_checksum(results)},
            {"stopwords", input_checksum(stopwords)},
            {"negations", input_checksum(negations)}}},
          {"window",
           {{"first", first_day ? nlohmann::json(format_date(*first_day)) : nlohmann::json(nullptr)},
            {"last", last_day ? nlohmann::json(format_date(*last_day)) : nlohmann::json(nullptr)},
            {"offset_minutes", offset_minutes}}},
          {"seed", effective_seed()},
          {"sample_size", sample_size},
          {"format", format == TableFormat::Csv ? "csv" : "json"},
          {"top_n", top_n},
          {"min_prominence", min_prominence},
          {"candidates", cands},
          {"lda",
           {{"k", k},
            {"iters", iters},
            {"alpha", alpha ? nlohmann::json(*alpha) : nlohmann::json(nullptr)},
            {"beta", beta},
            {"top_words", top_words},
            {"min_count", min_count}}},
          {"synth", {{"geo_per_state", geo_per_state}, {"labeled_rows", labeled_rows}, {"base_volume", base_volume}}}};
}

std::string RunConfig::hash() const { return sha256_hex(canonical().dump()); }

}  // namespace trendmine
