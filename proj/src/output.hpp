#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace trendmine {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string& path);

struct Provenance {
  std::string version;
  std::uint64_t seed = 0;
  std::string config_hash;

  nlohmann::json to_json() const;
  std::string csv_comment() const;  // "# trendmine 1.0 seed=.. config=.."
};

inline constexpr const char* kManifestName = "manifest.json";

// Writes run outputs and keeps manifest.json in step. Entries from an
// earlier command in the same directory are kept unless overwritten.
class OutputDir {
 public:
  OutputDir(std::string dir, Provenance prov, std::string run_id, nlohmann::json window);

  // Adds "meta" to the object before writing.
  void write_json(const std::string& name, nlohmann::json body);
  // Prefixes the provenance comment line.
  void write_csv(const std::string& name, const std::string& body);
  // Written as-is (data files, models).
  void write_raw(const std::string& name, const std::string& body);

  void finish();
  const std::string& dir() const { return dir_; }
  const Provenance& provenance() const { return prov_; }

 private:
  std::string dir_;
  Provenance prov_;
  std::string run_id_;
  nlohmann::json window_;
  std::map<std::string, std::string> files_;  // name -> sha256
};

}  // namespace trendmine
