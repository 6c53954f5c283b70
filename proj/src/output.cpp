#include "output.hpp"

#include <filesystem>
#include <memory>

#include <openssl/evp.h>

#include "error.hpp"
#include "strutil.hpp"

namespace trendmine {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

nlohmann::json Provenance::to_json() const {
  return {{"version", version}, {"seed", seed}, {"config_hash", config_hash}};
}

std::string Provenance::csv_comment() const {
  return "# trendmine " + version + " seed=" + std::to_string(seed) + " config=" + config_hash + "\n";
}

OutputDir::OutputDir(std::string dir, Provenance prov, std::string run_id, nlohmann::json window)
    : dir_(std::move(dir)), prov_(std::move(prov)), run_id_(std::move(run_id)), window_(std::move(window)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(Errc::Io, "cannot create output directory " + dir_ + ": " + ec.message());
  const std::string manifest = dir_ + "/" + kManifestName;
  if (std::filesystem::exists(manifest)) {
    try {
      auto old = nlohmann::json::parse(read_file(manifest));
      for (auto& [name, entry] : old.at("files").items()) {
        if (std::filesystem::exists(dir_ + "/" + name)) files_[name] = entry.at("sha256").get<std::string>();
      }
    } catch (const nlohmann::json::exception&) {
      // unreadable manifest: start over
    }
  }
}

void OutputDir::write_json(const std::string& name, nlohmann::json body) {
  body["meta"] = prov_.to_json();
  write_raw(name, body.dump(2) + "\n");
}

void OutputDir::write_csv(const std::string& name, const std::string& body) {
  write_raw(name, prov_.csv_comment() + body);
}

void OutputDir::write_raw(const std::string& name, const std::string& body) {
  write_file(dir_ + "/" + name, body);
  files_[name] = sha256_hex(body);
}

void OutputDir::finish() {
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, sum] : files_) files[name] = {{"sha256", sum}};
  nlohmann::json m = {{"run_id", run_id_}, {"meta", prov_.to_json()}, {"window", window_}, {"files", files}};
  write_file(dir_ + "/" + kManifestName, m.dump(2) + "\n");
}

}  // namespace trendmine
