#include "server.hpp"

#include <filesystem>
#include <map>

#include <httplib.h>
#include <json.hpp>

#include "error.hpp"
#include "output.hpp"
#include "strutil.hpp"

namespace trendmine::serve {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::map<std::string, std::string>& resources() {
  static const std::map<std::string, std::string> r = {{"trends/daily", "trends_daily.json"},
                                                       {"sentiment", "sentiment.json"},
                                                       {"geo/calls", "geo_calls.json"},
                                                       {"topics", "topics.json"}};
  return r;
}

std::optional<json> read_manifest(const fs::path& dir) {
  const fs::path m = dir / kManifestName;
  if (!fs::is_regular_file(m)) return std::nullopt;
  try {
    return json::parse(read_file(m.string()));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Response error(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump() + "\n"};
}

}  // namespace

ArtifactStore::ArtifactStore(std::string root) : root_(std::move(root)) {}

std::optional<std::string> ArtifactStore::find_run(const std::string& id) const {
  if (id.empty() || id.find('/') != std::string::npos || id == "." || id == "..") return std::nullopt;
  if (auto m = read_manifest(root_)) {
    if (m->value("run_id", "") == id) return root_;
    return std::nullopt;
  }
  const fs::path dir = fs::path(root_) / id;
  if (auto m = read_manifest(dir); m && m->value("run_id", "") == id) return dir.string();
  return std::nullopt;
}

std::size_t ArtifactStore::run_count() const {
  if (read_manifest(root_)) return 1;
  std::size_t n = 0;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(root_, ec)) {
    if (e.is_directory() && read_manifest(e.path())) ++n;
  }
  return n;
}

Response handle(const ArtifactStore& store, const std::string& path) {
  if (path == "/healthz") return {200, json{{"status", "ok"}, {"runs", store.run_count()}}.dump() + "\n"};
  constexpr std::string_view prefix = "/runs/";
  if (path.rfind(prefix, 0) != 0) return error(404, "not found");
  const std::string rest = path.substr(prefix.size());
  const auto slash = rest.find('/');
  if (slash == std::string::npos) return error(404, "not found");
  const std::string id = rest.substr(0, slash);
  const std::string resource = rest.substr(slash + 1);

  const auto dir = store.find_run(id);
  if (!dir) return error(404, "unknown run '" + id + "'");
  auto it = resources().find(resource);
  if (it == resources().end()) return error(404, "unknown resource '" + resource + "'");
  const auto manifest = read_manifest(*dir);
  const std::string& file = it->second;
  if (!manifest || !manifest->contains("files") || !manifest->at("files").contains(file)) {
    return error(404, "run '" + id + "' has no " + resource);
  }
  std::string body;
  try {
    body = read_file((fs::path(*dir) / file).string());
  } catch (const Error&) {
    return error(500, file + " listed in manifest but unreadable");
  }
  if (sha256_hex(body) != manifest->at("files").at(file).value("sha256", "")) {
    return error(500, file + " checksum mismatch");
  }
  if (resource == "geo/calls") {
    // The endpoint serves the bare array of calls.
    try {
      return {200, json::parse(body).at("calls").dump(2) + "\n"};
    } catch (const json::exception&) {
      return error(500, file + " is malformed");
    }
  }
  return {200, body};
}

void serve(const std::string& root, int port, const std::string& host, std::ostream& log) {
  if (!fs::is_directory(root)) throw Error(Errc::Io, "no such run directory: " + root);
  const ArtifactStore store(root);
  if (store.run_count() == 0) throw Error(Errc::Io, root + " holds no manifest.json");
  httplib::Server svr;
  svr.Get(R"(/.*)", [&](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(store, req.path);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  log << "serve: " << root << " on " << host << ":" << port << "\n";
  if (!svr.listen(host, port)) throw Error(Errc::Io, "cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace trendmine::serve
