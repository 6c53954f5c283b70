#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace trendmine::serve {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Read-only view over run directories. `root` is either one run (it holds
// manifest.json) or a directory of runs, one per subdirectory.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::string root);

  // Directory of the run with this id, if any.
  std::optional<std::string> find_run(const std::string& id) const;
  std::size_t run_count() const;

 private:
  std::string root_;
};

// GET dispatch, independent of the socket layer.
Response handle(const ArtifactStore& store, const std::string& path);

// Blocks until the server stops. Throws Error(Io) when the port can't be bound.
void serve(const std::string& root, int port, const std::string& host, std::ostream& log);

}  // namespace trendmine::serve
