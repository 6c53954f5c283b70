#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "error.hpp"
#include "output.hpp"
#include "server.hpp"
#include "strutil.hpp"

using namespace trendmine;
using namespace trendmine::serve;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Two runs under one root, written through OutputDir like the pipeline does.
fs::path make_runs() {
  const auto root = fs::temp_directory_path() / ("tm_serve_test_" + std::to_string(::getpid()));
  fs::remove_all(root);
  for (const char* id : {"alpha", "beta"}) {
    OutputDir o((root / id).string(), Provenance{"1.0", 1, "h"}, id, nullptr);
    o.write_json("trends_daily.json", {{"daily_frequency", {{"points", json::array()}}}, {"run", id}});
    o.write_json("geo_calls.json", {{"calls", json::array({{{"code", "AA"}, {"winner", "A"}}})}});
    o.write_json("sentiment.json", {{"totals", {{"run", id}}}});
    o.finish();
  }
  return root;
}

}  // namespace

TEST_CASE("store and dispatch") {
  const auto root = make_runs();
  const ArtifactStore store(root.string());
  CHECK(store.run_count() == 2);
  CHECK(store.find_run("alpha"));
  CHECK_FALSE(store.find_run("gamma"));
  CHECK_FALSE(store.find_run(".."));

  auto r = handle(store, "/healthz");
  CHECK(r.status == 200);
  CHECK(json::parse(r.body)["runs"] == 2);

  r = handle(store, "/runs/beta/trends/daily");
  CHECK(r.status == 200);
  CHECK(r.content_type == "application/json");
  CHECK(json::parse(r.body)["run"] == "beta");
  CHECK(r.body == read_file((root / "beta/trends_daily.json").string()));

  r = handle(store, "/runs/alpha/geo/calls");
  CHECK(r.status == 200);
  const auto calls = json::parse(r.body);
  REQUIRE(calls.is_array());
  CHECK(calls[0]["code"] == "AA");

  CHECK(handle(store, "/runs/gamma/sentiment").status == 404);
  CHECK(handle(store, "/runs/alpha/topics").status == 404);  // not produced
  CHECK(handle(store, "/runs/alpha/nothing").status == 404);
  CHECK(handle(store, "/").status == 404);
  CHECK(handle(store, "/runs/alpha").status == 404);

  // a file changed after the run no longer matches its checksum
  write_file((root / "alpha/sentiment.json").string(), "{}");
  CHECK(handle(store, "/runs/alpha/sentiment").status == 500);
  fs::remove(root / "alpha/trends_daily.json");
  CHECK(handle(store, "/runs/alpha/trends/daily").status == 500);
  fs::remove_all(root);
}

TEST_CASE("single-run root") {
  const auto root = make_runs();
  const ArtifactStore store((root / "beta").string());
  CHECK(store.run_count() == 1);
  CHECK(handle(store, "/runs/beta/sentiment").status == 200);
  CHECK(handle(store, "/runs/alpha/sentiment").status == 404);
  fs::remove_all(root);
}

TEST_CASE("serve refuses a directory without runs") {
  const auto empty = fs::temp_directory_path() / "tm_serve_empty";
  fs::create_directories(empty);
  std::ostringstream log;
  CHECK_THROWS_AS(serve::serve(empty.string(), 0, "127.0.0.1", log), Error);
  CHECK_THROWS_AS(serve::serve((empty / "missing").string(), 0, "127.0.0.1", log), Error);
}

TEST_CASE("over HTTP") {
  const auto root = make_runs();
  const int port = 20000 + static_cast<int>(::getpid() % 20000);
  std::thread([root, port] {
    std::ostringstream log;
    try {
      serve::serve(root.string(), port, "127.0.0.1", log);
    } catch (...) {
    }
  }).detach();

  httplib::Client cli("127.0.0.1", port);
  cli.set_connection_timeout(1);
  httplib::Result res;
  for (int i = 0; i < 50 && !(res = cli.Get("/healthz")); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  REQUIRE(res);
  CHECK(res->status == 200);
  res = cli.Get("/runs/alpha/geo/calls");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "application/json");
  CHECK(json::parse(res->body).size() == 1);
  res = cli.Get("/runs/zeta/geo/calls");
  REQUIRE(res);
  CHECK(res->status == 404);
  // read-only: writes are not routed
  res = cli.Post("/runs/alpha/sentiment", "{}", "application/json");
  REQUIRE(res);
  CHECK(res->status >= 400);
}
