#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "config.hpp"
#include "error.hpp"
#include "output.hpp"
#include "pipeline.hpp"
#include "strutil.hpp"

using namespace trendmine;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("tm_config_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

RunConfig small_run(const fs::path& dir) {
  RunConfig c;
  c.seed = 11;
  c.base_volume = 60;
  c.geo_per_state = 12;
  c.labeled_rows = 90;
  c.sample_size = 200;
  c.k = 2;
  c.iters = 15;
  c.out = (dir / "synth").string();
  return c;
}

}  // namespace

TEST_CASE("set: keys, aliases and bad values") {
  RunConfig c;
  c.set("sample-size", "50");
  c.set("sample_size", "60");
  CHECK(c.sample_size == 60);
  c.set("first", "2012-10-01");
  CHECK(format_date(*c.first_day) == "2012-10-01");
  c.set("format", "json");
  CHECK(c.format == TableFormat::Json);
  c.set("candidates", "a=x,Y;b=z");
  REQUIRE(c.candidates.size() == 2);
  CHECK(c.candidates[0].aliases == std::vector<std::string>{"x", "y"});
  CHECK(error_of([&] { c.set("bogus", "1"); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { c.set("k", "five"); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { c.set("first", "2012-13-01"); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { c.set("sample-size", "-3"); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { c.set("candidates", "a=x;b=x"); }) == Errc::InvalidArgument);
}

TEST_CASE("seed precedence: explicit, then environment, then 1") {
  RunConfig c;
  ::unsetenv(kSeedEnv);
  CHECK(c.effective_seed() == 1);
  ::setenv(kSeedEnv, "77", 1);
  CHECK(c.effective_seed() == 77);
  c.seed = 5;
  CHECK(c.effective_seed() == 5);
  c.seed.reset();
  ::setenv(kSeedEnv, "x", 1);
  CHECK(error_of([&] { (void)c.effective_seed(); }) == Errc::InvalidArgument);
  ::unsetenv(kSeedEnv);
}

TEST_CASE("config file: sections, comments, relative paths, candidates") {
  const auto dir = scratch("file");
  write_file((dir / "c.ini").string(),
             "# comment\n[input]\nin = data/t.tsv\n; other comment\n[run]\nseed = 9\nsample_size = 5\n"
             "[candidates]\nalpha = al, ally\nbeta = be\n");
  RunConfig c;
  c.load_file((dir / "c.ini").string());
  CHECK(c.in == (dir / "data/t.tsv").string());
  CHECK(c.seed == 9u);
  CHECK(c.sample_size == 5);
  REQUIRE(c.candidates.size() == 2);
  CHECK(c.candidates[0].name == "alpha");
  CHECK(c.candidates[0].aliases == std::vector<std::string>{"al", "ally"});
  write_file((dir / "bad.ini").string(), "[run]\nwhatever = 1\n");
  CHECK(error_of([&] { RunConfig().load_file((dir / "bad.ini").string()); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { RunConfig().load_file((dir / "missing.ini").string()); }) == Errc::Io);
}

TEST_CASE("the shipped sample config parses") {
  RunConfig c;
  c.load_file(TM_SOURCE_DIR "/config/run.toml");
  CHECK(c.seed == 42u);
  CHECK(c.effective_run_id() == "r1");
  CHECK(c.k == 5);
}

TEST_CASE("hash: stable, sensitive to settings and input content, blind to out") {
  const auto dir = scratch("hash");
  write_file((dir / "in.tsv").string(), "a");
  RunConfig a;
  a.seed = 1;
  a.in = (dir / "in.tsv").string();
  RunConfig b = a;
  CHECK(a.hash() == b.hash());
  b.out = "elsewhere";
  b.port = 1;
  CHECK(a.hash() == b.hash());
  b.k = 7;
  CHECK(a.hash() != b.hash());
  const auto before = a.hash();
  write_file((dir / "in.tsv").string(), "b");
  CHECK(a.hash() != before);
  CHECK(a.hash().size() == 64);
}

TEST_CASE("run id defaults to the output directory name") {
  RunConfig c;
  c.out = "runs/alpha/";
  CHECK(c.effective_run_id() == "alpha");
  c.run_id = "x";
  CHECK(c.effective_run_id() == "x");
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output dir: provenance and manifest") {
  const auto dir = scratch("out");
  Provenance p{kVersion, 3, "abc"};
  {
    OutputDir o(dir.string(), p, "r", {{"first_day", "2012-10-01"}});
    o.write_json("a.json", {{"x", 1}});
    o.write_csv("b.csv", "h\n1\n");
    o.finish();
  }
  const auto j = nlohmann::json::parse(read_file((dir / "a.json").string()));
  CHECK(j["meta"]["seed"] == 3);
  CHECK(j["meta"]["config_hash"] == "abc");
  CHECK(read_file((dir / "b.csv").string()).rfind("# trendmine 1.0 seed=3 config=abc\n", 0) == 0);
  {
    OutputDir o(dir.string(), p, "r", nullptr);
    o.write_raw("c.txt", "c");
    o.finish();
  }
  const auto m = nlohmann::json::parse(read_file((dir / kManifestName).string()));
  CHECK(m["run_id"] == "r");
  for (const char* f : {"a.json", "b.csv", "c.txt"}) {
    REQUIRE(m["files"].contains(f));
    CHECK(m["files"][f]["sha256"] == sha256_file((dir / f).string()));
  }
}

TEST_CASE("pipeline: synth then report") {
  const auto dir = scratch("pipe");
  auto c = small_run(dir);
  std::ostringstream log;
  pipeline::run_command("synth", c, log);
  for (const char* f : {"tweets.tsv", "polls.csv", "labeled.tsv", "truth.json", "manifest.json"})
    CHECK(fs::exists(dir / "synth" / f));

  c.in = (dir / "synth/tweets.tsv").string();
  c.polls = (dir / "synth/polls.csv").string();
  c.labeled = (dir / "synth/labeled.tsv").string();
  c.out = (dir / "run").string();
  pipeline::run_command("report", c, log);
  for (const char* f : {"model.json", "trends_daily.json", "sentiment.json", "geo_calls.json", "topics.json",
                        "report.json", "daily_frequency.csv", "peaks.csv", "geo_calls.csv"}) {
    INFO(f);
    CHECK(fs::exists(dir / "run" / f));
  }
  const auto calls = nlohmann::json::parse(read_file((dir / "run/geo_calls.json").string()));
  CHECK(calls["calls"].size() == 51);
  const auto daily = nlohmann::json::parse(read_file((dir / "run/trends_daily.json").string()));
  CHECK(daily["peaks"].size() >= 4);
  CHECK_FALSE(log.str().empty());

  // json mode skips the CSV tables
  c.out = (dir / "json").string();
  c.format = TableFormat::Json;
  pipeline::run_command("trends", c, log);
  CHECK(fs::exists(dir / "json/hashtags.json"));
  CHECK_FALSE(fs::exists(dir / "json/daily_frequency.csv"));
}

TEST_CASE("pipeline: error classes") {
  const auto dir = scratch("err");
  RunConfig c;
  c.out = (dir / "o").string();
  std::ostringstream log;
  c.in = (dir / "nope.tsv").string();
  c.labeled = (dir / "nope.tsv").string();
  CHECK(error_of([&] { pipeline::run_command("trends", c, log); }) == Errc::Io);
  CHECK(pipeline::exit_code(Errc::Io) == 2);
  CHECK(pipeline::exit_code(Errc::InvalidArgument) == 1);
  CHECK(error_of([&] { pipeline::run_command("nonsense", c, log); }) == Errc::InvalidArgument);
  RunConfig empty;
  empty.out = (dir / "o2").string();
  CHECK(error_of([&] { pipeline::run_command("train", empty, log); }) == Errc::InvalidArgument);
}
