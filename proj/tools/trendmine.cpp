// trendmine command line driver. Talks to the library only through the C API.
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trendmine/trendmine.h"

namespace {

struct Flag {
  const char* name;  // long flag, also the config key
  const char* help;
};

const Flag kFlags[] = {
    {"in", "tweet corpus (.tsv or .jsonl)"},
    {"polls", "poll CSV"},
    {"states", "state centroid CSV (default: built-in 51)"},
    {"labeled", "labeled examples TSV: text, target, label"},
    {"results", "actual winners CSV code,winner for scoring geo calls"},
    {"stopwords", "stop-word list file"},
    {"negations", "negation cue list file"},
    {"out", "output directory"},
    {"seed", "random seed (falls back to $TRENDMINE_SEED)"},
    {"sample-size", "records sampled per day (default 10000)"},
    {"first", "first day of the window, YYYY-MM-DD"},
    {"last", "last day of the window, YYYY-MM-DD"},
    {"offset-minutes", "day boundary offset from UTC in minutes (default -480)"},
    {"candidates", "name=alias,alias;name=alias"},
    {"k", "LDA topics (default 5)"},
    {"iters", "Gibbs sweeps (default 1000)"},
    {"alpha", "LDA alpha (default 50/k)"},
    {"beta", "LDA beta (default 0.01)"},
    {"top-n", "histogram bins kept (default 20)"},
    {"format", "table format: csv or json"},
    {"run-id", "run id recorded in the manifest"},
    {"geo-per-state", "synth: geo records per state"},
    {"labeled-rows", "synth: labeled examples"},
    {"base-volume", "synth: records per ordinary day"},
};

const std::map<std::string, std::string> kAbout = {
    {"synth", "write a seeded synthetic scenario: tweets, polls, labeled set, truth"},
    {"train", "train the sentiment model from --labeled"},
    {"eval", "held-out accuracy of the sentiment model on --labeled"},
    {"trends", "daily volume, peaks, mention shares, hashtag and source histograms"},
    {"sentiment-trend", "daily candidate sentiment, Twitter leader, poll agreement"},
    {"geo", "per-state sentiment tallies and ratio-rule state calls"},
    {"topics", "LDA topics over the daily samples"},
    {"report", "all analyses plus report.json"},
};

int report(tm_status s) {
  if (s != TM_OK) std::fprintf(stderr, "trendmine: %s: %s\n", tm_status_name(s), tm_last_error());
  return tm_exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trendmine: election tweet analytics"};
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::string config_path;
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string run_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "sectioned key = value config file");
    for (const auto& f : kFlags) sub->add_option(std::string("--") + f.name, values[f.name], f.help);
    sub->get_option("--format")->check(CLI::IsMember({"csv", "json"}));
  };

  std::vector<CLI::App*> batch;
  for (size_t i = 0; const char* name = tm_command_name(i); ++i) {
    auto* sub = app.add_subcommand(name, kAbout.count(name) ? kAbout.at(name) : "");
    add_common(sub);
    batch.push_back(sub);
  }
  auto* serve = app.add_subcommand("serve", "serve a finished run directory read-only over HTTP");
  serve->add_option("dir", run_dir, "run directory (default: --out)");
  serve->add_option("--out", run_dir, "run directory");
  serve->add_option("--port", port, "port (default 8080)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "trendmine: " << e.what() << "\n\n";
    // usage for the subcommand that failed, else the top level
    const CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands()) failed = sub;
    std::cerr << failed->help();
    return 1;
  }

  if (serve->parsed()) {
    if (run_dir.empty()) run_dir = "out";
    return report(tm_serve(run_dir.c_str(), host.c_str(), port));
  }

  tm_config* raw = nullptr;
  if (tm_status s = tm_config_new(&raw); s != TM_OK) return report(s);
  std::unique_ptr<tm_config, decltype(&tm_config_free)> cfg(raw, tm_config_free);

  for (auto* sub : batch) {
    if (!sub->parsed()) continue;
    // file first, then flags: the command line wins
    if (sub->count("--config") > 0) {
      if (tm_status s = tm_config_load_file(cfg.get(), config_path.c_str()); s != TM_OK) return report(s);
    }
    for (const auto& f : kFlags) {
      if (sub->count(std::string("--") + f.name) == 0) continue;
      if (tm_status s = tm_config_set(cfg.get(), f.name, values[f.name].c_str()); s != TM_OK) return report(s);
    }
    return report(tm_run_command(cfg.get(), sub->get_name().c_str()));
  }
  return 1;
}
