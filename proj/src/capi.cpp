#include "trendmine/trendmine.h"

#include <cstring>
#include <iostream>
#include <new>

#include "config.hpp"
#include "error.hpp"
#include "geo.hpp"
#include "pipeline.hpp"
#include "sentiment.hpp"
#include "server.hpp"
#include "strutil.hpp"

struct tm_config {
  trendmine::RunConfig cfg;
};
struct tm_model {
  trendmine::sentiment::NBModel model;
};
struct tm_geo {
  trendmine::geo::StateLocator locator;
};

namespace {

using namespace trendmine;

thread_local std::string g_last_error;

tm_status to_status(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return TM_E_INVALID_ARGUMENT;
    case Errc::MalformedRecord: return TM_E_MALFORMED_RECORD;
    case Errc::EmptyText: return TM_E_EMPTY_TEXT;
    case Errc::CoordinateOutOfRange: return TM_E_COORDINATE_OUT_OF_RANGE;
    case Errc::MissingLabelClass: return TM_E_MISSING_LABEL_CLASS;
    case Errc::DuplicateCode: return TM_E_DUPLICATE_CODE;
    case Errc::EmptyCorpus: return TM_E_EMPTY_CORPUS;
    case Errc::TopicIndexOutOfRange: return TM_E_TOPIC_INDEX_OUT_OF_RANGE;
    case Errc::SeriesTooShort: return TM_E_SERIES_TOO_SHORT;
    case Errc::EmptySample: return TM_E_EMPTY_SAMPLE;
    case Errc::NoOverlap: return TM_E_NO_OVERLAP;
    case Errc::CodeMismatch: return TM_E_CODE_MISMATCH;
    case Errc::InvalidSpec: return TM_E_INVALID_SPEC;
    case Errc::Io: return TM_E_IO;
  }
  return TM_E_INTERNAL;
}

tm_status fail(tm_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
tm_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return TM_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TM_E_INTERNAL, e.what());
  }
}

tm_status copy_out(const std::string& s, char* buf, size_t len, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || len < s.size() + 1) return fail(TM_E_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return TM_OK;
}

#define TM_CHECK_ARG(cond)                                                 \
  do {                                                                     \
    if (!(cond)) return fail(TM_E_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

const text::Preprocessor& default_prep() {
  static const text::Preprocessor p;
  return p;
}

}  // namespace

extern "C" {

const char* tm_version(void) { return kVersion; }

const char* tm_status_name(tm_status s) {
  switch (s) {
    case TM_OK: return "ok";
    case TM_E_BUFFER_TOO_SMALL: return "buffer_too_small";
    case TM_E_INTERNAL: return "internal";
    default:
      if (s > TM_OK && s <= TM_E_IO) return errc_name(static_cast<Errc>(static_cast<int>(s) - 1));
      return "unknown";
  }
}

const char* tm_last_error(void) { return g_last_error.c_str(); }

int tm_exit_code(tm_status s) {
  if (s == TM_OK) return 0;
  return s == TM_E_IO ? 2 : 1;
}

tm_status tm_config_new(tm_config** out) {
  TM_CHECK_ARG(out);
  return guarded([&] { *out = new tm_config{}; });
}

void tm_config_free(tm_config* cfg) { delete cfg; }

tm_status tm_config_set(tm_config* cfg, const char* key, const char* value) {
  TM_CHECK_ARG(cfg && key && value);
  return guarded([&] { cfg->cfg.set(key, value); });
}

tm_status tm_config_load_file(tm_config* cfg, const char* path) {
  TM_CHECK_ARG(cfg && path);
  return guarded([&] { cfg->cfg.load_file(path); });
}

tm_status tm_config_hash(const tm_config* cfg, char* buf, size_t len) {
  TM_CHECK_ARG(cfg && buf);
  std::string h;
  const tm_status s = guarded([&] { h = cfg->cfg.hash(); });
  return s == TM_OK ? copy_out(h, buf, len, nullptr) : s;
}

const char* tm_command_name(size_t index) {
  const auto& names = pipeline::commands();
  return index < names.size() ? names[index].c_str() : nullptr;
}

tm_status tm_run_command(const tm_config* cfg, const char* command) {
  TM_CHECK_ARG(cfg && command);
  return guarded([&] { pipeline::run_command(command, cfg->cfg, std::cerr); });
}

tm_status tm_serve(const char* run_dir, const char* host, int port) {
  TM_CHECK_ARG(run_dir);
  if (port < 0 || port > 65535) return fail(TM_E_INVALID_ARGUMENT, "port out of range");
  return guarded([&] { serve::serve(run_dir, port, host ? host : "0.0.0.0", std::cerr); });
}

tm_status tm_model_train_file(const char* labeled_path, tm_model** out) {
  TM_CHECK_ARG(labeled_path && out);
  return guarded([&] {
    const auto cands = text::default_candidates();
    const auto set = sentiment::load_labeled(labeled_path, default_prep(), cands);
    *out = new tm_model{sentiment::NBModel::train(set.examples)};
  });
}

tm_status tm_model_load(const char* path, tm_model** out) {
  TM_CHECK_ARG(path && out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::MalformedRecord, std::string("model is not JSON: ") + e.what());
    }
    *out = new tm_model{sentiment::NBModel::from_json(j)};
  });
}

tm_status tm_model_save(const tm_model* model, const char* path) {
  TM_CHECK_ARG(model && path);
  return guarded([&] { write_file(path, model->model.to_json().dump(2) + "\n"); });
}

void tm_model_free(tm_model* model) { delete model; }

tm_status tm_model_classify(const tm_model* model, const char* text, int* polarity) {
  TM_CHECK_ARG(model && text && polarity);
  return guarded([&] {
    const auto tokens = model->model.preprocessor().preprocess(text);
    *polarity = static_cast<int>(model->model.classify(tokens));
  });
}

tm_status tm_model_log_posterior(const tm_model* model, const char* text, double out[3]) {
  TM_CHECK_ARG(model && text && out);
  return guarded([&] {
    const auto scores = model->model.log_posterior(model->model.preprocessor().preprocess(text));
    for (int i = 0; i < 3; ++i) out[i] = scores[static_cast<std::size_t>(i)];
  });
}

tm_status tm_geo_new_default(tm_geo** out) {
  TM_CHECK_ARG(out);
  return guarded([&] { *out = new tm_geo{geo::StateLocator(geo::default_states())}; });
}

tm_status tm_geo_load(const char* states_path, tm_geo** out) {
  TM_CHECK_ARG(states_path && out);
  return guarded([&] { *out = new tm_geo{geo::StateLocator(geo::load_states(states_path))}; });
}

void tm_geo_free(tm_geo* g) { delete g; }

tm_status tm_geo_nearest(const tm_geo* g, double lat, double lon, char* code, size_t len) {
  TM_CHECK_ARG(g && code);
  std::string c;
  const tm_status s = guarded([&] { c = g->locator.nearest(lat, lon).code; });
  return s == TM_OK ? copy_out(c, code, len, nullptr) : s;
}

tm_status tm_call_state(unsigned long long pos_a, unsigned long long neg_a, unsigned long long pos_b,
                        unsigned long long neg_b, int* winner) {
  TM_CHECK_ARG(winner);
  return guarded([&] {
    geo::StateTally t{"", pos_a, neg_a, pos_b, neg_b, 0};
    switch (geo::call_state(t).winner) {
      case geo::Winner::A: *winner = TM_WINNER_A; break;
      case geo::Winner::B: *winner = TM_WINNER_B; break;
      case geo::Winner::Undecided: *winner = TM_WINNER_UNDECIDED; break;
    }
  });
}

tm_status tm_mark_negation(const char* text, char* buf, size_t len, size_t* needed) {
  TM_CHECK_ARG(text);
  std::string r;
  const tm_status s = guarded([&] { r = default_prep().mark_negation(text); });
  return s == TM_OK ? copy_out(r, buf, len, needed) : s;
}

tm_status tm_preprocess(const char* text, char* buf, size_t len, size_t* needed) {
  TM_CHECK_ARG(text);
  std::string r;
  const tm_status s = guarded([&] {
    for (const auto& t : default_prep().preprocess(text)) {
      if (!r.empty()) r += ' ';
      r += t;
    }
  });
  return s == TM_OK ? copy_out(r, buf, len, needed) : s;
}

}  // extern "C"
