#pragma once

#include <stdexcept>
#include <string>

namespace trendmine {

// Error kinds surfaced by the core. The C API maps each one onto a tm_status.
enum class Errc {
  InvalidArgument,
  MalformedRecord,
  EmptyText,
  CoordinateOutOfRange,
  MissingLabelClass,
  DuplicateCode,
  EmptyCorpus,
  TopicIndexOutOfRange,
  SeriesTooShort,
  EmptySample,
  NoOverlap,
  CodeMismatch,
  InvalidSpec,
  Io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace trendmine
