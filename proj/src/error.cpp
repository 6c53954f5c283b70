#include "error.hpp"

namespace trendmine {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::EmptyText: return "EmptyText";
    case Errc::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case Errc::MissingLabelClass: return "MissingLabelClass";
    case Errc::DuplicateCode: return "DuplicateCode";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::TopicIndexOutOfRange: return "TopicIndexOutOfRange";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::EmptySample: return "EmptySample";
    case Errc::NoOverlap: return "NoOverlap";
    case Errc::CodeMismatch: return "CodeMismatch";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace trendmine
