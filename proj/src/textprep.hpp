#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace trendmine::text {

using TokenList = std::vector<std::string>;

struct CandidateSpec {
  std::string name;
  std::vector<std::string> aliases;  // lowercase, non-empty
};

// Throws InvalidArgument when a candidate has no aliases or two candidates
// share an alias.
void validate_candidates(std::span<const CandidateSpec> candidates);

// obama {obama, barack} and romney {romney, mitt}.
std::vector<CandidateSpec> default_candidates();

// Word lists read from files with one lowercase entry per line; blank lines
// and lines starting with '#' are ignored.
std::vector<std::string> load_word_list(const std::string& path);
std::vector<std::string> parse_word_list(std::string_view contents);

std::vector<std::string> default_negation_cues();
std::vector<std::string> default_stop_words();

// Negation marking, noise removal and tokenization with a fixed word-list
// configuration. Immutable once built; safe to share across threads.
class Preprocessor {
 public:
  Preprocessor();
  Preprocessor(std::vector<std::string> negation_cues, std::vector<std::string> stop_words);

  // Prefixes NOT_ to each word after a negation cue until the next
  // punctuation character. Cues themselves are left alone.
  std::string mark_negation(std::string_view text) const;

  // Drops URLs, @mentions, a bare RT, #hashtags and numeric tokens, deletes
  // punctuation characters ('_' excluded) and lowercases ASCII.
  std::string clean(std::string_view text) const;

  // Whitespace split, lowercase, stop-word removal. A NOT_-marked token is
  // also dropped when its unmarked form is a stop word.
  TokenList tokenize(std::string_view text) const;

  // tokenize(clean(mark_negation(text)))
  TokenList preprocess(std::string_view text) const;

  bool is_negation_cue(std::string_view lowercase_word) const;
  bool is_stop_word(std::string_view lowercase_token) const;

  const std::vector<std::string>& negation_cues() const { return cue_list_; }
  const std::vector<std::string>& stop_words() const { return stop_list_; }

 private:
  std::vector<std::string> cue_list_;
  std::vector<std::string> stop_list_;
  std::unordered_set<std::string> cues_;
  std::unordered_set<std::string> stops_;
};

// Names of candidates any of whose aliases occur case-insensitively as a
// substring of the raw text (hashtags and handles included).
std::set<std::string> detect_mentions(std::string_view text, std::span<const CandidateSpec> candidates);

// Raw-text hashtags: '#' at a word boundary followed by word characters,
// lowercased, '#' kept. Embedded punctuation ends the tag.
std::vector<std::string> extract_hashtags(std::string_view text);

}  // namespace trendmine::text
