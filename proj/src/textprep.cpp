#include "textprep.hpp"

#include <algorithm>
#include <stdexcept>

#include "error.hpp"
#include "strutil.hpp"

namespace trendmine::text {

namespace {

// ASCII alphanumerics, '_' and any non-ASCII byte (UTF-8 letters stay whole).
bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0 || c == '_';
}

bool is_punct_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) != 0 && c != '_';
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

constexpr std::string_view kNegPrefix = "NOT_";

bool is_url(std::string_view chunk) {
  if (istarts_with(chunk, "www.")) return true;
  const std::size_t sep = chunk.find("://");
  if (sep == std::string_view::npos || sep == 0) return false;
  if (std::isalpha(static_cast<unsigned char>(chunk[0])) == 0) return false;
  return std::all_of(chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(sep), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '+' || c == '.' || c == '-';
  });
}

// Digits plus punctuation only, at least one digit: "2012", "3,000,000", "10%".
bool is_numeric(std::string_view chunk) {
  bool digit = false;
  for (char c : chunk) {
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digit = true;
    } else if (!is_punct_byte(c)) {
      return false;
    }
  }
  return digit;
}

std::string lower_ascii(std::string_view s) { return to_lower(s); }

}  // namespace

void validate_candidates(std::span<const CandidateSpec> candidates) {
  std::set<std::string> names;
  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (c.name.empty()) throw Error(Errc::InvalidArgument, "candidate with empty name");
    if (!names.insert(c.name).second) throw Error(Errc::InvalidArgument, "duplicate candidate " + c.name);
    if (c.aliases.empty()) throw Error(Errc::InvalidArgument, "candidate " + c.name + " has no aliases");
    for (const auto& a : c.aliases) {
      if (a.empty() || a != lower_ascii(a)) {
        throw Error(Errc::InvalidArgument, "alias '" + a + "' must be non-empty lowercase");
      }
      if (!seen.insert(a).second) throw Error(Errc::InvalidArgument, "alias '" + a + "' used twice");
    }
  }
}

std::vector<CandidateSpec> default_candidates() {
  return {{"obama", {"obama", "barack"}}, {"romney", {"romney", "mitt"}}};
}

std::vector<std::string> parse_word_list(std::string_view contents) {
  std::vector<std::string> words;
  for (std::string_view line : split(contents, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    words.push_back(to_lower(line));  // tokens are lowercased before lookup
  }
  return words;
}

std::vector<std::string> load_word_list(const std::string& path) { return parse_word_list(read_file(path)); }

std::vector<std::string> default_negation_cues() {
  return {"not",      "no",       "never",   "cannot",   "don't",   "doesn't", "didn't",
          "isn't",    "aren't",   "wasn't",  "weren't",  "won't",   "wouldn't", "can't",
          "couldn't", "shouldn't", "haven't", "hasn't",  "hadn't",  "mustn't", "needn't",
          "ain't",    "shan't",   "mightn't"};
}

std::vector<std::string> default_stop_words() {
  return {"a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
          "an",      "and",     "any",    "are",     "as",     "at",      "be",      "because",
          "been",    "before",  "being",  "below",   "between", "both",   "but",     "by",
          "can",     "cannot",  "could",  "did",     "do",     "does",    "doing",   "down",
          "during",  "each",    "few",    "for",     "from",   "further", "had",     "has",
          "have",    "having",  "he",     "her",     "here",   "hers",    "herself", "him",
          "himself", "his",     "how",    "i",       "if",     "in",      "into",    "is",
          "it",      "its",     "itself", "just",    "me",     "more",    "most",    "my",
          "myself",  "never",   "no",     "nor",     "not",    "now",     "of",      "off",
          "on",      "once",    "only",   "or",      "other",  "our",     "ours",    "ourselves",
          "out",     "over",    "own",    "same",    "she",    "should",  "so",      "some",
          "such",    "than",    "that",   "the",     "their",  "theirs",  "them",    "themselves",
          "then",    "there",   "these",  "they",    "this",   "those",   "through", "to",
          "too",     "under",   "until",  "up",      "very",   "was",     "we",      "were",
          "what",    "when",    "where",  "which",   "while",  "who",     "whom",    "why",
          "will",    "with",    "would",  "you",     "your",   "yours",   "yourself", "yourselves",
          "im",      "u",      "via",     "amp"};
}

Preprocessor::Preprocessor() : Preprocessor(default_negation_cues(), default_stop_words()) {}

Preprocessor::Preprocessor(std::vector<std::string> negation_cues, std::vector<std::string> stop_words)
    : cue_list_(std::move(negation_cues)), stop_list_(std::move(stop_words)) {
  for (auto& c : cue_list_) cues_.insert(lower_ascii(c));
  for (auto& s : stop_list_) stops_.insert(lower_ascii(s));
}

bool Preprocessor::is_negation_cue(std::string_view word) const { return cues_.contains(std::string(word)); }

bool Preprocessor::is_stop_word(std::string_view token) const {
  if (stops_.contains(std::string(token))) return true;
  if (istarts_with(token, kNegPrefix) && token.size() > kNegPrefix.size()) {
    return stops_.contains(std::string(token.substr(kNegPrefix.size())));
  }
  return false;
}

std::string Preprocessor::mark_negation(std::string_view text) const {
  std::string out;
  out.reserve(text.size() + 16);
  bool in_scope = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_word_byte(c)) {
      // A word may carry apostrophes between word characters ("don't").
      std::size_t j = i;
      while (j < text.size() &&
             (is_word_byte(text[j]) || (text[j] == '\'' && j + 1 < text.size() && is_word_byte(text[j + 1])))) {
        ++j;
      }
      const std::string_view word = text.substr(i, j - i);
      if (is_negation_cue(lower_ascii(word))) {
        in_scope = true;
      } else if (in_scope && !istarts_with(word, kNegPrefix)) {
        out += kNegPrefix;
      }
      out += word;
      i = j;
      continue;
    }
    if (is_punct_byte(c)) in_scope = false;
    out += c;
    ++i;
  }
  return out;
}

std::string Preprocessor::clean(std::string_view text) const {
  std::string out;
  out.reserve(text.size());
  for (std::string_view chunk : split_whitespace(text)) {
    if (is_url(chunk)) continue;
    if (chunk.front() == '@' || chunk.front() == '#') continue;
    if (chunk == "RT") continue;
    if (is_numeric(chunk)) continue;
    std::string kept;
    kept.reserve(chunk.size());
    for (char c : chunk) {
      if (is_punct_byte(c)) continue;
      kept += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (kept.empty()) continue;
    if (!out.empty()) out += ' ';
    out += kept;
  }
  return out;
}

TokenList Preprocessor::tokenize(std::string_view text) const {
  TokenList tokens;
  for (std::string_view piece : split_whitespace(text)) {
    std::string token = lower_ascii(piece);
    if (is_stop_word(token)) continue;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

TokenList Preprocessor::preprocess(std::string_view text) const { return tokenize(clean(mark_negation(text))); }

std::set<std::string> detect_mentions(std::string_view text, std::span<const CandidateSpec> candidates) {
  const std::string lowered = lower_ascii(text);
  std::set<std::string> found;
  for (const auto& c : candidates) {
    for (const auto& alias : c.aliases) {
      if (!alias.empty() && lowered.find(alias) != std::string::npos) {
        found.insert(c.name);
        break;
      }
    }
  }
  return found;
}

std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '#') continue;
    if (i > 0 && is_word_byte(text[i - 1])) continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_word_byte(text[j])) ++j;
    if (j > i + 1) tags.push_back("#" + lower_ascii(text.substr(i + 1, j - i - 1)));
    i = j - 1;
  }
  return tags;
}

}  // namespace trendmine::text
