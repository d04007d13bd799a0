// Copyright 2026 The BioCS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sparse per-token feature templates for the sequence tagger.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/text_ingest.hpp"

namespace biocs {

// Identifier of the template set below; echoed into model files.
inline constexpr const char* kFeatureTemplateSet = "biocs-v1";

using FeatureVector = std::vector<std::string>;

// Case-insensitive set of concept surfaces. Multi-word surfaces are matched
// token by token against a sentence.
class Lexicon {
 public:
  Lexicon() = default;

  void add(std::string_view surface) {
    std::string key = to_lower(trim(surface));
    if (key.empty()) return;
    std::vector<std::string> words;
    for (const auto& t : tokenize(key)) words.push_back(t.text);
    if (words.empty()) return;
    surfaces_.insert(key);
    by_first_[words.front()].insert(words);
  }

  bool contains(std::string_view surface) const {
    return surfaces_.count(to_lower(trim(surface))) > 0;
  }

  size_t size() const { return surfaces_.size(); }
  bool empty() const { return surfaces_.empty(); }

  // Per-token flag: token lies inside some lexicon match.
  std::vector<bool> mark(const Sentence& s) const {
    const size_t n = s.tokens.size();
    std::vector<bool> hit(n, false);
    if (empty()) return hit;
    std::vector<std::string> lower(n);
    for (size_t i = 0; i < n; ++i) lower[i] = to_lower(s.tokens[i].text);
    for (size_t i = 0; i < n; ++i) {
      auto it = by_first_.find(lower[i]);
      if (it == by_first_.end()) continue;
      for (const auto& words : it->second) {
        if (i + words.size() > n) continue;
        bool match = true;
        for (size_t k = 1; k < words.size() && match; ++k) match = lower[i + k] == words[k];
        if (!match) continue;
        for (size_t k = 0; k < words.size(); ++k) hit[i + k] = true;
      }
    }
    return hit;
  }

  static Lexicon load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon " + path.string());
    Lexicon lex;
    std::string line;
    while (std::getline(in, line)) {
      auto t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      lex.add(t);
    }
    return lex;
  }

 private:
  std::set<std::string> surfaces_;
  std::map<std::string, std::set<std::vector<std::string>>> by_first_;
};

// Uppercase -> 'A', other letters -> 'a', digits -> '0', anything else kept.
// Runs of one class longer than two are cut to two characters, so
// "TRPV5/V6" becomes "AA0/A0".
inline std::string word_shape(std::string_view word) {
  std::u32string out;
  for (char32_t c : utf8::decode(word)) {
    char32_t cls = c;
    if (is_upper(c)) {
      cls = U'A';
    } else if (is_digit(c)) {
      cls = U'0';
    } else if (is_alpha(c)) {
      cls = U'a';
    }
    const size_t n = out.size();
    if (n >= 2 && out[n - 1] == cls && out[n - 2] == cls) continue;
    out.push_back(cls);
  }
  return utf8::encode(out);
}

namespace detail {

inline std::string window_word(const Sentence& s, long i) {
  if (i < 0) return "<BOS>";
  if (i >= static_cast<long>(s.tokens.size())) return "<EOS>";
  return to_lower(s.tokens[i].text);
}

}  // namespace detail

inline std::vector<FeatureVector> extract(const Sentence& s, const Lexicon* lexicon = nullptr) {
  const size_t n = s.tokens.size();
  std::vector<FeatureVector> out(n);
  const std::vector<bool> lex_hits = lexicon ? lexicon->mark(s) : std::vector<bool>(n, false);

  for (size_t i = 0; i < n; ++i) {
    const std::string& raw = s.tokens[i].text;
    const std::string lower = to_lower(raw);
    const std::u32string cps = utf8::decode(lower);
    const std::u32string raw_cps = utf8::decode(raw);
    FeatureVector f;
    f.push_back("bias");
    f.push_back("w0=" + lower);
    f.push_back("word=" + raw);
    f.push_back("shape=" + word_shape(raw));
    for (size_t k = 1; k <= 3 && k <= cps.size(); ++k) {
      f.push_back("pre" + std::to_string(k) + "=" + utf8::encode(cps.substr(0, k)));
    }
    for (size_t k = 1; k <= 3 && k <= cps.size(); ++k) {
      f.push_back("suf" + std::to_string(k) + "=" + utf8::encode(cps.substr(cps.size() - k)));
    }

    bool any_alpha = false, all_upper = true, has_digit = false;
    for (char32_t c : raw_cps) {
      if (is_alpha(c)) {
        any_alpha = true;
        if (!is_upper(c)) all_upper = false;
      }
      if (is_digit(c)) has_digit = true;
    }
    if (!raw_cps.empty() && is_upper(raw_cps[0])) f.push_back("init-cap=1");
    if (any_alpha && all_upper) f.push_back("all-caps=1");
    if (has_digit) f.push_back("has-digit=1");
    if (raw.find('/') != std::string::npos) f.push_back("has-slash=1");
    if (raw.find('-') != std::string::npos) f.push_back("has-hyphen=1");

    const long li = static_cast<long>(i);
    f.push_back("w-2=" + detail::window_word(s, li - 2));
    f.push_back("w-1=" + detail::window_word(s, li - 1));
    f.push_back("w+1=" + detail::window_word(s, li + 1));
    f.push_back("w+2=" + detail::window_word(s, li + 2));
    f.push_back("w-1w0=" + detail::window_word(s, li - 1) + "|" + lower);
    f.push_back("w0w+1=" + lower + "|" + detail::window_word(s, li + 1));

    if (lex_hits[i]) f.push_back("lex=1");
    if (s.pos.size() == n) f.push_back("pos=" + s.pos[i]);

    // Templates are distinct by prefix; drop accidental repeats keeping order.
    std::unordered_set<std::string> seen;
    FeatureVector unique;
    unique.reserve(f.size());
    for (auto& x : f) {
      if (seen.insert(x).second) unique.push_back(std::move(x));
    }
    out[i] = std::move(unique);
  }
  return out;
}

}  // namespace biocs
