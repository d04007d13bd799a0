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

// Corpus reading, rule-based sentence splitting and tokenization.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/parallel.hpp"
#include "json.hpp"

namespace biocs {

struct Document {
  std::string doc_id;
  std::string text;
};

// Offsets count code points within the owning sentence text.
struct Token {
  std::string text;
  int char_start = 0;
  int char_end = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string doc_id;
  int sent_index = 0;
  std::string text;
  std::vector<Token> tokens;
  // Optional part-of-speech column; empty or one entry per token.
  std::vector<std::string> pos;

  size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

namespace detail {

inline bool is_terminator(char32_t c) { return c == U'.' || c == U'?' || c == U'!'; }

// True when the period at cps[dot] ends an abbreviation that must not close a
// sentence: "Fig.", "Figs.", "et al.", "e.g.", "i.e.", "vs." or a single
// capital letter followed by a period.
inline bool is_guarded_abbreviation(const std::u32string& cps, size_t dot) {
  size_t start = dot;
  while (start > 0 && !is_space(cps[start - 1])) --start;
  std::u32string word = cps.substr(start, dot + 1 - start);
  // Strip opening brackets such as "(Fig."
  while (!word.empty() && (word[0] == U'(' || word[0] == U'[')) word.erase(0, 1);
  static const std::u32string kGuards[] = {U"Fig.", U"Figs.", U"fig.", U"e.g.",
                                           U"i.e.", U"vs.", U"cf."};
  for (const auto& g : kGuards) {
    if (word == g) return true;
  }
  if (word.size() == 2 && is_upper(word[0])) return true;
  if (word == U"al.") {
    size_t end = start;
    while (end > 0 && is_space(cps[end - 1])) --end;
    size_t prev = end;
    while (prev > 0 && !is_space(cps[prev - 1])) --prev;
    if (cps.substr(prev, end - prev) == U"et") return true;
  }
  return false;
}

}  // namespace detail

// Splits at [.?!] followed by whitespace and an uppercase letter or digit,
// unless the period closes a guarded abbreviation. Sentence texts are the
// segments with surrounding whitespace removed.
inline std::vector<Sentence> split_sentences(const Document& doc) {
  std::vector<Sentence> out;
  const std::u32string cps = utf8::decode(doc.text);
  const size_t n = cps.size();
  size_t seg_start = 0;

  auto emit = [&](size_t begin, size_t end) {
    while (begin < end && is_space(cps[begin])) ++begin;
    while (end > begin && is_space(cps[end - 1])) --end;
    if (begin == end) return;
    Sentence s;
    s.doc_id = doc.doc_id;
    s.sent_index = static_cast<int>(out.size());
    s.text = utf8::encode(std::u32string_view(cps).substr(begin, end - begin));
    out.push_back(std::move(s));
  };

  for (size_t i = 0; i + 1 < n; ++i) {
    if (!detail::is_terminator(cps[i]) || !is_space(cps[i + 1])) continue;
    size_t j = i + 1;
    while (j < n && is_space(cps[j])) ++j;
    if (j == n) break;
    if (!is_upper(cps[j]) && !is_digit(cps[j])) continue;
    if (cps[i] == U'.' && detail::is_guarded_abbreviation(cps, i)) continue;
    emit(seg_start, i + 1);
    seg_start = j;
  }
  emit(seg_start, n);
  return out;
}

// Whitespace segmentation with leading and trailing punctuation split off one
// character at a time. '/', '-' and '.' stay inside a token when both
// neighbours are word characters; any other inner punctuation is split off.
inline std::vector<Token> tokenize(std::string_view sentence_text) {
  const std::u32string cps = utf8::decode(sentence_text);
  const size_t n = cps.size();
  std::vector<Token> tokens;

  auto emit = [&](size_t b, size_t e) {
    if (b >= e) return;
    tokens.push_back({utf8::encode(std::u32string_view(cps).substr(b, e - b)),
                      static_cast<int>(b), static_cast<int>(e)});
  };

  size_t i = 0;
  while (i < n) {
    while (i < n && is_space(cps[i])) ++i;
    if (i == n) break;
    size_t a = i;
    while (i < n && !is_space(cps[i])) ++i;
    size_t b = i;

    while (a < b && !is_word_char(cps[a])) {
      emit(a, a + 1);
      ++a;
    }
    size_t trail = b;
    while (trail > a && !is_word_char(cps[trail - 1])) --trail;

    size_t start = a;
    for (size_t k = a; k < trail; ++k) {
      char32_t c = cps[k];
      if (is_word_char(c)) continue;
      bool joiner = (c == U'/' || c == U'-' || c == U'.') && k > a &&
                    k + 1 < trail && is_word_char(cps[k - 1]) &&
                    is_word_char(cps[k + 1]);
      if (joiner) continue;
      emit(start, k);
      emit(k, k + 1);
      start = k + 1;
    }
    emit(start, trail);
    for (size_t k = trail; k < b; ++k) emit(k, k + 1);
  }
  return tokens;
}

inline Sentence make_sentence(std::string doc_id, int sent_index, std::string text) {
  Sentence s;
  s.doc_id = std::move(doc_id);
  s.sent_index = sent_index;
  s.text = std::move(text);
  s.tokens = tokenize(s.text);
  return s;
}

// Builds a sentence whose text is the tokens joined by single spaces.
inline Sentence sentence_from_tokens(std::string doc_id, int sent_index,
                                     const std::vector<std::string>& words) {
  Sentence s;
  s.doc_id = std::move(doc_id);
  s.sent_index = sent_index;
  int offset = 0;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) {
      s.text.push_back(' ');
      ++offset;
    }
    int len = static_cast<int>(utf8::length(words[i]));
    s.tokens.push_back({words[i], offset, offset + len});
    s.text += words[i];
    offset += len;
  }
  return s;
}

// --- JSONL interchange -----------------------------------------------------

inline nlohmann::json to_json(const Sentence& s) {
  nlohmann::json j;
  j["doc_id"] = s.doc_id;
  j["sent_index"] = s.sent_index;
  j["text"] = s.text;
  auto toks = nlohmann::json::array();
  for (const auto& t : s.tokens) {
    toks.push_back({{"text", t.text}, {"start", t.char_start}, {"end", t.char_end}});
  }
  j["tokens"] = std::move(toks);
  if (!s.pos.empty()) j["pos"] = s.pos;
  return j;
}

inline Sentence sentence_from_json(const nlohmann::json& j) {
  Sentence s;
  s.doc_id = j.at("doc_id").get<std::string>();
  s.sent_index = j.at("sent_index").get<int>();
  s.text = j.at("text").get<std::string>();
  if (j.contains("tokens")) {
    for (const auto& t : j.at("tokens")) {
      s.tokens.push_back({t.at("text").get<std::string>(), t.at("start").get<int>(),
                          t.at("end").get<int>()});
    }
  } else {
    s.tokens = tokenize(s.text);
  }
  if (j.contains("pos")) s.pos = j.at("pos").get<std::vector<std::string>>();
  return s;
}

// Calls fn(json, line_number) for every non-blank line; parse failures raise
// DataError naming the file and line.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed JSON: " + e.what());
    }
    try {
      fn(j, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": bad record: " + e.what());
    }
  }
}

inline std::vector<Document> read_documents(const std::filesystem::path& path) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const nlohmann::json& j, size_t line_no) {
    auto where = path.string() + ":" + std::to_string(line_no);
    if (!j.is_object() || !j.contains("doc_id") || !j["doc_id"].is_string() ||
        !j.contains("text") || !j["text"].is_string()) {
      throw DataError(where + ": expected {\"doc_id\": string, \"text\": string}");
    }
    Document d{j["doc_id"].get<std::string>(), j["text"].get<std::string>()};
    if (d.doc_id.empty()) throw DataError(where + ": empty doc_id");
    if (trim(d.text).empty()) throw DataError(where + ": empty text for " + d.doc_id);
    if (!seen.insert(d.doc_id).second) {
      throw DataError(where + ": duplicate doc_id " + d.doc_id);
    }
    docs.push_back(std::move(d));
  });
  return docs;
}

inline std::vector<Sentence> read_sentences(const std::filesystem::path& path) {
  std::vector<Sentence> out;
  for_each_jsonl(path, [&](const nlohmann::json& j, size_t) {
    out.push_back(sentence_from_json(j));
  });
  return out;
}

inline void write_sentences(const std::filesystem::path& path,
                            const std::vector<Sentence>& sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& s : sentences) out << to_json(s).dump() << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

// Splits and tokenizes every document; output order is (doc order, sentence
// order) regardless of how the work is scheduled.
inline std::vector<Sentence> process_documents(const std::vector<Document>& docs) {
  auto per_doc = parallel_map(docs, [](const Document& d) {
    auto sents = split_sentences(d);
    for (auto& s : sents) s.tokens = tokenize(s.text);
    return sents;
  });
  std::vector<Sentence> all;
  for (auto& v : per_doc) {
    for (auto& s : v) all.push_back(std::move(s));
  }
  return all;
}

inline size_t ingest(const std::filesystem::path& corpus_path,
                     const std::filesystem::path& out_path) {
  auto sentences = process_documents(read_documents(corpus_path));
  write_sentences(out_path, sentences);
  return sentences.size();
}

}  // namespace biocs
