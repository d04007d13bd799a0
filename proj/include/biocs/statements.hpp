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

// Statements JSONL: the interchange between extraction and KG building.
//
//   {"doc_id", "sent_index", "text",
//    "facts": [{"subject": {"concept", "concept_span", "attribute"?,
//                           "attribute_span"?},
//               "predicate", "predicate_span", "object": {...},
//               "confidence", "conditions": [{"index", ...condition}]}],
//    "conditions": [...every condition of the sentence...],
//    "warnings": [...]}
//
// Spans are [start, end) token indices into the sentence tokenization.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "biocs/tag_schema.hpp"
#include "biocs/text_ingest.hpp"
#include "json.hpp"

namespace biocs {

struct StatementRecord {
  Statement statement;
  std::string text;
};

namespace detail {

inline nlohmann::json span_json(const Span& s) { return nlohmann::json::array({s.start, s.end}); }

inline Span span_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw DataError("span must be [start, end]");
  return {j[0].get<int>(), j[1].get<int>()};
}

inline nlohmann::json mention_json(const EntityMention& m) {
  nlohmann::json j{{"concept", m.concept_text}, {"concept_span", span_json(m.concept_span)}};
  if (m.attribute) {
    j["attribute"] = m.attribute_text;
    j["attribute_span"] = span_json(*m.attribute);
  }
  return j;
}

inline EntityMention mention_from(const nlohmann::json& j) {
  EntityMention m;
  m.concept_text = j.at("concept").get<std::string>();
  m.concept_span = span_from(j.at("concept_span"));
  if (j.contains("attribute") && !j["attribute"].is_null()) {
    m.attribute_text = j.at("attribute").get<std::string>();
    m.attribute = span_from(j.at("attribute_span"));
  }
  return m;
}

inline nlohmann::json tuple_json(const Tuple& t, bool with_confidence) {
  nlohmann::json j{{"subject", mention_json(t.subject)},
                   {"predicate", t.predicate_text},
                   {"predicate_span", span_json(t.predicate)},
                   {"object", mention_json(t.object)}};
  if (with_confidence) j["confidence"] = t.confidence;
  return j;
}

inline Tuple tuple_from(const nlohmann::json& j) {
  Tuple t;
  t.subject = mention_from(j.at("subject"));
  t.predicate_text = j.at("predicate").get<std::string>();
  t.predicate = span_from(j.at("predicate_span"));
  t.object = mention_from(j.at("object"));
  t.confidence = j.value("confidence", 1.0);
  return t;
}

}  // namespace detail

inline nlohmann::json to_json(const Statement& st, const std::string& text) {
  nlohmann::json j;
  j["doc_id"] = st.doc_id;
  j["sent_index"] = st.sent_index;
  j["text"] = text;
  auto conds = nlohmann::json::array();
  for (const auto& c : st.conditions) conds.push_back(detail::tuple_json(c, false));
  auto facts = nlohmann::json::array();
  for (size_t f = 0; f < st.facts.size(); ++f) {
    auto fj = detail::tuple_json(st.facts[f], true);
    auto attached = nlohmann::json::array();
    if (f < st.attachment.size()) {
      for (int ci : st.attachment[f]) {
        auto cj = conds.at(ci);
        cj["index"] = ci;
        attached.push_back(std::move(cj));
      }
    }
    fj["conditions"] = std::move(attached);
    facts.push_back(std::move(fj));
  }
  j["facts"] = std::move(facts);
  j["conditions"] = std::move(conds);
  j["warnings"] = st.warnings;
  return j;
}

inline StatementRecord statement_from_json(const nlohmann::json& j) {
  StatementRecord rec;
  auto& st = rec.statement;
  st.doc_id = j.at("doc_id").get<std::string>();
  st.sent_index = j.at("sent_index").get<int>();
  rec.text = j.value("text", std::string());
  for (const auto& c : j.value("conditions", nlohmann::json::array())) {
    st.conditions.push_back(detail::tuple_from(c));
  }
  for (const auto& fj : j.at("facts")) {
    st.facts.push_back(detail::tuple_from(fj));
    std::vector<int> attached;
    for (const auto& cj : fj.value("conditions", nlohmann::json::array())) {
      if (cj.contains("index")) {
        const int ci = cj["index"].get<int>();
        if (ci < 0 || static_cast<size_t>(ci) >= st.conditions.size()) {
          throw DataError("condition index " + std::to_string(ci) + " out of range");
        }
        attached.push_back(ci);
      } else {
        // Nested condition without an index: intern it.
        auto c = detail::tuple_from(cj);
        auto it = std::find(st.conditions.begin(), st.conditions.end(), c);
        attached.push_back(static_cast<int>(it - st.conditions.begin()));
        if (it == st.conditions.end()) st.conditions.push_back(std::move(c));
      }
    }
    st.attachment.push_back(std::move(attached));
  }
  if (j.contains("warnings")) st.warnings = j["warnings"].get<std::vector<std::string>>();
  return rec;
}

inline void write_statements(const std::filesystem::path& path,
                             const std::vector<StatementRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& r : records) out << to_json(r.statement, r.text).dump() << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

inline std::vector<StatementRecord> read_statements(const std::filesystem::path& path) {
  std::vector<StatementRecord> out;
  for_each_jsonl(path, [&](const nlohmann::json& j, size_t line) {
    try {
      out.push_back(statement_from_json(j));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace biocs
