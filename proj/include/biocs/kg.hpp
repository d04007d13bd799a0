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

// Conditional knowledge graph.
//
// Nodes are concepts keyed by their normalized surface. Each fact becomes an
// edge identified by (subject key, subject attribute, predicate lemma, object
// key, object attribute); attributes live on the edge rather than as nodes.
// Conditions attached to a fact are merged onto its edge as counted records,
// and every edge keeps (doc_id, sent_index) provenance back to the sentence
// texts stored in the graph.

#pragma once

#include <algorithm>
#include <compare>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/tag_schema.hpp"
#include "biocs/text_ingest.hpp"
#include "json.hpp"

namespace biocs {

// Trim, join whitespace runs with '_', lowercase.
inline std::string normalize_concept(std::string_view surface) {
  const std::u32string cps = utf8::decode(surface);
  std::u32string out;
  bool pending_gap = false;
  for (char32_t c : cps) {
    if (is_space(c)) {
      pending_gap = !out.empty();
      continue;
    }
    if (pending_gap) out.push_back(U'_');
    pending_gap = false;
    out.push_back(to_lower(c));
  }
  if (out.empty()) throw DataError("cannot normalize an empty concept surface");
  return utf8::encode(out);
}

// Trimmed surface with whitespace runs collapsed to one space; case kept.
inline std::string display_surface(std::string_view surface) {
  std::string out;
  for (const auto& t : split(trim(surface), ' ')) {
    auto w = trim(t);
    if (w.empty()) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

namespace detail {

inline bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Whether a stem left by stripping -ed/-ing wants its final 'e' back.
inline bool needs_final_e(const std::string& stem) {
  const size_t n = stem.size();
  if (n < 2) return false;
  const char last = stem[n - 1];
  const char prev = stem[n - 2];
  switch (last) {
    case 'c':
    case 'v':
    case 'u':
      return true;
    case 'z':
      return prev == 'i' || prev == 'y';
    case 's':
      if (prev == 's') return false;
      if (prev == 'u') return n >= 3 && stem[n - 3] == 'a';  // caus-e, not focus
      return is_vowel(prev) || prev == 'y' || prev == 'r' || prev == 'n' || prev == 'p' ||
             prev == 'l';
    case 't':
      if (prev == 'a') return !(n >= 3 && (stem[n - 3] == 'e' || stem[n - 3] == 'o'));
      return prev == 'o' || prev == 'u';
    case 'g':
      return prev == 'n' || prev == 'r' || prev == 'd';
    case 'l':
      return !is_vowel(prev) && prev != 'l' && prev != 'r' && prev != 'w';
    case 'r':
      if (prev == 'u') return true;
      if (prev == 'i') return n >= 3 && (stem[n - 3] == 'u' || stem[n - 3] == 'p' || stem[n - 3] == 's');
      if (prev == 'a') return n >= 3 && !is_vowel(stem[n - 3]);
      return false;
    case 'd':
      if (prev == 'u') return true;
      return (prev == 'i' || prev == 'o') && n >= 3 && !is_vowel(stem[n - 3]);
    case 'n':
      return prev == 'i' && n >= 3 && !is_vowel(stem[n - 3]);
    case 'k':
      return prev == 'o' && n >= 3 && !is_vowel(stem[n - 3]);
    default:
      return false;
  }
}

inline std::string restore_stem(std::string stem) {
  const size_t n = stem.size();
  if (n > 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (stem.back() == 'i') {
    stem.back() = 'y';
    return stem;
  }
  if (needs_final_e(stem)) stem.push_back('e');
  return stem;
}

inline std::string lemmatize_word(const std::string& w) {
  if (w.size() <= 3) return w;
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") ||
      ends_with(w, "xes") || ends_with(w, "zzes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s")) {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
    return w.substr(0, w.size() - 1);
  }
  if (ends_with(w, "ed") && w.size() - 2 >= 3) return restore_stem(w.substr(0, w.size() - 2));
  if (ends_with(w, "ing") && w.size() - 3 >= 3) return restore_stem(w.substr(0, w.size() - 3));
  return w;
}

}  // namespace detail

// Rule-based lemma used to group tense and number variants of a predicate
// ("increases", "increased" -> "increase"). Applied word by word; raw
// surfaces are kept on the edge so nothing is lost when a rule misfires.
inline std::string lemmatize_predicate(std::string_view surface) {
  std::string out;
  for (const auto& part : split(to_lower(display_surface(surface)), ' ')) {
    if (part.empty()) continue;
    if (!out.empty()) out += ' ';
    auto lemma = detail::lemmatize_word(part);
    out += lemma.empty() ? part : lemma;
  }
  return out.empty() ? std::string(surface) : out;
}

// --- Graph types -------------------------------------------------------------

struct SentenceRef {
  std::string doc_id;
  int sent_index = 0;
  auto operator<=>(const SentenceRef&) const = default;
};

struct ConceptNode {
  std::string key;
  std::string display;
  std::map<std::string, int> surfaces;
  int freq = 0;

  // Most frequent surface; ties go to the lexicographically smallest.
  void refresh_display() {
    int best = -1;
    for (const auto& [s, c] : surfaces) {
      if (c > best) {
        best = c;
        display = s;
      }
    }
  }
  bool operator==(const ConceptNode&) const = default;
};

using OptionalAttr = std::optional<std::string>;

struct ConditionRecord {
  std::string subj_key;
  OptionalAttr subj_attr;
  std::string pred;
  std::string obj_key;
  OptionalAttr obj_attr;
  int count = 1;

  auto identity() const { return std::tie(subj_key, subj_attr, pred, obj_key, obj_attr); }
  bool operator==(const ConditionRecord&) const = default;
};

struct FactEdge {
  std::string id;
  std::string subj_key;
  OptionalAttr subj_attr;
  std::string pred_lemma;
  std::map<std::string, int> pred_surfaces;
  std::string obj_key;
  OptionalAttr obj_attr;
  int support = 0;
  std::vector<ConditionRecord> conditions;  // sorted by identity
  std::vector<SentenceRef> provenance;      // sorted; one entry per attestation
  double max_confidence = 0.0;

  bool operator==(const FactEdge&) const = default;
};

inline std::string edge_id(const std::string& subj_key, const OptionalAttr& subj_attr,
                           const std::string& pred_lemma, const std::string& obj_key,
                           const OptionalAttr& obj_attr) {
  const std::string absent = "\x1e";
  const std::string sep = "\x1f";
  return fnv1a_hex(subj_key + sep + subj_attr.value_or(absent) + sep + pred_lemma + sep +
                   obj_key + sep + obj_attr.value_or(absent));
}

enum class Direction { kIn, kOut, kBoth };

inline Direction parse_direction(std::string_view s) {
  if (s == "in") return Direction::kIn;
  if (s == "out") return Direction::kOut;
  if (s == "both" || s.empty()) return Direction::kBoth;
  throw UsageError("direction must be in, out or both (got '" + std::string(s) + "')");
}

struct EgoEdge {
  FactEdge edge;
  std::vector<std::pair<SentenceRef, std::string>> sentences;
};

struct EgoGraph {
  std::optional<ConceptNode> center;
  std::vector<EgoEdge> edges;
};

class KnowledgeGraph {
 public:
  std::map<std::string, ConceptNode> nodes;
  std::map<std::string, FactEdge> edges;
  std::map<SentenceRef, std::string> sentences;

  bool operator==(const KnowledgeGraph&) const = default;

  // Folds one decoded sentence into the graph.
  void add_statement(const Statement& st, const std::string& sentence_text) {
    const SentenceRef ref{st.doc_id, st.sent_index};
    note_sentence(ref, sentence_text);

    // Concept mentions count once per distinct token span.
    std::map<Span, std::string> mentions;
    auto note = [&](const EntityMention& m) { mentions.emplace(m.concept_span, m.concept_text); };
    for (const auto& f : st.facts) {
      note(f.subject);
      note(f.object);
    }
    for (const auto& c : st.conditions) {
      note(c.subject);
      note(c.object);
    }
    for (const auto& [span, text] : mentions) upsert_node(text, 1);

    for (size_t fi = 0; fi < st.facts.size(); ++fi) {
      const auto& f = st.facts[fi];
      FactEdge& e = upsert_edge(f);
      e.support += 1;
      insert_sorted(e.provenance, ref);
      e.pred_surfaces[display_surface(f.predicate_text)] += 1;
      e.max_confidence = std::max(e.max_confidence, f.confidence);
      if (fi < st.attachment.size()) {
        for (int ci : st.attachment[fi]) {
          if (ci < 0 || static_cast<size_t>(ci) >= st.conditions.size()) continue;
          merge_condition(e, to_record(st.conditions[ci]));
        }
      }
    }
  }

  void add_statement(const Statement& st, const Sentence& sentence) {
    add_statement(st, sentence.text);
  }

  // Associative, commutative union of two partial graphs.
  void merge(const KnowledgeGraph& other) {
    for (const auto& [key, node] : other.nodes) {
      auto& mine = nodes[key];
      mine.key = key;
      for (const auto& [s, c] : node.surfaces) mine.surfaces[s] += c;
      mine.freq += node.freq;
      mine.refresh_display();
    }
    for (const auto& [id, edge] : other.edges) {
      auto it = edges.find(id);
      if (it == edges.end()) {
        edges.emplace(id, edge);
        continue;
      }
      auto& mine = it->second;
      mine.support += edge.support;
      for (const auto& p : edge.provenance) insert_sorted(mine.provenance, p);
      for (const auto& [s, c] : edge.pred_surfaces) mine.pred_surfaces[s] += c;
      for (const auto& c : edge.conditions) merge_condition(mine, c);
      mine.max_confidence = std::max(mine.max_confidence, edge.max_confidence);
    }
    for (const auto& [ref, text] : other.sentences) note_sentence(ref, text);
  }

  std::optional<std::string> sentence_text(const SentenceRef& ref) const {
    auto it = sentences.find(ref);
    if (it == sentences.end()) return std::nullopt;
    return it->second;
  }

  // Edges incident to the concept, filtered by predicate lemma (empty set:
  // all) and direction, ordered by (support desc, id asc). limit <= 0 keeps
  // every edge.
  EgoGraph query_ego(std::string_view center, const std::set<std::string>& predicates,
                     Direction direction, int limit) const {
    EgoGraph out;
    std::string key;
    try {
      key = normalize_concept(center);
    } catch (const DataError&) {
      return out;
    }
    auto node = nodes.find(key);
    if (node == nodes.end()) return out;
    out.center = node->second;

    std::set<std::string> lemmas;
    for (const auto& p : predicates) {
      if (trim(p).empty()) continue;
      lemmas.insert(to_lower(display_surface(p)));
      lemmas.insert(lemmatize_predicate(p));
    }

    std::vector<const FactEdge*> hits;
    for (const auto& [id, e] : edges) {
      const bool in = e.obj_key == key;
      const bool out_edge = e.subj_key == key;
      const bool dir_ok = direction == Direction::kBoth ? (in || out_edge)
                          : direction == Direction::kIn ? in
                                                        : out_edge;
      if (!dir_ok) continue;
      if (!lemmas.empty() && !lemmas.count(e.pred_lemma)) continue;
      hits.push_back(&e);
    }
    std::sort(hits.begin(), hits.end(), [](const FactEdge* a, const FactEdge* b) {
      if (a->support != b->support) return a->support > b->support;
      return a->id < b->id;
    });
    if (limit > 0 && hits.size() > static_cast<size_t>(limit)) hits.resize(limit);
    for (const FactEdge* e : hits) {
      EgoEdge ee{*e, {}};
      std::set<SentenceRef> seen;
      for (const auto& ref : e->provenance) {
        if (!seen.insert(ref).second) continue;
        ee.sentences.emplace_back(ref, sentence_text(ref).value_or(""));
      }
      out.edges.push_back(std::move(ee));
    }
    return out;
  }

  // Nodes whose key starts with normalize(prefix), by (freq desc, key asc).
  std::vector<const ConceptNode*> concepts(std::string_view prefix, int limit) const {
    std::string p;
    if (!trim(prefix).empty()) p = normalize_concept(prefix);
    std::vector<const ConceptNode*> out;
    for (auto it = nodes.lower_bound(p); it != nodes.end(); ++it) {
      if (it->first.compare(0, p.size(), p) != 0) break;
      out.push_back(&it->second);
    }
    std::stable_sort(out.begin(), out.end(), [](const ConceptNode* a, const ConceptNode* b) {
      return a->freq > b->freq;
    });
    if (limit > 0 && out.size() > static_cast<size_t>(limit)) out.resize(limit);
    return out;
  }

  // Throws DataError describing the first broken invariant.
  void check_integrity() const {
    for (const auto& [key, n] : nodes) {
      int total = 0;
      for (const auto& [s, c] : n.surfaces) total += c;
      if (total != n.freq) throw DataError("node " + key + ": freq != sum of surface counts");
    }
    for (const auto& [id, e] : edges) check_edge(e);
  }

  void check_edge(const FactEdge& e) const {
    if (e.support != static_cast<int>(e.provenance.size())) {
      throw DataError("edge " + e.id + ": support " + std::to_string(e.support) +
                      " != provenance size " + std::to_string(e.provenance.size()));
    }
    if (e.id != edge_id(e.subj_key, e.subj_attr, e.pred_lemma, e.obj_key, e.obj_attr)) {
      throw DataError("edge " + e.id + ": id does not match its identity");
    }
    for (const auto* key : {&e.subj_key, &e.obj_key}) {
      if (!nodes.count(*key)) throw DataError("edge " + e.id + ": unknown node " + *key);
    }
    for (const auto& c : e.conditions) {
      if (!nodes.count(c.subj_key) || !nodes.count(c.obj_key)) {
        throw DataError("edge " + e.id + ": condition references unknown node");
      }
    }
    for (const auto& ref : e.provenance) {
      if (!sentences.count(ref)) {
        throw DataError("edge " + e.id + ": provenance " + ref.doc_id + "#" +
                        std::to_string(ref.sent_index) + " has no stored sentence");
      }
    }
  }

 private:
  // Conflicting texts for one reference resolve to the smaller string.
  void note_sentence(const SentenceRef& ref, const std::string& text) {
    auto [it, inserted] = sentences.emplace(ref, text);
    if (!inserted && text < it->second) it->second = text;
  }

  static OptionalAttr attr_key(const EntityMention& m) {
    if (!m.attribute) return std::nullopt;
    return normalize_concept(m.attribute_text);
  }

  static ConditionRecord to_record(const ConditionTuple& c) {
    ConditionRecord r;
    r.subj_key = normalize_concept(c.subject.concept_text);
    r.subj_attr = attr_key(c.subject);
    r.pred = lemmatize_predicate(c.predicate_text);
    r.obj_key = normalize_concept(c.object.concept_text);
    r.obj_attr = attr_key(c.object);
    r.count = 1;
    return r;
  }

  template <typename T>
  static void insert_sorted(std::vector<T>& v, const T& x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
  }

  static void merge_condition(FactEdge& e, const ConditionRecord& r) {
    auto it = std::lower_bound(e.conditions.begin(), e.conditions.end(), r,
                               [](const ConditionRecord& a, const ConditionRecord& b) {
                                 return a.identity() < b.identity();
                               });
    if (it != e.conditions.end() && it->identity() == r.identity()) {
      it->count += r.count;
    } else {
      e.conditions.insert(it, r);
    }
  }

  void upsert_node(const std::string& surface, int count) {
    const std::string key = normalize_concept(surface);
    auto& n = nodes[key];
    n.key = key;
    n.surfaces[display_surface(surface)] += count;
    n.freq += count;
    n.refresh_display();
  }

  FactEdge& upsert_edge(const FactTuple& f) {
    const std::string sk = normalize_concept(f.subject.concept_text);
    const std::string ok = normalize_concept(f.object.concept_text);
    const OptionalAttr sa = attr_key(f.subject);
    const OptionalAttr oa = attr_key(f.object);
    const std::string lemma = lemmatize_predicate(f.predicate_text);
    const std::string id = edge_id(sk, sa, lemma, ok, oa);
    auto [it, inserted] = edges.try_emplace(id);
    if (inserted) {
      auto& e = it->second;
      e.id = id;
      e.subj_key = sk;
      e.subj_attr = sa;
      e.pred_lemma = lemma;
      e.obj_key = ok;
      e.obj_attr = oa;
    }
    return it->second;
  }
};

// --- Persistence -------------------------------------------------------------

namespace detail {

inline nlohmann::json attr_json(const OptionalAttr& a) {
  return a ? nlohmann::json(*a) : nlohmann::json(nullptr);
}

inline OptionalAttr attr_from(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || j.at(field).is_null()) return std::nullopt;
  return j.at(field).get<std::string>();
}

}  // namespace detail

inline nlohmann::json to_json(const ConceptNode& n) {
  return {{"key", n.key}, {"display", n.display}, {"surfaces", n.surfaces}, {"freq", n.freq}};
}

inline nlohmann::json to_json(const ConditionRecord& c) {
  return {{"subj_key", c.subj_key}, {"subj_attr", detail::attr_json(c.subj_attr)},
          {"pred", c.pred},         {"obj_key", c.obj_key},
          {"obj_attr", detail::attr_json(c.obj_attr)}, {"count", c.count}};
}

inline nlohmann::json to_json(const SentenceRef& r) {
  return {{"doc_id", r.doc_id}, {"sent_index", r.sent_index}};
}

inline nlohmann::json to_json(const FactEdge& e) {
  auto conds = nlohmann::json::array();
  for (const auto& c : e.conditions) conds.push_back(to_json(c));
  auto prov = nlohmann::json::array();
  for (const auto& p : e.provenance) prov.push_back(to_json(p));
  return {{"id", e.id},
          {"subj_key", e.subj_key},
          {"subj_attr", detail::attr_json(e.subj_attr)},
          {"pred_lemma", e.pred_lemma},
          {"pred_surfaces", e.pred_surfaces},
          {"obj_key", e.obj_key},
          {"obj_attr", detail::attr_json(e.obj_attr)},
          {"support", e.support},
          {"conditions", std::move(conds)},
          {"provenance", std::move(prov)},
          {"max_confidence", e.max_confidence}};
}

inline ConceptNode node_from_json(const nlohmann::json& j) {
  ConceptNode n;
  n.key = j.at("key").get<std::string>();
  n.display = j.at("display").get<std::string>();
  n.surfaces = j.at("surfaces").get<std::map<std::string, int>>();
  n.freq = j.at("freq").get<int>();
  return n;
}

inline FactEdge edge_from_json(const nlohmann::json& j) {
  FactEdge e;
  e.id = j.at("id").get<std::string>();
  e.subj_key = j.at("subj_key").get<std::string>();
  e.subj_attr = detail::attr_from(j, "subj_attr");
  e.pred_lemma = j.at("pred_lemma").get<std::string>();
  e.pred_surfaces = j.at("pred_surfaces").get<std::map<std::string, int>>();
  e.obj_key = j.at("obj_key").get<std::string>();
  e.obj_attr = detail::attr_from(j, "obj_attr");
  e.support = j.at("support").get<int>();
  for (const auto& c : j.at("conditions")) {
    ConditionRecord r;
    r.subj_key = c.at("subj_key").get<std::string>();
    r.subj_attr = detail::attr_from(c, "subj_attr");
    r.pred = c.at("pred").get<std::string>();
    r.obj_key = c.at("obj_key").get<std::string>();
    r.obj_attr = detail::attr_from(c, "obj_attr");
    r.count = c.at("count").get<int>();
    if (r.count < 1) throw DataError("condition count must be >= 1");
    e.conditions.push_back(std::move(r));
  }
  for (const auto& p : j.at("provenance")) {
    e.provenance.push_back({p.at("doc_id").get<std::string>(), p.at("sent_index").get<int>()});
  }
  e.max_confidence = j.at("max_confidence").get<double>();
  return e;
}

inline void save(const KnowledgeGraph& kg, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("nodes.jsonl");
    for (const auto& [key, n] : kg.nodes) out << to_json(n).dump() << '\n';
  }
  {
    auto out = open("edges.jsonl");
    for (const auto& [id, e] : kg.edges) out << to_json(e).dump() << '\n';
  }
  {
    auto out = open("sentences.jsonl");
    for (const auto& [ref, text] : kg.sentences) {
      out << nlohmann::json{{"doc_id", ref.doc_id}, {"sent_index", ref.sent_index}, {"text", text}}
                 .dump()
          << '\n';
    }
  }
}

// Reads the three files and verifies referential integrity; errors name the
// offending file and line.
inline KnowledgeGraph load(const std::filesystem::path& dir) {
  KnowledgeGraph kg;
  auto require = [&](const char* name) {
    auto p = dir / name;
    if (!std::filesystem::exists(p)) throw DataError("missing KG file " + p.string());
    return p;
  };
  auto where = [](const std::filesystem::path& p, size_t line) {
    return p.string() + ":" + std::to_string(line);
  };

  const auto nodes_path = require("nodes.jsonl");
  const auto edges_path = require("edges.jsonl");
  const auto sents_path = require("sentences.jsonl");

  for_each_jsonl(sents_path, [&](const nlohmann::json& j, size_t line) {
    SentenceRef ref{j.at("doc_id").get<std::string>(), j.at("sent_index").get<int>()};
    if (!kg.sentences.emplace(ref, j.at("text").get<std::string>()).second) {
      throw DataError(where(sents_path, line) + ": duplicate sentence");
    }
  });
  for_each_jsonl(nodes_path, [&](const nlohmann::json& j, size_t line) {
    auto n = node_from_json(j);
    int total = 0;
    for (const auto& [s, c] : n.surfaces) total += c;
    if (total != n.freq) throw DataError(where(nodes_path, line) + ": freq mismatch");
    if (!kg.nodes.emplace(n.key, n).second) {
      throw DataError(where(nodes_path, line) + ": duplicate node " + n.key);
    }
  });
  for_each_jsonl(edges_path, [&](const nlohmann::json& j, size_t line) {
    auto e = edge_from_json(j);
    try {
      kg.check_edge(e);
    } catch (const DataError& err) {
      throw DataError(where(edges_path, line) + ": " + err.what());
    }
    if (!kg.edges.emplace(e.id, e).second) {
      throw DataError(where(edges_path, line) + ": duplicate edge " + e.id);
    }
  });
  return kg;
}

inline nlohmann::json to_json(const EgoGraph& g) {
  nlohmann::json j;
  j["center"] = g.center ? to_json(*g.center) : nlohmann::json(nullptr);
  auto edges = nlohmann::json::array();
  for (const auto& ee : g.edges) {
    auto e = to_json(ee.edge);
    auto sents = nlohmann::json::array();
    for (const auto& [ref, text] : ee.sentences) {
      sents.push_back({{"doc_id", ref.doc_id}, {"sent_index", ref.sent_index}, {"text", text}});
    }
    e["sentences"] = std::move(sents);
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace biocs
