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

// Two-layer BIO tag schema for conditional statements.
//
// Every sentence carries two parallel tag sequences, one for fact tuples and
// one for condition tuples. Each layer tags five roles: subject concept (SC),
// subject attribute (SA), predicate (P), object concept (OC) and object
// attribute (OA). A token may play one role in the fact layer and a different
// one in the condition layer, e.g. an object concept of a fact that is also
// the subject of a condition.
//
// Decoding is predicate anchored: every predicate span seeds one tuple, the
// subject is the nearest subject concept to its left and the object the
// nearest object concept to its right. Attribute spans hang off the nearest
// concept on their side. Spans may therefore be shared between tuples.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/text_ingest.hpp"

namespace biocs {

enum class Role : uint8_t {
  kSubjectConcept = 0,
  kSubjectAttribute = 1,
  kPredicate = 2,
  kObjectConcept = 3,
  kObjectAttribute = 4,
};
inline constexpr int kNumRoles = 5;

enum class Layer : uint8_t { kFact = 0, kCondition = 1 };

inline const char* layer_name(Layer layer) {
  return layer == Layer::kFact ? "fact" : "condition";
}

inline Layer parse_layer(std::string_view s) {
  if (s == "fact") return Layer::kFact;
  if (s == "condition" || s == "cond") return Layer::kCondition;
  throw DataError("unknown layer '" + std::string(s) + "'");
}

inline const char* role_code(Role r) {
  static const char* kCodes[] = {"SC", "SA", "P", "OC", "OA"};
  return kCodes[static_cast<int>(r)];
}

// O | B(role) | I(role). Dense index order is O, B-SC, I-SC, B-SA, I-SA, B-P,
// I-P, B-OC, I-OC, B-OA, I-OA; decoders break ties towards lower indices.
class TagLabel {
 public:
  enum class Kind : uint8_t { kOutside, kBegin, kInside };

  constexpr TagLabel() = default;
  static constexpr TagLabel outside() { return TagLabel(); }
  static constexpr TagLabel begin(Role r) { return TagLabel(Kind::kBegin, r); }
  static constexpr TagLabel inside(Role r) { return TagLabel(Kind::kInside, r); }

  static constexpr int kCount = 1 + 2 * kNumRoles;

  static constexpr TagLabel from_index(int index) {
    if (index <= 0) return TagLabel();
    const auto role = static_cast<Role>((index - 1) / 2);
    return (index - 1) % 2 == 0 ? begin(role) : inside(role);
  }

  constexpr int index() const {
    if (kind_ == Kind::kOutside) return 0;
    return 1 + 2 * static_cast<int>(role_) + (kind_ == Kind::kInside ? 1 : 0);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr Role role() const { return role_; }
  constexpr bool is_outside() const { return kind_ == Kind::kOutside; }
  constexpr bool is_begin() const { return kind_ == Kind::kBegin; }
  constexpr bool is_inside() const { return kind_ == Kind::kInside; }

  std::string str() const {
    if (kind_ == Kind::kOutside) return "O";
    return std::string(kind_ == Kind::kBegin ? "B-" : "I-") + role_code(role_);
  }

  static TagLabel parse(std::string_view s) {
    if (s == "O") return TagLabel();
    if (s.size() >= 3 && (s[0] == 'B' || s[0] == 'I') && s[1] == '-') {
      auto code = s.substr(2);
      for (int r = 0; r < kNumRoles; ++r) {
        if (code == role_code(static_cast<Role>(r))) {
          return s[0] == 'B' ? begin(static_cast<Role>(r)) : inside(static_cast<Role>(r));
        }
      }
    }
    throw DataError("unknown tag '" + std::string(s) + "'");
  }

  constexpr bool operator==(const TagLabel& o) const { return index() == o.index(); }

 private:
  constexpr TagLabel(Kind k, Role r) : kind_(k), role_(r) {}

  Kind kind_ = Kind::kOutside;
  Role role_ = Role::kSubjectConcept;
};

using TagSequence = std::vector<TagLabel>;

inline std::array<TagLabel, TagLabel::kCount> all_labels() {
  std::array<TagLabel, TagLabel::kCount> labels;
  for (int i = 0; i < TagLabel::kCount; ++i) labels[i] = TagLabel::from_index(i);
  return labels;
}

inline std::string to_string(const TagSequence& tags) {
  std::string out;
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ' ';
    out += tags[i].str();
  }
  return out;
}

// Half-open token range [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  auto operator<=>(const Span&) const = default;
};

// Number of tokens strictly between two non-overlapping spans.
inline int span_gap(const Span& a, const Span& b) {
  if (a.end <= b.start) return b.start - a.end;
  if (b.end <= a.start) return a.start - b.end;
  return 0;
}

struct EntityMention {
  Span concept_span;
  std::string concept_text;
  std::optional<Span> attribute;
  std::string attribute_text;  // empty when attribute is absent

  bool operator==(const EntityMention&) const = default;
};

// (subject, predicate, object). Used for both fact and condition tuples;
// confidence is only meaningful for facts.
struct Tuple {
  EntityMention subject;
  Span predicate;
  std::string predicate_text;
  EntityMention object;
  double confidence = 1.0;

  bool operator==(const Tuple&) const = default;
};

using FactTuple = Tuple;
using ConditionTuple = Tuple;

struct Statement {
  std::string doc_id;
  int sent_index = 0;
  std::vector<FactTuple> facts;
  std::vector<ConditionTuple> conditions;
  // attachment[f] lists the condition indices attached to fact f.
  std::vector<std::vector<int>> attachment;
  // Tuples dropped during decoding, one human-readable record each.
  std::vector<std::string> warnings;

  bool operator==(const Statement&) const = default;
};

struct LabeledSentence {
  Sentence sentence;
  TagSequence fact_tags;
  TagSequence cond_tags;

  const TagSequence& tags(Layer layer) const {
    return layer == Layer::kFact ? fact_tags : cond_tags;
  }
  TagSequence& tags(Layer layer) { return layer == Layer::kFact ? fact_tags : cond_tags; }
};

// Surface text of a token span, cut from the sentence so original spacing is
// preserved.
inline std::string span_text(const Sentence& s, const Span& span) {
  if (span.empty() || span.start < 0 || span.end > static_cast<int>(s.tokens.size())) {
    throw DataError("span [" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") outside sentence of " +
                    std::to_string(s.tokens.size()) + " tokens");
  }
  return utf8::substr(s.text, s.tokens[span.start].char_start,
                      s.tokens[span.end - 1].char_end);
}

inline EntityMention make_mention(const Sentence& s, Span head,
                                  std::optional<Span> attribute = std::nullopt) {
  EntityMention m;
  m.concept_span = head;
  m.concept_text = span_text(s, head);
  if (attribute) {
    m.attribute = attribute;
    m.attribute_text = span_text(s, *attribute);
  }
  return m;
}

inline Tuple make_tuple(const Sentence& s, EntityMention subject, Span predicate,
                        EntityMention object, double confidence = 1.0) {
  Tuple t;
  t.subject = std::move(subject);
  t.predicate = predicate;
  t.predicate_text = span_text(s, predicate);
  t.object = std::move(object);
  t.confidence = confidence;
  return t;
}

// --- BIO validity ----------------------------------------------------------

inline bool is_bio_valid(const TagSequence& tags) {
  for (size_t t = 0; t < tags.size(); ++t) {
    if (!tags[t].is_inside()) continue;
    if (t == 0) return false;
    const auto& prev = tags[t - 1];
    if (prev.is_outside() || prev.role() != tags[t].role()) return false;
  }
  return true;
}

// Rewrites every orphan I(r) to B(r).
inline TagSequence repair_bio(TagSequence tags) {
  for (size_t t = 0; t < tags.size(); ++t) {
    if (!tags[t].is_inside()) continue;
    const bool continues = t > 0 && !tags[t - 1].is_outside() &&
                           tags[t - 1].role() == tags[t].role();
    if (!continues) tags[t] = TagLabel::begin(tags[t].role());
  }
  return tags;
}

// --- Encoding --------------------------------------------------------------

namespace detail {

struct RoleSpan {
  Role role;
  Span span;
  bool operator==(const RoleSpan&) const = default;
};

inline TagSequence encode_layer(const Sentence& sentence, const std::vector<Tuple>& tuples,
                                Layer layer) {
  const int n = static_cast<int>(sentence.tokens.size());
  std::vector<std::optional<RoleSpan>> owner(n);

  auto claim = [&](Role role, const Span& span) {
    if (span.empty() || span.start < 0 || span.end > n) {
      throw DataError(std::string(layer_name(layer)) + " layer: " + role_code(role) +
                      " span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") outside " + std::to_string(n) +
                      " tokens");
    }
    const RoleSpan claim{role, span};
    for (int k = span.start; k < span.end; ++k) {
      if (owner[k] && !(*owner[k] == claim)) {
        const auto& prior = *owner[k];
        throw DataError(std::string(layer_name(layer)) + " layer conflict at token " +
                        std::to_string(k) + ": " + role_code(prior.role) + " [" +
                        std::to_string(prior.span.start) + "," +
                        std::to_string(prior.span.end) + ") vs " + role_code(role) + " [" +
                        std::to_string(span.start) + "," + std::to_string(span.end) + ")");
      }
      owner[k] = claim;
    }
  };

  for (const auto& t : tuples) {
    claim(Role::kSubjectConcept, t.subject.concept_span);
    if (t.subject.attribute) claim(Role::kSubjectAttribute, *t.subject.attribute);
    claim(Role::kPredicate, t.predicate);
    claim(Role::kObjectConcept, t.object.concept_span);
    if (t.object.attribute) claim(Role::kObjectAttribute, *t.object.attribute);
  }

  TagSequence tags(n);
  for (int k = 0; k < n; ++k) {
    if (!owner[k]) continue;
    tags[k] = k == owner[k]->span.start ? TagLabel::begin(owner[k]->role)
                                        : TagLabel::inside(owner[k]->role);
  }
  return tags;
}

}  // namespace detail

inline std::pair<TagSequence, TagSequence> encode(const Sentence& sentence,
                                                  const std::vector<FactTuple>& facts,
                                                  const std::vector<ConditionTuple>& conditions) {
  return {detail::encode_layer(sentence, facts, Layer::kFact),
          detail::encode_layer(sentence, conditions, Layer::kCondition)};
}

// --- Decoding --------------------------------------------------------------

// Maximal B(r) I(r)* runs per role, in sentence order.
inline std::array<std::vector<Span>, kNumRoles> extract_spans(const TagSequence& tags) {
  std::array<std::vector<Span>, kNumRoles> spans;
  const int n = static_cast<int>(tags.size());
  int t = 0;
  while (t < n) {
    if (tags[t].is_outside()) {
      ++t;
      continue;
    }
    const Role role = tags[t].role();
    int end = t + 1;
    while (end < n && tags[end].is_inside() && tags[end].role() == role) ++end;
    spans[static_cast<int>(role)].push_back({t, end});
    t = end;
  }
  return spans;
}

namespace detail {

// Nearest candidate to `anchor` by token gap; ties prefer the earlier span.
inline std::optional<Span> nearest(const std::vector<Span>& candidates, const Span& anchor) {
  std::optional<Span> best;
  int best_gap = 0;
  for (const auto& c : candidates) {
    const int gap = span_gap(c, anchor);
    if (!best || gap < best_gap) {
      best = c;
      best_gap = gap;
    }
  }
  return best;
}

inline std::optional<Span> nearest_left(const std::vector<Span>& candidates, const Span& anchor) {
  std::optional<Span> best;
  for (const auto& c : candidates) {
    if (c.end <= anchor.start && (!best || c.end > best->end)) best = c;
  }
  return best ? best : nearest(candidates, anchor);
}

inline std::optional<Span> nearest_right(const std::vector<Span>& candidates, const Span& anchor) {
  std::optional<Span> best;
  for (const auto& c : candidates) {
    if (c.start >= anchor.end && (!best || c.start < best->start)) best = c;
  }
  return best ? best : nearest(candidates, anchor);
}

// For each concept, the nearest attribute among those whose own nearest
// concept is that one.
inline std::map<Span, Span> attach_attributes(const std::vector<Span>& concepts,
                                              const std::vector<Span>& attributes) {
  std::map<Span, Span> out;
  for (const auto& attr : attributes) {
    auto owner = nearest(concepts, attr);
    if (!owner) continue;
    auto it = out.find(*owner);
    if (it == out.end()) {
      out.emplace(*owner, attr);
    } else if (span_gap(attr, *owner) < span_gap(it->second, *owner)) {
      it->second = attr;
    }
  }
  return out;
}

struct LayerDecode {
  std::vector<Tuple> tuples;
  std::vector<std::string> warnings;
};

inline LayerDecode decode_layer(const Sentence& sentence, const TagSequence& raw_tags,
                                Layer layer, double confidence) {
  LayerDecode out;
  const auto spans = extract_spans(repair_bio(raw_tags));
  const auto& sc = spans[static_cast<int>(Role::kSubjectConcept)];
  const auto& sa = spans[static_cast<int>(Role::kSubjectAttribute)];
  const auto& preds = spans[static_cast<int>(Role::kPredicate)];
  const auto& oc = spans[static_cast<int>(Role::kObjectConcept)];
  const auto& oa = spans[static_cast<int>(Role::kObjectAttribute)];

  const auto subject_attr = attach_attributes(sc, sa);
  const auto object_attr = attach_attributes(oc, oa);
  auto mention = [&](const Span& head, const std::map<Span, Span>& attrs) {
    auto it = attrs.find(head);
    return make_mention(sentence, head,
                        it == attrs.end() ? std::nullopt : std::optional<Span>(it->second));
  };

  for (const auto& p : preds) {
    auto subj = nearest_left(sc, p);
    auto obj = nearest_right(oc, p);
    if (!subj || !obj) {
      out.warnings.push_back(std::string(layer_name(layer)) + " predicate '" +
                             span_text(sentence, p) + "' at [" + std::to_string(p.start) +
                             "," + std::to_string(p.end) + ") has no " +
                             (subj ? "object" : "subject") + " concept; tuple dropped");
      continue;
    }
    out.tuples.push_back(make_tuple(sentence, mention(*subj, subject_attr), p,
                                    mention(*obj, object_attr), confidence));
  }
  return out;
}

}  // namespace detail

// A condition attaches to every fact sharing a concept surface with it
// (case-insensitive, subject or object on either side). A condition that
// matches no fact attaches to all facts of the sentence.
inline std::vector<std::vector<int>> attach_conditions(const std::vector<FactTuple>& facts,
                                                       const std::vector<ConditionTuple>& conditions) {
  std::vector<std::vector<int>> attachment(facts.size());
  if (facts.empty()) return attachment;
  for (size_t c = 0; c < conditions.size(); ++c) {
    const std::string cs = to_lower(conditions[c].subject.concept_text);
    const std::string co = to_lower(conditions[c].object.concept_text);
    bool matched = false;
    for (size_t f = 0; f < facts.size(); ++f) {
      const std::string fs = to_lower(facts[f].subject.concept_text);
      const std::string fo = to_lower(facts[f].object.concept_text);
      if (fs == cs || fs == co || fo == cs || fo == co) {
        attachment[f].push_back(static_cast<int>(c));
        matched = true;
      }
    }
    if (!matched) {
      for (auto& list : attachment) list.push_back(static_cast<int>(c));
    }
  }
  return attachment;
}

// Tags are BIO-repaired before span extraction. `fact_confidence` is copied
// onto every decoded fact.
inline Statement decode(const LabeledSentence& labeled, double fact_confidence = 1.0) {
  const auto& s = labeled.sentence;
  if (labeled.fact_tags.size() != s.tokens.size() ||
      labeled.cond_tags.size() != s.tokens.size()) {
    throw DataError("tag/token length mismatch in " + s.doc_id + "#" +
                    std::to_string(s.sent_index));
  }
  Statement st;
  st.doc_id = s.doc_id;
  st.sent_index = s.sent_index;
  auto facts = detail::decode_layer(s, labeled.fact_tags, Layer::kFact, fact_confidence);
  auto conds = detail::decode_layer(s, labeled.cond_tags, Layer::kCondition, 1.0);
  st.facts = std::move(facts.tuples);
  st.conditions = std::move(conds.tuples);
  st.warnings = std::move(facts.warnings);
  st.warnings.insert(st.warnings.end(), conds.warnings.begin(), conds.warnings.end());
  st.attachment = attach_conditions(st.facts, st.conditions);
  return st;
}

// Gold labeling from tuples.
inline LabeledSentence label(const Sentence& sentence, const std::vector<FactTuple>& facts,
                             const std::vector<ConditionTuple>& conditions) {
  auto [fact_tags, cond_tags] = encode(sentence, facts, conditions);
  return {sentence, std::move(fact_tags), std::move(cond_tags)};
}

// --- TSV labeled data --------------------------------------------------------
//
//   # doc_id=<id> sent_index=<n>
//   token<TAB>fact_tag<TAB>cond_tag[<TAB>pos]
//   <blank line between sentences>

inline std::vector<LabeledSentence> parse_labeled_tsv(std::istream& in,
                                                      const std::string& source = "<tsv>") {
  std::vector<LabeledSentence> out;
  std::vector<std::string> words, pos;
  TagSequence fact, cond;
  std::optional<std::string> doc_id;
  std::optional<int> sent_index;
  int anonymous = 0;

  auto flush = [&] {
    if (words.empty()) {
      doc_id.reset();
      sent_index.reset();
      return;
    }
    LabeledSentence ls;
    ls.sentence = sentence_from_tokens(doc_id.value_or("tsv"),
                                       sent_index.value_or(anonymous), words);
    if (pos.size() == words.size()) ls.sentence.pos = pos;
    ls.fact_tags = std::move(fact);
    ls.cond_tags = std::move(cond);
    out.push_back(std::move(ls));
    ++anonymous;
    words.clear();
    pos.clear();
    fact.clear();
    cond.clear();
    doc_id.reset();
    sent_index.reset();
  };

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      if (!words.empty()) flush();
      std::istringstream header(line.substr(1));
      std::string field;
      while (header >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        auto key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "doc_id") {
          doc_id = value;
        } else if (key == "sent_index") {
          try {
            sent_index = std::stoi(value);
          } catch (const std::exception&) {
            throw DataError(where + ": bad sent_index '" + value + "'");
          }
        }
      }
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 3 && cols.size() != 4) {
      throw DataError(where + ": expected 3 or 4 tab-separated columns, got " +
                      std::to_string(cols.size()));
    }
    try {
      fact.push_back(TagLabel::parse(cols[1]));
      cond.push_back(TagLabel::parse(cols[2]));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    if (cols[0].empty()) throw DataError(where + ": empty token");
    words.push_back(cols[0]);
    if (cols.size() == 4) pos.push_back(cols[3]);
  }
  flush();
  return out;
}

inline std::vector<LabeledSentence> read_labeled_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_labeled_tsv(in, path.string());
}

inline void write_labeled_tsv(std::ostream& out, const std::vector<LabeledSentence>& data) {
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& ls = data[i];
    if (i) out << '\n';
    out << "# doc_id=" << ls.sentence.doc_id << " sent_index=" << ls.sentence.sent_index
        << '\n';
    for (size_t t = 0; t < ls.sentence.tokens.size(); ++t) {
      out << ls.sentence.tokens[t].text << '\t' << ls.fact_tags[t].str() << '\t'
          << ls.cond_tags[t].str();
      if (!ls.sentence.pos.empty()) out << '\t' << ls.sentence.pos[t];
      out << '\n';
    }
  }
}

inline void write_labeled_tsv(const std::filesystem::path& path,
                              const std::vector<LabeledSentence>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_labeled_tsv(out, data);
}

}  // namespace biocs
