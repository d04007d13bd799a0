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

// Templated generator of labeled conditional statements. Sentences are
// assembled from slot fillers (concepts, attributes, predicates, condition
// contexts) so the gold tuples are known by construction.

#pragma once

#include <string>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/tag_schema.hpp"
#include "biocs/text_ingest.hpp"

namespace biocs::synthetic {

struct Example {
  LabeledSentence labeled;
  Statement gold;
};

namespace detail {

inline const std::vector<std::string>& agents() {
  static const std::vector<std::string> v = {
      "alkaline pH", "extracellular acidic pH", "OGD exposure", "hypoxia",
      "TNF-alpha treatment", "cisplatin", "insulin", "high glucose",
      "oxidative stress", "IL-6 signaling", "metformin", "resveratrol",
      "calcium influx", "ROS production", "serum starvation", "heat shock",
      "LPS stimulation", "estrogen", "rapamycin", "curcumin"};
  return v;
}

inline const std::vector<std::string>& targets() {
  static const std::vector<std::string> v = {
      "TRPV5/V6 channels", "apoptosis", "caspase-3", "autophagy", "NF-kB",
      "Akt", "cell proliferation", "Bcl-2", "mTOR", "ERK1/2",
      "glucose uptake", "collagen synthesis", "p53", "AMPK", "STAT3",
      "cyclin D1", "HIF-1alpha", "Nrf2", "insulin receptor", "MMP-9"};
  return v;
}

inline const std::vector<std::string>& attributes() {
  static const std::vector<std::string> v = {
      "activity", "expression", "level", "phosphorylation", "stability",
      "release", "secretion", "degradation", "nuclear translocation", "abundance"};
  return v;
}

inline const std::vector<std::string>& predicates() {
  static const std::vector<std::string> v = {
      "increases", "increased", "reduces", "reduced", "inhibits", "inhibited",
      "enhances", "enhanced", "promotes", "promoted", "decreased", "activates",
      "activated", "suppresses", "suppressed", "induces", "induced", "attenuated",
      "upregulated", "downregulated", "stimulated", "blocked"};
  return v;
}

inline const std::vector<std::string>& condition_preps() {
  static const std::vector<std::string> v = {"in", "under", "after", "during"};
  return v;
}

inline const std::vector<std::string>& contexts() {
  static const std::vector<std::string> v = {
      "Jurkat T cells", "HeLa cells", "cortical neurons", "diabetic mice",
      "hypoxic conditions", "rat hippocampus", "HEK293 cells", "cardiomyocytes",
      "serum-free medium", "primary hepatocytes", "zebrafish embryos",
      "human fibroblasts", "ischemic stroke", "high-fat diet", "MCF-7 cells"};
  return v;
}

inline const std::vector<std::string>& lead_ins() {
  static const std::vector<std::string> v = {
      "We observed that", "Our results show that", "These data indicate that",
      "Notably ,", "In addition ,", "Furthermore ,"};
  return v;
}

inline const std::string& pick(const std::vector<std::string>& v, Rng& rng) {
  return v[uniform_index(rng, v.size())];
}

// Collects words and remembers the token span of every appended phrase.
class Builder {
 public:
  Span add(const std::string& phrase) {
    const int start = static_cast<int>(words_.size());
    for (const auto& w : split(phrase, ' ')) {
      if (!w.empty()) words_.push_back(w);
    }
    return {start, static_cast<int>(words_.size())};
  }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
};

struct PendingTuple {
  Span subj;
  std::optional<Span> subj_attr;
  Span pred;
  Span obj;
  std::optional<Span> obj_attr;
};

}  // namespace detail

// One templated sentence. Templates cover single facts, attribute-bearing
// subjects and objects, two facts sharing an object or a subject, fronted
// condition phrases and sentences without conditions.
inline Example generate_one(Rng& rng, const std::string& doc_id, int sent_index) {
  using namespace detail;
  Builder b;
  std::vector<PendingTuple> facts, conds;
  const bool lead = uniform_index(rng, 3) == 0;
  const size_t tmpl = uniform_index(rng, 7);

  auto condition_after = [&](Span subject) {
    Span prep = b.add(pick(condition_preps(), rng));
    Span ctx = b.add(pick(contexts(), rng));
    conds.push_back({subject, std::nullopt, prep, ctx, std::nullopt});
  };

  if (lead && tmpl != 4) b.add(pick(lead_ins(), rng));
  switch (tmpl) {
    case 0: {  // SC P the OA of OC in C
      Span sc = b.add(pick(agents(), rng));
      Span p = b.add(pick(predicates(), rng));
      b.add("the");
      Span oa = b.add(pick(attributes(), rng));
      b.add("of");
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc, std::nullopt, p, oc, oa});
      condition_after(oc);
      break;
    }
    case 1: {  // SC P OC in C
      Span sc = b.add(pick(agents(), rng));
      Span p = b.add(pick(predicates(), rng));
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc, std::nullopt, p, oc, std::nullopt});
      condition_after(oc);
      break;
    }
    case 2: {  // the SA of SC P OC under C
      b.add("the");
      Span sa = b.add(pick(attributes(), rng));
      b.add("of");
      Span sc = b.add(pick(agents(), rng));
      Span p = b.add(pick(predicates(), rng));
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc, sa, p, oc, std::nullopt});
      condition_after(oc);
      break;
    }
    case 3: {  // SC1 P1 and SC2 P2 the OA of OC in C
      std::string a1 = pick(agents(), rng), a2 = pick(agents(), rng);
      while (a2 == a1) a2 = pick(agents(), rng);
      Span sc1 = b.add(a1);
      Span p1 = b.add(pick(predicates(), rng));
      b.add("and");
      Span sc2 = b.add(a2);
      Span p2 = b.add(pick(predicates(), rng));
      b.add("the");
      Span oa = b.add(pick(attributes(), rng));
      b.add("of");
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc1, std::nullopt, p1, oc, oa});
      facts.push_back({sc2, std::nullopt, p2, oc, oa});
      condition_after(oc);
      break;
    }
    case 4: {  // In C , SC P OC
      Span prep = b.add("In");
      Span ctx = b.add(pick(contexts(), rng));
      b.add(",");
      Span sc = b.add(pick(agents(), rng));
      Span p = b.add(pick(predicates(), rng));
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc, std::nullopt, p, oc, std::nullopt});
      conds.push_back({sc, std::nullopt, prep, ctx, std::nullopt});
      break;
    }
    case 5: {  // SC P OC1 and P2 OC2 in C
      std::string t1 = pick(targets(), rng), t2 = pick(targets(), rng);
      while (t2 == t1) t2 = pick(targets(), rng);
      Span sc = b.add(pick(agents(), rng));
      Span p1 = b.add(pick(predicates(), rng));
      Span oc1 = b.add(t1);
      b.add("and");
      Span p2 = b.add(pick(predicates(), rng));
      Span oc2 = b.add(t2);
      facts.push_back({sc, std::nullopt, p1, oc1, std::nullopt});
      facts.push_back({sc, std::nullopt, p2, oc2, std::nullopt});
      condition_after(oc2);
      break;
    }
    default: {  // SC P the OA of OC (no condition)
      Span sc = b.add(pick(agents(), rng));
      Span p = b.add(pick(predicates(), rng));
      b.add("the");
      Span oa = b.add(pick(attributes(), rng));
      b.add("of");
      Span oc = b.add(pick(targets(), rng));
      facts.push_back({sc, std::nullopt, p, oc, oa});
      break;
    }
  }
  b.add(".");

  Sentence s = sentence_from_tokens(doc_id, sent_index, b.words());
  auto realize = [&](const std::vector<PendingTuple>& pending) {
    std::vector<Tuple> out;
    for (const auto& t : pending) {
      out.push_back(make_tuple(s, make_mention(s, t.subj, t.subj_attr), t.pred,
                               make_mention(s, t.obj, t.obj_attr)));
    }
    return out;
  };
  Example ex;
  ex.gold.doc_id = doc_id;
  ex.gold.sent_index = sent_index;
  ex.gold.facts = realize(facts);
  ex.gold.conditions = realize(conds);
  ex.gold.attachment = attach_conditions(ex.gold.facts, ex.gold.conditions);
  ex.labeled = label(s, ex.gold.facts, ex.gold.conditions);
  return ex;
}

// `count` examples with doc ids "<prefix>-<i>", sentence index 0.
inline std::vector<Example> generate(size_t count, uint64_t seed,
                                     const std::string& prefix = "syn") {
  Rng rng(seed);
  std::vector<Example> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    out.push_back(generate_one(rng, prefix + "-" + std::to_string(i), 0));
  }
  return out;
}

inline std::vector<LabeledSentence> labeled(const std::vector<Example>& examples) {
  std::vector<LabeledSentence> out;
  for (const auto& e : examples) out.push_back(e.labeled);
  return out;
}

inline std::vector<Sentence> sentences(const std::vector<Example>& examples) {
  std::vector<Sentence> out;
  for (const auto& e : examples) out.push_back(e.labeled.sentence);
  return out;
}

}  // namespace biocs::synthetic
