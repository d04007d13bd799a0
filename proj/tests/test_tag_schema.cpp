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

#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "biocs/tag_schema.hpp"
#include "support/oracles.hpp"

namespace biocs {
namespace {

TagSequence tags(std::initializer_list<const char*> codes) {
  TagSequence out;
  for (const char* c : codes) out.push_back(TagLabel::parse(c));
  return out;
}

TEST(TagLabel, IndexOrderAndParse) {
  const char* order[] = {"O",    "B-SC", "I-SC", "B-SA", "I-SA", "B-P",
                         "I-P",  "B-OC", "I-OC", "B-OA", "I-OA"};
  for (int i = 0; i < TagLabel::kCount; ++i) {
    EXPECT_EQ(TagLabel::from_index(i).str(), order[i]);
    EXPECT_EQ(TagLabel::parse(order[i]).index(), i);
  }
  EXPECT_THROW(TagLabel::parse("B-XX"), DataError);
  EXPECT_THROW(TagLabel::parse("E-SC"), DataError);
}

TEST(Encode, WorkedExample) {
  auto w = testing::worked_example();
  auto [fact, cond] = encode(w.sentence, w.facts, w.conditions);
  EXPECT_EQ(fact, tags({"B-SC", "I-SC", "B-P", "O", "B-OA", "O", "B-OC", "I-OC", "O", "O", "O",
                        "O"}));
  EXPECT_EQ(cond, tags({"O", "O", "O", "O", "O", "O", "B-SC", "I-SC", "B-P", "B-OC", "I-OC",
                        "I-OC"}));
}

TEST(Encode, NoTuplesIsAllOutside) {
  auto s = make_sentence("d", 0, "nothing to see here");
  auto [fact, cond] = encode(s, {}, {});
  EXPECT_EQ(fact, TagSequence(4));
  EXPECT_EQ(cond, TagSequence(4));
}

TEST(Encode, OverlappingRolesAreAnError) {
  auto s = make_sentence("d", 0, "alkaline pH increases activity");
  Tuple t = make_tuple(s, make_mention(s, {0, 2}), {1, 3}, make_mention(s, {3, 4}));
  EXPECT_THROW(encode(s, {t}, {}), DataError);
  Tuple out_of_range = t;
  out_of_range.predicate = {2, 9};
  EXPECT_THROW(encode(s, {out_of_range}, {}), DataError);
}

TEST(Encode, SharedSpansAcrossTuplesAreAllowed) {
  auto s = make_sentence("d", 0, "pH increases and acid reduces activity");
  Tuple a = make_tuple(s, make_mention(s, {0, 1}), {1, 2}, make_mention(s, {5, 6}));
  Tuple b = make_tuple(s, make_mention(s, {3, 4}), {4, 5}, make_mention(s, {5, 6}));
  EXPECT_NO_THROW(encode(s, {a, b}, {}));
}

TEST(Decode, WorkedExample) {
  auto w = testing::worked_example();
  auto st = decode(label(w.sentence, w.facts, w.conditions));
  ASSERT_EQ(st.facts.size(), 1u);
  ASSERT_EQ(st.conditions.size(), 1u);
  const auto& f = st.facts[0];
  EXPECT_EQ(f.subject.concept_text, "alkaline pH");
  EXPECT_FALSE(f.subject.attribute);
  EXPECT_EQ(f.predicate_text, "increases");
  EXPECT_EQ(f.object.concept_text, "TRPV5/V6 channels");
  EXPECT_EQ(f.object.attribute_text, "activity");
  const auto& c = st.conditions[0];
  EXPECT_EQ(c.subject.concept_text, "TRPV5/V6 channels");
  EXPECT_EQ(c.predicate_text, "in");
  EXPECT_EQ(c.object.concept_text, "Jurkat T cells");
  EXPECT_EQ(st.attachment, (std::vector<std::vector<int>>{{0}}));
  EXPECT_TRUE(st.warnings.empty());
}

TEST(Decode, AllOutside) {
  auto s = make_sentence("d", 0, "nothing here");
  auto st = decode({s, TagSequence(2), TagSequence(2)});
  EXPECT_TRUE(st.facts.empty());
  EXPECT_TRUE(st.conditions.empty());
  EXPECT_TRUE(st.attachment.empty());
}

TEST(Decode, TwoPredicatesShareOneObjectGroup) {
  auto s = make_sentence("d", 0,
                         "alkaline pH increases and extracellular acidic pH reduces the activity "
                         "of TRPV5/V6 channels");
  LabeledSentence ls{s,
                     tags({"B-SC", "I-SC", "B-P", "O", "B-SC", "I-SC", "I-SC", "B-P", "O", "B-OA",
                           "O", "B-OC", "I-OC"}),
                     TagSequence(13)};
  auto st = decode(ls);
  ASSERT_EQ(st.facts.size(), 2u);
  EXPECT_EQ(st.facts[0].subject.concept_text, "alkaline pH");
  EXPECT_EQ(st.facts[0].predicate_text, "increases");
  EXPECT_EQ(st.facts[1].subject.concept_text, "extracellular acidic pH");
  EXPECT_EQ(st.facts[1].predicate_text, "reduces");
  for (const auto& f : st.facts) {
    EXPECT_EQ(f.object.concept_text, "TRPV5/V6 channels");
    EXPECT_EQ(f.object.attribute_text, "activity");
  }
}

TEST(Decode, PredicateWithoutObjectIsDroppedWithWarning) {
  auto s = make_sentence("d", 0, "pH increases");
  auto st = decode({s, tags({"B-SC", "B-P"}), TagSequence(2)});
  EXPECT_TRUE(st.facts.empty());
  ASSERT_EQ(st.warnings.size(), 1u);
  EXPECT_NE(st.warnings[0].find("increases"), std::string::npos);
}

TEST(Decode, FallsBackToNearestConceptOnTheWrongSide) {
  // Passive order: object before the predicate.
  auto s = make_sentence("d", 0, "apoptosis is triggered by stress");
  auto st = decode({s, tags({"B-OC", "B-P", "I-P", "O", "B-SC"}), TagSequence(5)});
  ASSERT_EQ(st.facts.size(), 1u);
  EXPECT_EQ(st.facts[0].subject.concept_text, "stress");
  EXPECT_EQ(st.facts[0].object.concept_text, "apoptosis");
}

TEST(RepairBio, Examples) {
  EXPECT_EQ(repair_bio(tags({"I-SC", "I-SC"})), tags({"B-SC", "I-SC"}));
  EXPECT_EQ(repair_bio(tags({"O", "I-P", "I-OC"})), tags({"O", "B-P", "B-OC"}));
  auto valid = tags({"B-SC", "I-SC", "B-P", "O", "B-OC"});
  EXPECT_EQ(repair_bio(valid), valid);
}

TEST(RepairBio, AlwaysValidAndIdempotent) {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    TagSequence t(1 + uniform_index(rng, 10));
    for (auto& x : t) x = TagLabel::from_index(static_cast<int>(uniform_index(rng, 11)));
    auto r = repair_bio(t);
    EXPECT_TRUE(is_bio_valid(r));
    EXPECT_EQ(repair_bio(r), r);
    if (is_bio_valid(t)) {
      EXPECT_EQ(r, t);
    }
    for (size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(r[i].is_outside(), t[i].is_outside());
      if (!t[i].is_outside()) {
        EXPECT_EQ(r[i].role(), t[i].role());
      }
    }
  }
}

TEST(AttachConditions, Examples) {
  auto w = testing::worked_example();
  EXPECT_EQ(attach_conditions(w.facts, w.conditions), (std::vector<std::vector<int>>{{0}}));
  EXPECT_TRUE(attach_conditions({}, w.conditions).empty());

  auto s = make_sentence("d", 0, "A up B and C down D in E under F");
  Tuple f1 = make_tuple(s, make_mention(s, {0, 1}), {1, 2}, make_mention(s, {2, 3}));
  Tuple f2 = make_tuple(s, make_mention(s, {4, 5}), {5, 6}, make_mention(s, {6, 7}));
  Tuple c = make_tuple(s, make_mention(s, {8, 9}), {9, 10}, make_mention(s, {10, 11}));
  EXPECT_EQ(attach_conditions({f1, f2}, {c}), (std::vector<std::vector<int>>{{0}, {0}}));
}

TEST(AttachConditions, CaseInsensitiveSurfaceMatch) {
  auto s = make_sentence("d", 0, "Apoptosis rose sharply ; apoptosis in neurons ; X");
  Tuple f = make_tuple(s, make_mention(s, {0, 1}), {1, 2}, make_mention(s, {2, 3}));
  Tuple other = make_tuple(s, make_mention(s, {8, 9}), {1, 2}, make_mention(s, {3, 4}));
  Tuple c = make_tuple(s, make_mention(s, {4, 5}), {5, 6}, make_mention(s, {6, 7}));
  EXPECT_EQ(attach_conditions({f, other}, {c}), (std::vector<std::vector<int>>{{0}, {}}));
}

TEST(Schema, RoundTripOnRandomStatements) {
  Rng rng(20260101);
  for (int i = 0; i < 1500; ++i) {
    auto g = testing::random_statement(rng, i);
    auto labeled = label(g.sentence, g.statement.facts, g.statement.conditions);
    EXPECT_TRUE(is_bio_valid(labeled.fact_tags));
    EXPECT_TRUE(is_bio_valid(labeled.cond_tags));
    auto decoded = decode(labeled);
    ASSERT_EQ(decoded, g.statement) << "statement " << i << ": " << g.sentence.text << "\n"
                                    << to_string(labeled.fact_tags) << "\n"
                                    << to_string(labeled.cond_tags);
  }
}

TEST(Tsv, RoundTripWithPos) {
  auto w = testing::worked_example();
  auto ls = label(w.sentence, w.facts, w.conditions);
  ls.sentence.pos = std::vector<std::string>(12, "NN");
  ls.sentence.sent_index = 4;
  std::stringstream buf;
  write_labeled_tsv(buf, {ls, ls});
  auto back = parse_labeled_tsv(buf);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].sentence, ls.sentence);
  EXPECT_EQ(back[0].fact_tags, ls.fact_tags);
  EXPECT_EQ(back[1].cond_tags, ls.cond_tags);
}

TEST(Tsv, ErrorsNameTheLine) {
  std::istringstream bad("# doc_id=a sent_index=0\npH\tB-SC\n");
  try {
    parse_labeled_tsv(bad, "x.tsv");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("x.tsv:2"), std::string::npos) << e.what();
  }
  std::istringstream unknown("pH\tB-SC\tB-ZZ\n");
  EXPECT_THROW(parse_labeled_tsv(unknown), DataError);
}

TEST(TagLabel, ElevenLabelsPerLayer) {
  EXPECT_EQ(TagLabel::kCount, 11);
  std::set<std::string> names;
  for (const auto& l : all_labels()) names.insert(l.str());
  EXPECT_EQ(names.size(), 11u);
}

TEST(Decode, RandomTagsNeverYieldOutOfRangeSpans) {
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t n = 1 + uniform_index(rng, 12);
    std::vector<std::string> w;
    for (size_t i = 0; i < n; ++i) w.push_back("w" + std::to_string(i));
    LabeledSentence ls{sentence_from_tokens("d", 0, w), TagSequence(n), TagSequence(n)};
    for (size_t i = 0; i < n; ++i) {
      ls.fact_tags[i] = TagLabel::from_index(static_cast<int>(uniform_index(rng, 11)));
      ls.cond_tags[i] = TagLabel::from_index(static_cast<int>(uniform_index(rng, 11)));
    }
    auto st = decode(ls);
    auto in_range = [&](const Span& s) {
      return s.start >= 0 && s.end <= static_cast<int>(n) && !s.empty();
    };
    for (const auto* list : {&st.facts, &st.conditions}) {
      for (const auto& t : *list) {
        EXPECT_TRUE(in_range(t.subject.concept_span));
        EXPECT_TRUE(in_range(t.predicate));
        EXPECT_TRUE(in_range(t.object.concept_span));
        if (t.subject.attribute) {
          EXPECT_TRUE(in_range(*t.subject.attribute));
        }
        if (t.object.attribute) {
          EXPECT_TRUE(in_range(*t.object.attribute));
        }
      }
    }
    EXPECT_EQ(st.attachment.size(), st.facts.size());
  }
}

}  // namespace
}  // namespace biocs
