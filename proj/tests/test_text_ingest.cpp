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

#include <gtest/gtest.h>

#include "biocs/tag_schema.hpp"
#include "biocs/text_ingest.hpp"
#include "support/tempdir.hpp"

namespace biocs {
namespace {

using testing::TempDir;

std::vector<std::string> texts(const std::vector<Sentence>& sents) {
  std::vector<std::string> out;
  for (const auto& s : sents) out.push_back(s.text);
  return out;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.text);
  return out;
}

TEST(SplitSentences, TwoPlainSentences) {
  auto s = split_sentences({"d", "A rises. B falls."});
  EXPECT_EQ(texts(s), (std::vector<std::string>{"A rises.", "B falls."}));
  EXPECT_EQ(s[0].sent_index, 0);
  EXPECT_EQ(s[1].sent_index, 1);
  EXPECT_EQ(s[1].doc_id, "d");
}

TEST(SplitSentences, FigureAbbreviationDoesNotSplit) {
  EXPECT_EQ(texts(split_sentences({"d", "See Fig. 2 for details."})),
            (std::vector<std::string>{"See Fig. 2 for details."}));
}

TEST(SplitSentences, EmptyInput) { EXPECT_TRUE(split_sentences({"d", ""}).empty()); }

TEST(SplitSentences, GuardList) {
  const std::vector<std::string> one_sentence = {
      "Smith et al. Reported it.",  "Kinases, e.g. Akt, were active.",
      "Signal i.e. Noise was low.", "Treated vs. Untreated cells differ.",
      "Cells from J. Doe grew.",    "Panels (Fig. 3) Show it."};
  for (const auto& text : one_sentence) {
    EXPECT_EQ(split_sentences({"d", text}).size(), 1u) << text;
  }
}

TEST(SplitSentences, RequiresUppercaseOrDigitAfterTerminator) {
  EXPECT_EQ(split_sentences({"d", "It rose. then fell."}).size(), 1u);
  EXPECT_EQ(split_sentences({"d", "It rose! 5 mice died? Yes."}).size(), 3u);
}

TEST(SplitSentences, Utf8AndGreekCapitals) {
  auto s = split_sentences({"d", "TNF-\xCE\xB1 rose. \xCE\x94Np63 fell."});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].text, "\xCE\x94Np63 fell.");
}

TEST(SplitSentences, ConcatenationRecoversTextModuloWhitespace) {
  const std::string text = "A rises.  B falls! C? See Fig. 2 now. 3 mice died.";
  auto sents = split_sentences({"d", text});
  std::string joined, squeezed;
  for (const auto& s : sents) joined += s.text;
  for (char c : text) {
    if (c != ' ') squeezed += c;
  }
  std::string joined_squeezed;
  for (char c : joined) {
    if (c != ' ') joined_squeezed += c;
  }
  EXPECT_EQ(joined_squeezed, squeezed);
}

TEST(Tokenize, WorkedExampleClause) {
  auto w = words("alkaline pH increases the activity of TRPV5/V6 channels in Jurkat T cells");
  ASSERT_EQ(w.size(), 12u);
  EXPECT_EQ(w[6], "TRPV5/V6");
}

TEST(Tokenize, TrailingPunctuation) {
  EXPECT_EQ(words("cells)."), (std::vector<std::string>{"cells", ")", "."}));
  EXPECT_EQ(words("pH"), (std::vector<std::string>{"pH"}));
}

TEST(Tokenize, CompoundsAndInnerPunctuation) {
  EXPECT_EQ(words("RNAi-mediated knockdown (of INHBB), 2.5 mM"),
            (std::vector<std::string>{"RNAi-mediated", "knockdown", "(", "of", "INHBB", ")", ",",
                                      "2.5", "mM"}));
  EXPECT_EQ(words("a,b"), (std::vector<std::string>{"a", ",", "b"}));
}

TEST(Tokenize, OffsetsAreCodePoints) {
  const std::string text = "TNF-\xCE\xB1 rose.";
  auto toks = tokenize(text);
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].text, "TNF-\xCE\xB1");
  EXPECT_EQ(toks[0].char_start, 0);
  EXPECT_EQ(toks[0].char_end, 5);
  EXPECT_EQ(toks[1].char_start, 6);
  for (const auto& t : toks) {
    EXPECT_EQ(utf8::substr(text, t.char_start, t.char_end), t.text);
  }
}

TEST(Tokenize, TokensCoverAllNonSpaceText) {
  const std::string text = "Inhibition of calcium influx (Ca2+) reduced apoptosis [12].";
  std::string rebuilt, squeezed;
  for (const auto& t : tokenize(text)) rebuilt += t.text;
  for (char c : text) {
    if (c != ' ') squeezed += c;
  }
  EXPECT_EQ(rebuilt, squeezed);
}

TEST(Ingest, CountsSentences) {
  TempDir dir;
  testing::write_file(dir / "c.jsonl", R"({"doc_id":"a","text":"A rises. B falls."})" "\n");
  EXPECT_EQ(ingest(dir / "c.jsonl", dir / "s.jsonl"), 2u);
  auto sents = read_sentences(dir / "s.jsonl");
  ASSERT_EQ(sents.size(), 2u);
  EXPECT_EQ(sents[1].tokens.size(), 3u);
}

TEST(Ingest, DuplicateDocIdIsAnError) {
  TempDir dir;
  testing::write_file(dir / "c.jsonl", R"({"doc_id":"a","text":"A."})" "\n"
                                       R"({"doc_id":"a","text":"B."})" "\n");
  EXPECT_THROW(ingest(dir / "c.jsonl", dir / "s.jsonl"), DataError);
}

TEST(Ingest, MalformedLineNamesTheLine) {
  TempDir dir;
  testing::write_file(dir / "c.jsonl", R"({"doc_id":"a","text":"A."})" "\n{oops\n");
  try {
    read_documents(dir / "c.jsonl");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
  testing::write_file(dir / "d.jsonl", R"({"doc_id":"a"})" "\n");
  EXPECT_THROW(read_documents(dir / "d.jsonl"), DataError);
}

TEST(Ingest, SentenceJsonRoundTrip) {
  auto s = make_sentence("d", 3, "IL-6 signaling increased p53 levels.");
  s.pos = {"NN", "NN", "VBD", "NN", "NNS", "."};
  EXPECT_EQ(sentence_from_json(to_json(s)), s);
}

TEST(Ingest, FigureOneFixtureMatchesHandCount) {
  TempDir dir;
  EXPECT_EQ(ingest(testing::fixture("figure1/corpus.jsonl"), dir / "s.jsonl"), 17u);
}

TEST(Ingest, FigureOneFixtureTokensMatchGold) {
  auto docs = read_documents(testing::fixture("figure1/corpus.jsonl"));
  auto sents = process_documents(docs);
  auto gold = read_labeled_tsv(testing::fixture("figure1/gold.tsv"));
  ASSERT_EQ(gold.size(), sents.size());
  for (size_t i = 0; i < sents.size(); ++i) {
    EXPECT_EQ(gold[i].sentence.doc_id, sents[i].doc_id);
    EXPECT_EQ(gold[i].sentence.sent_index, sents[i].sent_index);
    std::vector<std::string> g, t;
    for (const auto& tok : gold[i].sentence.tokens) g.push_back(tok.text);
    for (const auto& tok : sents[i].tokens) t.push_back(tok.text);
    EXPECT_EQ(g, t) << sents[i].text;
  }
}

TEST(Ingest, ParallelOrderMatchesSequential) {
  std::vector<Document> docs;
  for (int i = 0; i < 300; ++i) {
    docs.push_back({"d" + std::to_string(i), "Alpha " + std::to_string(i) + " rose. Beta fell."});
  }
  auto par = process_documents(docs);
  std::vector<Sentence> seq;
  for (const auto& d : docs) {
    for (auto& s : split_sentences(d)) {
      s.tokens = tokenize(s.text);
      seq.push_back(s);
    }
  }
  EXPECT_EQ(par, seq);
}

TEST(Ingest, OffsetFidelityOverFixture) {
  for (const auto& s : process_documents(read_documents(testing::fixture("figure1/corpus.jsonl")))) {
    for (const auto& t : s.tokens) {
      EXPECT_EQ(utf8::substr(s.text, t.char_start, t.char_end), t.text) << s.text;
    }
  }
}

TEST(Ingest, OutputBytesAreDeterministic) {
  TempDir dir;
  ingest(testing::fixture("figure1/corpus.jsonl"), dir / "a.jsonl");
  ingest(testing::fixture("figure1/corpus.jsonl"), dir / "b.jsonl");
  EXPECT_EQ(testing::read_file(dir / "a.jsonl"), testing::read_file(dir / "b.jsonl"));
}

}  // namespace
}  // namespace biocs
