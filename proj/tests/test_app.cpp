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

#include <chrono>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "biocs/api.hpp"
#include "biocs/app.hpp"
#include "biocs/synthetic.hpp"
#include "support/figure1.hpp"

namespace biocs {
namespace {

using nlohmann::json;
using testing::run_cli;
using testing::TempDir;

const std::set<std::string> kFigureSubjects = {"ogd_exposure", "rnai-mediated_knockdown",
                                               "inhibition", "pre-ischemic_exercise"};

class FigureOne : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    work_ = new TempDir();
    kg_dir_ = testing::build_figure1_kg(work_->path());
    kg_ = new KnowledgeGraph(load(kg_dir_));
  }
  static void TearDownTestSuite() {
    delete kg_;
    delete work_;
  }
  static TempDir* work_;
  static std::filesystem::path kg_dir_;
  static KnowledgeGraph* kg_;
};

TempDir* FigureOne::work_ = nullptr;
std::filesystem::path FigureOne::kg_dir_;
KnowledgeGraph* FigureOne::kg_ = nullptr;

TEST_F(FigureOne, QueryReturnsFourConditionedEdges) {
  auto r = run_cli({"query", "--kg", kg_dir_.string(), "--concept", "apoptosis", "--predicates",
                    "increase,reduce", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  ASSERT_EQ(j["edges"].size(), 4u);
  std::set<std::string> subjects;
  for (const auto& e : j["edges"]) {
    subjects.insert(e["subj_key"].get<std::string>());
    EXPECT_EQ(e["obj_key"], "apoptosis");
    EXPECT_GE(e["conditions"].size(), 1u);
    EXPECT_GE(e["sentences"].size(), 1u);
  }
  EXPECT_EQ(subjects, kFigureSubjects);
  EXPECT_EQ(j["edges"][0]["subj_key"], "ogd_exposure");
  EXPECT_EQ(j["edges"][0]["support"], 2);
}

TEST_F(FigureOne, AttributesAreKept) {
  auto g = kg_->query_ego("apoptosis", {"increase", "reduce"}, Direction::kIn, 0);
  std::map<std::string, std::optional<std::string>> attrs;
  for (const auto& e : g.edges) attrs[e.edge.subj_key] = e.edge.subj_attr;
  EXPECT_EQ(attrs["rnai-mediated_knockdown"], "inhbb");
  EXPECT_EQ(attrs["inhibition"], "calcium_influx");
  EXPECT_FALSE(attrs["ogd_exposure"]);
}

TEST_F(FigureOne, TableOutput) {
  auto r = run_cli({"query", "--kg", kg_dir_.string(), "--concept", "apoptosis", "--predicates",
                    "increase,reduce", "--direction", "in"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{rnai-mediated_knockdown: inhbb}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("condition: (apoptosis, in, hela_cells)"), std::string::npos);
  auto none = run_cli({"query", "--kg", kg_dir_.string(), "--concept", "apoptosis",
                       "--predicates", "abolish"});
  EXPECT_NE(none.out.find("no facts found"), std::string::npos);
  auto bad = run_cli({"query", "--kg", kg_dir_.string(), "--concept", "apoptosis",
                      "--direction", "sideways"});
  EXPECT_EQ(bad.code, 1);
}

TEST_F(FigureOne, ApiEgo) {
  auto r = api::ego(*kg_, {{"concept", "apoptosis"}, {"predicates", "increase,reduce"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["edges"].size(), 4u);

  auto missing = api::ego(*kg_, {{"concept", "nonexistent"}});
  EXPECT_EQ(missing.status, 200);
  EXPECT_EQ(json::parse(missing.body), json::parse(R"({"center":null,"edges":[]})"));

  EXPECT_EQ(api::ego(*kg_, {}).status, 400);
  EXPECT_EQ(api::ego(*kg_, {{"concept", "apoptosis"}, {"direction", "up"}}).status, 400);
  EXPECT_EQ(api::ego(*kg_, {{"concept", "apoptosis"}, {"limit", "x"}}).status, 400);
  auto one = api::ego(*kg_, {{"concept", "apoptosis"}, {"limit", "1"}});
  EXPECT_EQ(json::parse(one.body)["edges"].size(), 1u);
}

TEST_F(FigureOne, ApiConceptsAndSentence) {
  auto c = api::concepts(*kg_, {{"prefix", "apo"}});
  ASSERT_EQ(c.status, 200);
  bool found = false;
  const auto body = json::parse(c.body);
  for (const auto& n : body["concepts"]) found |= n["key"] == "apoptosis";
  EXPECT_TRUE(found);

  auto s = api::sentence(*kg_, {{"doc_id", "pmid-0002"}, {"sent_index", "1"}});
  ASSERT_EQ(s.status, 200);
  EXPECT_EQ(json::parse(s.body)["text"],
            "RNAi-mediated knockdown of INHBB increased apoptosis in HeLa cells.");
  EXPECT_EQ(api::sentence(*kg_, {{"doc_id", "pmid-0002"}, {"sent_index", "99"}}).status, 404);
  EXPECT_EQ(api::sentence(*kg_, {{"doc_id", "pmid-0002"}}).status, 400);
  EXPECT_EQ(json::parse(api::health().body)["status"], "ok");
}

TEST_F(FigureOne, LiveServer) {
  auto server = api::make_server(*kg_);
  const int port = server->bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server->listen_after_bind(); });
  server->wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/ego?concept=apoptosis&predicates=increase,reduce");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["edges"].size(), 4u);
  auto bad = client.Get("/api/ego");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  server->stop();
  t.join();
}

TEST_F(FigureOne, ApiResponsesArePure) {
  const api::Params p = {{"concept", "apoptosis"}, {"predicates", "increase,reduce"}};
  EXPECT_EQ(api::ego(*kg_, p).body, api::ego(*kg_, p).body);
  EXPECT_EQ(api::concepts(*kg_, {}).body, api::concepts(*kg_, {}).body);
}

TEST(Extract, OneRecordPerSentenceInOrder) {
  auto examples = synthetic::generate(120, 21);
  auto sentences = synthetic::sentences(examples);
  sentences.push_back(sentence_from_tokens("empty", 0, {}));
  Model fact = train(synthetic::labeled(examples), Layer::kFact, 3, 0);
  Model cond = train(synthetic::labeled(examples), Layer::kCondition, 3, 0);
  auto records = app::extract_statements(sentences, fact, cond);
  ASSERT_EQ(records.size(), sentences.size());
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].statement.doc_id, sentences[i].doc_id);
    EXPECT_EQ(records[i].text, sentences[i].text);
  }
}

TEST(Cli, UnknownFlagIsUsageError) {
  auto r = run_cli({"train", "--bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, MissingInputIsDataError) {
  TempDir dir;
  auto r = run_cli({"ingest", "--corpus", (dir / "nope.jsonl").string(), "--out",
                    (dir / "s.jsonl").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run_cli({"query", "--kg", (dir / "nokg").string(), "--concept", "x"}).code, 2);
}

TEST(Cli, TrainTwiceGivesIdenticalModels) {
  TempDir dir;
  write_labeled_tsv(dir / "train.tsv", synthetic::labeled(synthetic::generate(40, 1)));
  for (const char* name : {"m1.json", "m2.json"}) {
    auto r = run_cli({"train", "--labeled", (dir / "train.tsv").string(), "--epochs", "20",
                      "--seed", "42", "--model", (dir / name).string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(testing::read_file(dir / "m1.json"), testing::read_file(dir / "m2.json"));
  auto single = run_cli({"train", "--labeled", (dir / "train.tsv").string(), "--layer", "fact",
                         "--epochs", "5", "--model", (dir / "fact.json").string()});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_EQ(Model::load(dir / "fact.json").layer(), Layer::kFact);
}

TEST(Cli, TrainExtractBuildQueryWithLearnedModel) {
  TempDir dir;
  auto train_set = synthetic::generate(150, 11);
  auto test_set = synthetic::generate(30, 12, "test");
  write_labeled_tsv(dir / "train.tsv", synthetic::labeled(train_set));
  write_sentences(dir / "test.jsonl", synthetic::sentences(test_set));
  testing::write_file(dir / "cfg.json", R"({"epochs": 10, "seed": 3})");
  auto run = [&](std::vector<std::string> args) {
    auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return r;
  };
  run({"--config", (dir / "cfg.json").string(), "train", "--labeled",
       (dir / "train.tsv").string(), "--model", (dir / "m.json").string()});
  run({"extract", "--sentences", (dir / "test.jsonl").string(), "--model",
       (dir / "m.json").string(), "--out", (dir / "st.jsonl").string()});
  run({"build-kg", "--statements", (dir / "st.jsonl").string(), "--kg", (dir / "kg").string()});
  auto kg = load(dir / "kg");
  EXPECT_FALSE(kg.edges.empty());
  EXPECT_NO_THROW(kg.check_integrity());
}

TEST(Cli, SelfTrainWritesReport) {
  TempDir dir;
  write_labeled_tsv(dir / "seed.tsv", synthetic::labeled(synthetic::generate(30, 4)));
  write_sentences(dir / "pool.jsonl", synthetic::sentences(synthetic::generate(40, 5, "pool")));
  auto r = run_cli({"selftrain", "--labeled", (dir / "seed.tsv").string(), "--pool",
                    (dir / "pool.jsonl").string(), "--model", (dir / "m.json").string(),
                    "--report", (dir / "r.json").string(), "--augmented",
                    (dir / "aug.tsv").string(), "--epochs", "5", "--tau", "0.2", "--min-new",
                    "1", "--max-iters", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = json::parse(testing::read_file(dir / "r.json"));
  EXPECT_LE(report["iterations"].size(), 2u);
  EXPECT_EQ(read_labeled_tsv(dir / "aug.tsv").size(),
            report["final_training_size"].get<size_t>());
  EXPECT_NO_THROW(app::load_models(dir / "m.json"));
  auto bad = run_cli({"selftrain", "--labeled", (dir / "seed.tsv").string(), "--pool",
                      (dir / "pool.jsonl").string(), "--model", (dir / "m.json").string(),
                      "--tau", "1.5"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, GoldTokenMismatchIsDataError) {
  TempDir dir;
  testing::write_file(dir / "c.jsonl", R"({"doc_id":"pmid-0001","text":"Something else here."})"
                                       "\n");
  ASSERT_EQ(run_cli({"ingest", "--corpus", (dir / "c.jsonl").string(), "--out",
                     (dir / "s.jsonl").string()})
                .code,
            0);
  auto r = run_cli({"extract", "--sentences", (dir / "s.jsonl").string(), "--gold",
                    testing::fixture("figure1/gold.tsv").string(), "--out",
                    (dir / "st.jsonl").string()});
  EXPECT_EQ(r.code, 2);
}

TEST(Api, ParseAddr) {
  EXPECT_EQ(api::parse_addr("127.0.0.1:8080"), (std::pair<std::string, int>{"127.0.0.1", 8080}));
  EXPECT_THROW(api::parse_addr("localhost"), UsageError);
  EXPECT_THROW(api::parse_addr("h:99999"), UsageError);
}

}  // namespace
}  // namespace biocs
