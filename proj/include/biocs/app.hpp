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

// Command-line front end: ingest | train | selftrain | extract | build-kg |
// query | serve. Exit codes: 0 success, 1 usage error, 2 data or I/O error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biocs/api.hpp"
#include "biocs/features.hpp"
#include "biocs/kg.hpp"
#include "biocs/parallel.hpp"
#include "biocs/self_training.hpp"
#include "biocs/statements.hpp"
#include "biocs/tag_schema.hpp"
#include "biocs/tagger.hpp"
#include "biocs/text_ingest.hpp"
#include "json.hpp"

namespace biocs::app {

// Defaults for every tunable; a JSON config file may override them and
// command-line flags override the config file.
struct AppConfig {
  std::string model;
  std::string kg_dir;
  std::string lexicon;
  int epochs = 20;
  uint64_t seed = 42;
  SelfTrainParams self_train;
  std::string addr = "127.0.0.1:8080";
  std::string static_dir;

  static AppConfig from_json(const nlohmann::json& j) {
    AppConfig c;
    c.model = j.value("model", c.model);
    c.kg_dir = j.value("kg_dir", c.kg_dir);
    c.lexicon = j.value("lexicon", c.lexicon);
    c.epochs = j.value("epochs", c.epochs);
    c.seed = j.value("seed", c.seed);
    c.self_train.tau = j.value("tau", c.self_train.tau);
    c.self_train.cap = j.value("cap", c.self_train.cap);
    c.self_train.max_iters = j.value("max_iters", c.self_train.max_iters);
    c.self_train.min_new = j.value("min_new", c.self_train.min_new);
    c.addr = j.value("addr", c.addr);
    c.static_dir = j.value("static_dir", c.static_dir);
    return c;
  }

  static AppConfig load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    try {
      nlohmann::json j;
      in >> j;
      if (!j.is_object()) throw DataError("config must be a JSON object");
      return from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": " + e.what());
    }
  }
};

struct LayerModels {
  Model fact{Layer::kFact};
  Model cond{Layer::kCondition};
};

inline void save_models(const LayerModels& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  nlohmann::json j{{"fact", m.fact.to_json()}, {"condition", m.cond.to_json()}};
  out << j.dump(1) << '\n';
}

// Accepts a two-layer bundle {"fact": ..., "condition": ...}.
inline LayerModels load_models(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("fact") || !j.contains("condition")) {
    throw DataError(path.string() + ": expected a bundle with \"fact\" and \"condition\" models");
  }
  LayerModels m;
  m.fact = Model::from_json(j["fact"]);
  m.cond = Model::from_json(j["condition"]);
  if (m.fact.layer() != Layer::kFact || m.cond.layer() != Layer::kCondition) {
    throw DataError(path.string() + ": bundle layers are swapped");
  }
  return m;
}

// Decodes every sentence with both layer models; one record per input
// sentence, in input order.
inline std::vector<StatementRecord> extract_statements(const std::vector<Sentence>& sentences,
                                                       const Model& fact_model,
                                                       const Model& cond_model,
                                                       const Lexicon* lexicon = nullptr) {
  return parallel_map(sentences, [&](const Sentence& s) {
    StatementRecord rec;
    rec.text = s.text;
    if (s.tokens.empty()) {
      rec.statement.doc_id = s.doc_id;
      rec.statement.sent_index = s.sent_index;
      return rec;
    }
    const auto fp = fact_model.predict(s, lexicon);
    const auto cp = cond_model.predict(s, lexicon);
    rec.statement = decode({s, fp.tags, cp.tags}, fp.confidence);
    return rec;
  });
}

// Decodes supplied gold tags instead of model predictions. Gold sentences are
// matched on (doc_id, sent_index) and must carry the same tokens; sentences
// without gold tags decode as all-O.
inline std::vector<StatementRecord> extract_statements_gold(
    const std::vector<Sentence>& sentences, const std::vector<LabeledSentence>& gold,
    size_t* missing = nullptr) {
  std::map<SentenceRef, const LabeledSentence*> index;
  for (const auto& g : gold) index[{g.sentence.doc_id, g.sentence.sent_index}] = &g;
  std::vector<StatementRecord> out;
  size_t n_missing = 0;
  for (const auto& s : sentences) {
    StatementRecord rec;
    rec.text = s.text;
    auto it = index.find({s.doc_id, s.sent_index});
    LabeledSentence ls{s, TagSequence(s.tokens.size()), TagSequence(s.tokens.size())};
    if (it == index.end()) {
      ++n_missing;
    } else {
      const auto& g = *it->second;
      if (g.sentence.tokens.size() != s.tokens.size()) {
        throw DataError("gold tags for " + s.doc_id + "#" + std::to_string(s.sent_index) +
                        " cover " + std::to_string(g.sentence.tokens.size()) +
                        " tokens, sentence has " + std::to_string(s.tokens.size()));
      }
      for (size_t t = 0; t < s.tokens.size(); ++t) {
        if (g.sentence.tokens[t].text != s.tokens[t].text) {
          throw DataError("gold token mismatch in " + s.doc_id + "#" +
                          std::to_string(s.sent_index) + " at " + std::to_string(t) + ": '" +
                          g.sentence.tokens[t].text + "' vs '" + s.tokens[t].text + "'");
        }
      }
      ls.fact_tags = g.fact_tags;
      ls.cond_tags = g.cond_tags;
    }
    rec.statement = decode(ls);
    out.push_back(std::move(rec));
  }
  if (missing) *missing = n_missing;
  return out;
}

inline KnowledgeGraph build_kg(const std::vector<StatementRecord>& records) {
  KnowledgeGraph kg;
  for (const auto& r : records) kg.add_statement(r.statement, r.text);
  return kg;
}

inline std::string format_attr(const std::string& key, const OptionalAttr& attr) {
  return attr ? "{" + key + ": " + *attr + "}" : key;
}

inline void print_ego_table(const EgoGraph& g, std::ostream& out) {
  if (!g.center) {
    out << "no such concept\n";
    return;
  }
  out << "center: " << g.center->key << " (" << g.center->display << ", freq "
      << g.center->freq << ")\n";
  if (g.edges.empty()) {
    out << "no facts found\n";
    return;
  }
  size_t w_subj = 7, w_pred = 9;
  for (const auto& ee : g.edges) {
    w_subj = std::max(w_subj, format_attr(ee.edge.subj_key, ee.edge.subj_attr).size());
    w_pred = std::max(w_pred, ee.edge.pred_lemma.size());
  }
  out << std::left << std::setw(8) << "support" << std::setw(w_subj + 2) << "subject"
      << std::setw(w_pred + 2) << "predicate" << "object\n";
  for (const auto& ee : g.edges) {
    const auto& e = ee.edge;
    out << std::left << std::setw(8) << e.support
        << std::setw(w_subj + 2) << format_attr(e.subj_key, e.subj_attr)
        << std::setw(w_pred + 2) << e.pred_lemma << format_attr(e.obj_key, e.obj_attr) << '\n';
    for (const auto& c : e.conditions) {
      out << "        | condition: (" << format_attr(c.subj_key, c.subj_attr) << ", " << c.pred
          << ", " << format_attr(c.obj_key, c.obj_attr) << ") x" << c.count << '\n';
    }
    for (const auto& [ref, text] : ee.sentences) {
      out << "        | " << ref.doc_id << "#" << ref.sent_index << ": " << text << '\n';
    }
  }
}

namespace detail {

template <typename T>
T pick(const std::optional<T>& flag, const T& configured) {
  return flag ? *flag : configured;
}

inline void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw UsageError("missing required " + flag);
}

inline std::optional<Lexicon> maybe_lexicon(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return Lexicon::load(path);
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App cli{"Conditional statement extraction and knowledge graph toolkit", "biocs"};
  cli.require_subcommand(1);

  std::string config_path;
  cli.add_option("--config", config_path, "JSON config file (flags override it)");

  // Flag values; unset optionals fall back to the config file and defaults.
  std::optional<std::string> model, kg_dir, lexicon, addr, static_dir;
  std::optional<int> epochs, cap, max_iters, min_new, limit;
  std::optional<uint64_t> seed;
  std::optional<double> tau;

  auto* ingest_cmd = cli.add_subcommand("ingest", "Split and tokenize a JSONL corpus");
  std::string corpus, out_path;
  ingest_cmd->add_option("--corpus", corpus, "Input JSONL {doc_id, text}")->required();
  ingest_cmd->add_option("--out", out_path, "Output sentences JSONL")->required();

  auto* train_cmd = cli.add_subcommand("train", "Train fact and condition taggers");
  std::string labeled_path, layer_opt = "both";
  train_cmd->add_option("--labeled", labeled_path, "Labeled TSV")->required();
  train_cmd->add_option("--model", model, "Output model bundle (JSON)");
  train_cmd->add_option("--epochs", epochs, "Training epochs");
  train_cmd->add_option("--seed", seed, "Shuffle seed");
  train_cmd->add_option("--lexicon", lexicon, "Lexicon file");
  train_cmd->add_option("--layer", layer_opt, "fact, condition or both (single layers write one model)")
      ->check(CLI::IsMember({"fact", "condition", "both"}));

  auto* self_cmd = cli.add_subcommand("selftrain", "Self-train on an unlabeled sentence pool");
  std::string pool_path, report_path, augmented_path;
  self_cmd->add_option("--labeled", labeled_path, "Seed labeled TSV")->required();
  self_cmd->add_option("--pool", pool_path, "Unlabeled sentences JSONL")->required();
  self_cmd->add_option("--model", model, "Output model bundle (JSON)");
  self_cmd->add_option("--report", report_path, "Report JSON");
  self_cmd->add_option("--augmented", augmented_path, "Augmented training set TSV");
  self_cmd->add_option("--tau", tau, "Promotion confidence threshold in (0,1)");
  self_cmd->add_option("--cap", cap, "Max promotions per iteration");
  self_cmd->add_option("--max-iters", max_iters, "Max iterations");
  self_cmd->add_option("--min-new", min_new, "Stop when fewer sentences are promoted");
  self_cmd->add_option("--epochs", epochs, "Training epochs");
  self_cmd->add_option("--seed", seed, "Shuffle seed");
  self_cmd->add_option("--lexicon", lexicon, "Lexicon file");

  auto* extract_cmd = cli.add_subcommand("extract", "Extract statements from sentences");
  std::string sentences_path, gold_path;
  extract_cmd->add_option("--sentences", sentences_path, "Sentences JSONL")->required();
  extract_cmd->add_option("--out", out_path, "Output statements JSONL")->required();
  extract_cmd->add_option("--model", model, "Model bundle (JSON)");
  extract_cmd->add_option("--gold", gold_path, "Decode gold tags from a labeled TSV instead");
  extract_cmd->add_option("--lexicon", lexicon, "Lexicon file");

  auto* build_cmd = cli.add_subcommand("build-kg", "Build a knowledge graph from statements");
  std::vector<std::string> statement_paths;
  build_cmd->add_option("--statements", statement_paths, "Statements JSONL (repeatable)")
      ->required();
  build_cmd->add_option("--kg", kg_dir, "Output KG directory");

  auto* query_cmd = cli.add_subcommand("query", "Ego-graph query");
  std::string center, predicates, direction = "both";
  bool as_json = false;
  query_cmd->add_option("--kg", kg_dir, "KG directory");
  query_cmd->add_option("--concept", center, "Center concept")->required();
  query_cmd->add_option("--predicates", predicates, "Comma-separated predicate lemmas");
  query_cmd->add_option("--direction", direction, "in, out or both")
      ->check(CLI::IsMember({"in", "out", "both"}));
  query_cmd->add_option("--limit", limit, "Max edges (0 = all)");
  query_cmd->add_flag("--json", as_json, "Print JSON");

  auto* serve_cmd = cli.add_subcommand("serve", "Serve the read API");
  serve_cmd->add_option("--kg", kg_dir, "KG directory");
  serve_cmd->add_option("--addr", addr, "Bind address host:port");
  serve_cmd->add_option("--static", static_dir, "Static asset directory served at /");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << cli.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = cli.get_subcommands().empty() ? &cli : cli.get_subcommands().front();
    err << sub->help();
    return 1;
  }

  try {
    AppConfig cfg = config_path.empty() ? AppConfig{} : AppConfig::load(config_path);
    cfg.model = detail::pick(model, cfg.model);
    cfg.kg_dir = detail::pick(kg_dir, cfg.kg_dir);
    cfg.lexicon = detail::pick(lexicon, cfg.lexicon);
    cfg.epochs = detail::pick(epochs, cfg.epochs);
    cfg.seed = detail::pick(seed, cfg.seed);
    cfg.self_train.tau = detail::pick(tau, cfg.self_train.tau);
    cfg.self_train.cap = detail::pick(cap, cfg.self_train.cap);
    cfg.self_train.max_iters = detail::pick(max_iters, cfg.self_train.max_iters);
    cfg.self_train.min_new = detail::pick(min_new, cfg.self_train.min_new);
    cfg.self_train.epochs = cfg.epochs;
    cfg.self_train.seed = cfg.seed;
    cfg.addr = detail::pick(addr, cfg.addr);
    cfg.static_dir = detail::pick(static_dir, cfg.static_dir);

    if (*ingest_cmd) {
      const size_t n = ingest(corpus, out_path);
      err << "ingested " << n << " sentences\n";
      out << n << '\n';
      return 0;
    }

    if (*train_cmd) {
      detail::require(cfg.model, "--model");
      const auto data = read_labeled_tsv(labeled_path);
      const auto lex = detail::maybe_lexicon(cfg.lexicon);
      const Lexicon* lp = lex ? &*lex : nullptr;
      if (layer_opt == "both") {
        LayerModels m;
        m.fact = train(data, Layer::kFact, cfg.epochs, cfg.seed, lp);
        m.cond = train(data, Layer::kCondition, cfg.epochs, cfg.seed, lp);
        save_models(m, cfg.model);
        err << "fact token accuracy (train): " << token_accuracy(m.fact, data, lp) << "\n"
            << "condition token accuracy (train): " << token_accuracy(m.cond, data, lp) << "\n";
      } else {
        const Layer layer = parse_layer(layer_opt);
        auto m = train(data, layer, cfg.epochs, cfg.seed, lp);
        m.save(cfg.model);
        err << layer_name(layer) << " token accuracy (train): " << token_accuracy(m, data, lp)
            << "\n";
      }
      return 0;
    }

    if (*self_cmd) {
      detail::require(cfg.model, "--model");
      const auto seed_data = read_labeled_tsv(labeled_path);
      const auto pool = read_sentences(pool_path);
      const auto lex = detail::maybe_lexicon(cfg.lexicon);
      auto result = self_train(seed_data, pool, cfg.self_train, lex ? &*lex : nullptr);
      save_models({result.fact_model, result.cond_model}, cfg.model);
      const auto report = result.report.to_json();
      if (!report_path.empty()) {
        std::ofstream r(report_path, std::ios::binary);
        if (!r) throw DataError("cannot write " + report_path);
        r << report.dump(2) << '\n';
      }
      if (!augmented_path.empty()) write_labeled_tsv(augmented_path, result.augmented);
      err << "self-training: " << result.report.iterations.size() << " iteration(s), "
          << result.report.final_training_size << " training sentences\n";
      return 0;
    }

    if (*extract_cmd) {
      const auto sentences = read_sentences(sentences_path);
      std::vector<StatementRecord> records;
      if (!gold_path.empty()) {
        size_t missing = 0;
        records = extract_statements_gold(sentences, read_labeled_tsv(gold_path), &missing);
        if (missing) err << "warning: " << missing << " sentence(s) had no gold tags\n";
      } else {
        if (cfg.model.empty()) throw UsageError("extract needs --model or --gold");
        const auto models = load_models(cfg.model);
        const auto lex = detail::maybe_lexicon(cfg.lexicon);
        records = extract_statements(sentences, models.fact, models.cond, lex ? &*lex : nullptr);
      }
      write_statements(out_path, records);
      size_t facts = 0, warnings = 0;
      for (const auto& r : records) {
        facts += r.statement.facts.size();
        warnings += r.statement.warnings.size();
      }
      err << "extracted " << facts << " fact(s) from " << records.size() << " sentence(s)";
      if (warnings) err << ", " << warnings << " dropped tuple(s)";
      err << "\n";
      return 0;
    }

    if (*build_cmd) {
      detail::require(cfg.kg_dir, "--kg");
      KnowledgeGraph kg;
      for (const auto& p : statement_paths) kg.merge(build_kg(read_statements(p)));
      kg.check_integrity();
      save(kg, cfg.kg_dir);
      err << "knowledge graph: " << kg.nodes.size() << " concepts, " << kg.edges.size()
          << " fact edges\n";
      return 0;
    }

    if (*query_cmd) {
      detail::require(cfg.kg_dir, "--kg");
      const auto kg = load(cfg.kg_dir);
      std::set<std::string> preds;
      for (const auto& p : split(predicates, ',')) {
        if (!trim(p).empty()) preds.insert(trim(p));
      }
      const auto ego = kg.query_ego(center, preds, parse_direction(direction), limit.value_or(0));
      if (as_json) {
        out << to_json(ego).dump(2) << '\n';
      } else {
        print_ego_table(ego, out);
      }
      return 0;
    }

    if (*serve_cmd) {
      detail::require(cfg.kg_dir, "--kg");
      const auto kg = load(cfg.kg_dir);
      const auto [host, port] = api::parse_addr(cfg.addr);
      auto server = api::make_server(kg, cfg.static_dir);
      err << "serving " << cfg.kg_dir << " on http://" << host << ":" << port << "\n";
      if (!server->listen(host, port)) throw DataError("cannot bind " + cfg.addr);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"biocs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace biocs::app
