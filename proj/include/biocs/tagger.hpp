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

// Linear-chain sequence tagger over the 11 labels of one tag layer.
//
// A tag sequence y over feature vectors x scores
//
//   start[y_0] + sum_t emission(x_t, y_t) + sum_{t>0} transition[y_{t-1}][y_t]
//     + stop[y_{T-1}]
//
// where emission(x_t, y) sums the weights of the active features. Decoding
// returns the best sequence (lexicographically smallest label indices among
// ties) and the score of the best sequence that differs from it somewhere.
// Training is an averaged structured perceptron.

#pragma once

#include <array>
#include <concepts>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "biocs/common.hpp"
#include "biocs/features.hpp"
#include "biocs/tag_schema.hpp"
#include "json.hpp"

namespace biocs {

inline constexpr int kNumLabels = TagLabel::kCount;
inline constexpr const char* kModelVersion = "biocs-tagger-1";

using LabelScores = std::array<double, kNumLabels>;
using TransitionTable = std::array<LabelScores, kNumLabels>;  // [prev][next]

struct ModelConfig {
  std::string feature_templates = kFeatureTemplateSet;
  uint64_t seed = 0;
  int epochs = 0;
  int epochs_run = 0;
  bool lexicon = false;

  bool operator==(const ModelConfig&) const = default;
};

struct Prediction {
  TagSequence tags;
  double score_best = 0.0;
  double score_second = 0.0;
  double confidence = 0.0;
};

// m / (1 + m) with m the per-token margin between the two best sequences.
inline double margin_confidence(double best, double second, size_t length) {
  if (length == 0) return 0.0;
  const double m = std::max(0.0, (best - second) / static_cast<double>(length));
  return m / (1.0 + m);
}

// --- Chain decoding on dense score tables ------------------------------------

struct ChainScores {
  std::vector<LabelScores> emission;  // one row per position
  const TransitionTable* transition = nullptr;
  const LabelScores* start = nullptr;
  const LabelScores* stop = nullptr;
};

// Exact argmax with ties resolved towards the lexicographically smallest
// label-index sequence: suffix maxima are computed right to left, then labels
// are chosen greedily left to right.
inline std::vector<int> best_path(const ChainScores& cs) {
  const size_t n = cs.emission.size();
  std::vector<int> path(n, 0);
  if (n == 0) return path;
  const auto& tr = *cs.transition;
  std::vector<LabelScores> suffix(n);
  for (int y = 0; y < kNumLabels; ++y) suffix[n - 1][y] = cs.emission[n - 1][y] + (*cs.stop)[y];
  for (size_t t = n - 1; t-- > 0;) {
    for (int y = 0; y < kNumLabels; ++y) {
      double best = -std::numeric_limits<double>::infinity();
      for (int z = 0; z < kNumLabels; ++z) best = std::max(best, tr[y][z] + suffix[t + 1][z]);
      suffix[t][y] = cs.emission[t][y] + best;
    }
  }
  auto pick = [&](auto&& value) {
    int arg = 0;
    double best = value(0);
    for (int y = 1; y < kNumLabels; ++y) {
      const double v = value(y);
      if (v > best) {
        best = v;
        arg = y;
      }
    }
    return arg;
  };
  path[0] = pick([&](int y) { return (*cs.start)[y] + suffix[0][y]; });
  for (size_t t = 1; t < n; ++t) {
    const int prev = path[t - 1];
    path[t] = pick([&](int y) { return tr[prev][y] + suffix[t][y]; });
  }
  return path;
}

// Scores of the best and second-best complete sequences. Each state keeps
// its two best distinct partial paths, so the final two are distinct.
inline std::pair<double, double> two_best_scores(const ChainScores& cs) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const size_t n = cs.emission.size();
  struct Top2 {
    double a = kNegInf, b = kNegInf;
    void push(double v) {
      if (v > a) {
        b = a;
        a = v;
      } else if (v > b) {
        b = v;
      }
    }
  };
  std::vector<Top2> cur(kNumLabels), next(kNumLabels);
  for (int y = 0; y < kNumLabels; ++y) cur[y].push((*cs.start)[y] + cs.emission[0][y]);
  const auto& tr = *cs.transition;
  for (size_t t = 1; t < n; ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      Top2 acc;
      for (int z = 0; z < kNumLabels; ++z) {
        acc.push(cur[z].a + tr[z][y]);
        acc.push(cur[z].b + tr[z][y]);
      }
      acc.a += cs.emission[t][y];
      acc.b += cs.emission[t][y];
      next[y] = acc;
    }
    std::swap(cur, next);
  }
  Top2 total;
  for (int y = 0; y < kNumLabels; ++y) {
    total.push(cur[y].a + (*cs.stop)[y]);
    total.push(cur[y].b + (*cs.stop)[y]);
  }
  return {total.a, total.b};
}

// --- Model -------------------------------------------------------------------

class Model {
 public:
  Model() { clear(); }
  explicit Model(Layer layer) : layer_(layer) { clear(); }

  Layer layer() const { return layer_; }
  const ModelConfig& config() const { return config_; }
  ModelConfig& config() { return config_; }

  void clear() {
    emissions_.clear();
    for (auto& row : transitions_) row.fill(0.0);
    start_.fill(0.0);
    stop_.fill(0.0);
  }

  double& emission_weight(const std::string& feature, int label) {
    auto [it, inserted] = emissions_.try_emplace(feature);
    if (inserted) it->second.fill(0.0);
    return it->second[label];
  }
  double& transition(int prev, int next) { return transitions_[prev][next]; }
  double& start(int label) { return start_[label]; }
  double& stop(int label) { return stop_[label]; }

  const TransitionTable& transitions() const { return transitions_; }
  const LabelScores& start_weights() const { return start_; }
  const LabelScores& stop_weights() const { return stop_; }
  const std::unordered_map<std::string, LabelScores>& emissions() const { return emissions_; }

  LabelScores emission_scores(const FeatureVector& features) const {
    LabelScores s{};
    for (const auto& f : features) {
      auto it = emissions_.find(f);
      if (it == emissions_.end()) continue;
      for (int y = 0; y < kNumLabels; ++y) s[y] += it->second[y];
    }
    return s;
  }

  ChainScores chain(const std::vector<FeatureVector>& fvs) const {
    ChainScores cs{{}, &transitions_, &start_, &stop_};
    cs.emission.reserve(fvs.size());
    for (const auto& f : fvs) cs.emission.push_back(emission_scores(f));
    return cs;
  }

  Prediction predict(const Sentence& sentence, const Lexicon* lexicon = nullptr) const;

  // JSON with sorted keys; only non-zero weights are written.
  nlohmann::json to_json() const {
    static const auto labels = all_labels();
    nlohmann::json j;
    j["version"] = kModelVersion;
    j["layer"] = layer_name(layer_);
    auto label_list = nlohmann::json::array();
    for (const auto& l : labels) label_list.push_back(l.str());
    j["labels"] = label_list;
    const std::string sep = "\x01";
    auto em = nlohmann::json::object();
    for (const auto& [feat, row] : emissions_) {
      for (int y = 0; y < kNumLabels; ++y) {
        if (row[y] != 0.0) em[feat + sep + labels[y].str()] = row[y];
      }
    }
    j["emissions"] = std::move(em);
    auto tr = nlohmann::json::object();
    for (int a = 0; a < kNumLabels; ++a) {
      for (int b = 0; b < kNumLabels; ++b) {
        if (transitions_[a][b] != 0.0) tr[labels[a].str() + sep + labels[b].str()] = transitions_[a][b];
      }
    }
    j["transitions"] = std::move(tr);
    auto st = nlohmann::json::object(), sp = nlohmann::json::object();
    for (int y = 0; y < kNumLabels; ++y) {
      if (start_[y] != 0.0) st[labels[y].str()] = start_[y];
      if (stop_[y] != 0.0) sp[labels[y].str()] = stop_[y];
    }
    j["start"] = std::move(st);
    j["stop"] = std::move(sp);
    j["config"] = {{"feature_templates", config_.feature_templates},
                   {"seed", config_.seed},
                   {"epochs", config_.epochs},
                   {"epochs_run", config_.epochs_run},
                   {"lexicon", config_.lexicon}};
    return j;
  }

  static Model from_json(const nlohmann::json& j) {
    try {
      Model m(parse_layer(j.at("layer").get<std::string>()));
      const auto labels = all_labels();
      const auto& label_list = j.at("labels");
      if (!label_list.is_array() || label_list.size() != static_cast<size_t>(kNumLabels)) {
        throw DataError("model labels must list the 11 tags");
      }
      for (int y = 0; y < kNumLabels; ++y) {
        if (label_list[y].get<std::string>() != labels[y].str()) {
          throw DataError("model label " + std::to_string(y) + " is '" +
                          label_list[y].get<std::string>() + "', expected " + labels[y].str());
        }
      }
      auto split_key = [](const std::string& key) {
        auto pos = key.rfind('\x01');
        if (pos == std::string::npos) throw DataError("model key without separator: " + key);
        return std::make_pair(key.substr(0, pos), key.substr(pos + 1));
      };
      for (const auto& [key, w] : j.at("emissions").items()) {
        auto [feat, label] = split_key(key);
        m.emission_weight(feat, TagLabel::parse(label).index()) = w.get<double>();
      }
      for (const auto& [key, w] : j.at("transitions").items()) {
        auto [a, b] = split_key(key);
        m.transition(TagLabel::parse(a).index(), TagLabel::parse(b).index()) = w.get<double>();
      }
      for (const auto& [key, w] : j.at("start").items()) m.start(TagLabel::parse(key).index()) = w.get<double>();
      for (const auto& [key, w] : j.at("stop").items()) m.stop(TagLabel::parse(key).index()) = w.get<double>();
      if (j.contains("config")) {
        const auto& c = j["config"];
        m.config_.feature_templates = c.value("feature_templates", std::string(kFeatureTemplateSet));
        m.config_.seed = c.value("seed", uint64_t{0});
        m.config_.epochs = c.value("epochs", 0);
        m.config_.epochs_run = c.value("epochs_run", 0);
        m.config_.lexicon = c.value("lexicon", false);
      }
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed model: ") + e.what());
    }
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << to_json().dump(1) << '\n';
  }

  static Model load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": malformed JSON: " + e.what());
    }
    return from_json(j);
  }

 private:
  Layer layer_ = Layer::kFact;
  std::unordered_map<std::string, LabelScores> emissions_;
  TransitionTable transitions_{};
  LabelScores start_{};
  LabelScores stop_{};
  ModelConfig config_;
};

// Anything that tags a sentence and reports a margin-based prediction can
// stand in for the perceptron model.
template <typename B>
concept TaggerBackend = requires(const B& backend, const Sentence& s, const Lexicon* lex) {
  { backend.predict(s, lex) } -> std::same_as<Prediction>;
  { backend.layer() } -> std::same_as<Layer>;
};

// --- Scoring and decoding ----------------------------------------------------

inline double score_sequence(const Model& model, const std::vector<FeatureVector>& fvs,
                             const TagSequence& tags) {
  if (fvs.size() != tags.size()) {
    throw DataError("score_sequence: " + std::to_string(fvs.size()) + " feature vectors vs " +
                    std::to_string(tags.size()) + " tags");
  }
  if (tags.empty()) return 0.0;
  double total = model.start_weights()[tags.front().index()] +
                 model.stop_weights()[tags.back().index()];
  for (size_t t = 0; t < tags.size(); ++t) {
    total += model.emission_scores(fvs[t])[tags[t].index()];
    if (t > 0) total += model.transitions()[tags[t - 1].index()][tags[t].index()];
  }
  return total;
}

// Raw argmax tags (no BIO repair) plus the two-best margin.
inline Prediction viterbi_2best(const Model& model, const std::vector<FeatureVector>& fvs) {
  if (fvs.empty()) throw DataError("viterbi_2best: empty input");
  const ChainScores cs = model.chain(fvs);
  Prediction p;
  for (int y : best_path(cs)) p.tags.push_back(TagLabel::from_index(y));
  std::tie(p.score_best, p.score_second) = two_best_scores(cs);
  p.confidence = margin_confidence(p.score_best, p.score_second, fvs.size());
  return p;
}

inline Prediction Model::predict(const Sentence& sentence, const Lexicon* lexicon) const {
  return viterbi_2best(*this, extract(sentence, lexicon));
}

inline Prediction predict(const Model& model, const Sentence& sentence,
                          const Lexicon* lexicon = nullptr) {
  return model.predict(sentence, lexicon);
}

static_assert(TaggerBackend<Model>);

// --- Training ----------------------------------------------------------------

struct TrainOptions {
  int epochs = 20;
  uint64_t seed = 0;
  const Lexicon* lexicon = nullptr;
  // Stop once an epoch makes no mistakes.
  bool stop_when_separated = false;
};

namespace detail {

// Weight vector with the lazy-averaging accumulator: after c examples the
// averaged weight is w - acc / c.
struct AveragedWeight {
  double w = 0.0;
  double acc = 0.0;
  void add(double delta, double step) {
    w += delta;
    acc += step * delta;
  }
  double averaged(double steps) const { return w - acc / steps; }
};

using AveragedRow = std::array<AveragedWeight, kNumLabels>;

}  // namespace detail

// Averaged structured perceptron. Per example the current weights decode a
// path; on any mismatch gold-path components gain +1 and predicted-path
// components lose 1. The returned model holds the weights averaged over every
// example visit. Example order is reshuffled each epoch from `seed`.
inline Model train(const std::vector<LabeledSentence>& data, Layer layer,
                   const TrainOptions& opts) {
  if (data.empty()) throw DataError("train: empty training set");
  if (opts.epochs <= 0) throw DataError("train: epochs must be positive");

  // Feature interning keeps the inner loop on dense rows.
  std::unordered_map<std::string, int> feature_ids;
  std::vector<std::string> feature_names;
  std::vector<std::vector<std::vector<int>>> features(data.size());
  std::vector<std::vector<int>> gold(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& ls = data[i];
    const auto& tags = ls.tags(layer);
    const std::string name = ls.sentence.doc_id + "#" + std::to_string(ls.sentence.sent_index);
    if (tags.size() != ls.sentence.tokens.size()) {
      throw DataError("train: sentence " + name + " has " + std::to_string(tags.size()) +
                      " tags for " + std::to_string(ls.sentence.tokens.size()) + " tokens");
    }
    if (tags.empty()) throw DataError("train: sentence " + name + " is empty");
    if (!is_bio_valid(tags)) throw DataError("train: sentence " + name + " is not BIO-valid");
    for (const auto& fv : extract(ls.sentence, opts.lexicon)) {
      std::vector<int> ids;
      ids.reserve(fv.size());
      for (const auto& f : fv) {
        auto [it, inserted] = feature_ids.try_emplace(f, static_cast<int>(feature_names.size()));
        if (inserted) feature_names.push_back(f);
        ids.push_back(it->second);
      }
      features[i].push_back(std::move(ids));
    }
    for (const auto& t : tags) gold[i].push_back(t.index());
  }

  std::vector<detail::AveragedRow> emission(feature_names.size());
  std::array<detail::AveragedRow, kNumLabels> transition{};
  detail::AveragedRow start{}, stop{};

  // Current (non-averaged) weights mirrored into dense tables for decoding.
  TransitionTable cur_tr{};
  LabelScores cur_start{}, cur_stop{};

  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(opts.seed);
  double step = 1.0;
  int epochs_run = 0;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    shuffle(order, rng);
    size_t mistakes = 0;
    for (size_t idx : order) {
      const auto& fx = features[idx];
      const auto& y = gold[idx];
      const size_t n = y.size();
      ChainScores cs{{}, &cur_tr, &cur_start, &cur_stop};
      cs.emission.resize(n);
      for (size_t t = 0; t < n; ++t) {
        LabelScores s{};
        for (int f : fx[t]) {
          for (int l = 0; l < kNumLabels; ++l) s[l] += emission[f][l].w;
        }
        cs.emission[t] = s;
      }
      const auto pred = best_path(cs);
      if (pred != y) {
        ++mistakes;
        for (size_t t = 0; t < n; ++t) {
          if (pred[t] != y[t]) {
            for (int f : fx[t]) {
              emission[f][y[t]].add(1.0, step);
              emission[f][pred[t]].add(-1.0, step);
            }
          }
          if (t > 0 && (pred[t - 1] != y[t - 1] || pred[t] != y[t])) {
            transition[y[t - 1]][y[t]].add(1.0, step);
            transition[pred[t - 1]][pred[t]].add(-1.0, step);
            cur_tr[y[t - 1]][y[t]] += 1.0;
            cur_tr[pred[t - 1]][pred[t]] -= 1.0;
          }
        }
        if (pred.front() != y.front()) {
          start[y.front()].add(1.0, step);
          start[pred.front()].add(-1.0, step);
          cur_start[y.front()] += 1.0;
          cur_start[pred.front()] -= 1.0;
        }
        if (pred.back() != y.back()) {
          stop[y.back()].add(1.0, step);
          stop[pred.back()].add(-1.0, step);
          cur_stop[y.back()] += 1.0;
          cur_stop[pred.back()] -= 1.0;
        }
      }
      step += 1.0;
    }
    ++epochs_run;
    if (opts.stop_when_separated && mistakes == 0) break;
  }

  Model model(layer);
  for (size_t f = 0; f < feature_names.size(); ++f) {
    for (int l = 0; l < kNumLabels; ++l) {
      const double w = emission[f][l].averaged(step);
      if (w != 0.0) model.emission_weight(feature_names[f], l) = w;
    }
  }
  for (int a = 0; a < kNumLabels; ++a) {
    for (int b = 0; b < kNumLabels; ++b) model.transition(a, b) = transition[a][b].averaged(step);
    model.start(a) = start[a].averaged(step);
    model.stop(a) = stop[a].averaged(step);
  }
  model.config().seed = opts.seed;
  model.config().epochs = opts.epochs;
  model.config().epochs_run = epochs_run;
  model.config().lexicon = opts.lexicon != nullptr && !opts.lexicon->empty();
  return model;
}

inline Model train(const std::vector<LabeledSentence>& data, Layer layer, int epochs,
                   uint64_t seed, const Lexicon* lexicon = nullptr) {
  TrainOptions opts;
  opts.epochs = epochs;
  opts.seed = seed;
  opts.lexicon = lexicon;
  return train(data, layer, opts);
}

// Fraction of tokens whose predicted label (raw argmax) equals the gold label.
inline double token_accuracy(const Model& model, const std::vector<LabeledSentence>& data,
                             const Lexicon* lexicon = nullptr) {
  size_t total = 0, correct = 0;
  for (const auto& ls : data) {
    if (ls.sentence.tokens.empty()) continue;
    const auto p = model.predict(ls.sentence, lexicon);
    const auto& gold = ls.tags(model.layer());
    for (size_t t = 0; t < gold.size(); ++t) {
      ++total;
      if (p.tags[t] == gold[t]) ++correct;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace biocs
