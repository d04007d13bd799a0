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

// Iterative self-training over an unlabeled sentence pool.
//
// Each iteration trains the fact and condition models on the current
// training set, tags every pool sentence with both, and promotes the most
// confident sentences (confidence = min over the two layers, at least tau,
// at most `cap` of them) into the training set with their predicted tags.
// Promotion is permanent. The loop ends after `max_iters` iterations or when
// fewer than `min_new` sentences were promoted.

#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "biocs/parallel.hpp"
#include "biocs/tagger.hpp"
#include "json.hpp"

namespace biocs {

struct SelfTrainParams {
  double tau = 0.6;
  int cap = 500;
  int max_iters = 5;
  int min_new = 10;
  int epochs = 20;
  uint64_t seed = 0;

  void validate() const {
    if (!(tau > 0.0 && tau < 1.0)) throw DataError("self-training: tau must lie in (0,1)");
    if (cap <= 0 || max_iters <= 0 || min_new <= 0 || epochs <= 0) {
      throw DataError("self-training: cap, max_iters, min_new and epochs must be positive");
    }
  }
};

struct Promotion {
  std::string doc_id;
  int sent_index = 0;
  double confidence = 0.0;
  double fact_confidence = 0.0;
  double cond_confidence = 0.0;
};

struct IterationRecord {
  int iteration = 0;
  int training_size = 0;  // size the models of this iteration were trained on
  int promoted_count = 0;
  int pool_remaining = 0;
  double mean_confidence = 0.0;  // over all pool sentences tagged this round
  std::vector<Promotion> promoted;
};

struct SelfTrainReport {
  SelfTrainParams params;
  std::vector<IterationRecord> iterations;
  int final_training_size = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["params"] = {{"tau", params.tau},       {"cap", params.cap},
                   {"max_iters", params.max_iters}, {"min_new", params.min_new},
                   {"epochs", params.epochs}, {"seed", params.seed}};
    auto iters = nlohmann::json::array();
    for (const auto& it : iterations) {
      auto promoted = nlohmann::json::array();
      for (const auto& p : it.promoted) {
        promoted.push_back({{"doc_id", p.doc_id},
                            {"sent_index", p.sent_index},
                            {"confidence", p.confidence},
                            {"fact_confidence", p.fact_confidence},
                            {"condition_confidence", p.cond_confidence}});
      }
      iters.push_back({{"iteration", it.iteration},
                       {"training_size", it.training_size},
                       {"promoted_count", it.promoted_count},
                       {"pool_remaining", it.pool_remaining},
                       {"mean_confidence", it.mean_confidence},
                       {"promoted", std::move(promoted)}});
    }
    j["iterations"] = std::move(iters);
    j["final_training_size"] = final_training_size;
    return j;
  }
};

struct SelfTrainResult {
  Model fact_model;
  Model cond_model;
  std::vector<LabeledSentence> augmented;
  SelfTrainReport report;
};

inline SelfTrainResult self_train(const std::vector<LabeledSentence>& seed_labeled,
                                  std::vector<Sentence> pool, const SelfTrainParams& params,
                                  const Lexicon* lexicon = nullptr) {
  params.validate();
  if (seed_labeled.empty()) throw DataError("self-training: empty seed set");

  SelfTrainResult result;
  result.report.params = params;
  result.augmented = seed_labeled;
  pool.erase(std::remove_if(pool.begin(), pool.end(),
                            [](const Sentence& s) { return s.tokens.empty(); }),
             pool.end());

  auto fit = [&](Layer layer) {
    return train(result.augmented, layer, params.epochs, params.seed, lexicon);
  };
  bool models_current = false;

  for (int iter = 1; iter <= params.max_iters; ++iter) {
    result.fact_model = fit(Layer::kFact);
    result.cond_model = fit(Layer::kCondition);
    models_current = true;

    IterationRecord rec;
    rec.iteration = iter;
    rec.training_size = static_cast<int>(result.augmented.size());

    struct Scored {
      size_t index;
      Prediction fact;
      Prediction cond;
      double confidence;
    };
    std::vector<size_t> indices(pool.size());
    for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    auto scored = parallel_map(indices, [&](size_t i) {
      Scored s{i, result.fact_model.predict(pool[i], lexicon),
               result.cond_model.predict(pool[i], lexicon), 0.0};
      s.confidence = std::min(s.fact.confidence, s.cond.confidence);
      return s;
    });

    double sum = 0.0;
    for (const auto& s : scored) sum += s.confidence;
    rec.mean_confidence = scored.empty() ? 0.0 : sum / static_cast<double>(scored.size());

    std::vector<const Scored*> eligible;
    for (const auto& s : scored) {
      if (s.confidence >= params.tau) eligible.push_back(&s);
    }
    std::sort(eligible.begin(), eligible.end(), [&](const Scored* a, const Scored* b) {
      if (a->confidence != b->confidence) return a->confidence > b->confidence;
      const auto& sa = pool[a->index];
      const auto& sb = pool[b->index];
      return std::tie(sa.doc_id, sa.sent_index) < std::tie(sb.doc_id, sb.sent_index);
    });
    if (eligible.size() > static_cast<size_t>(params.cap)) eligible.resize(params.cap);

    std::vector<bool> taken(pool.size(), false);
    for (const Scored* s : eligible) {
      const Sentence& sent = pool[s->index];
      result.augmented.push_back(
          {sent, repair_bio(s->fact.tags), repair_bio(s->cond.tags)});
      rec.promoted.push_back({sent.doc_id, sent.sent_index, s->confidence,
                              s->fact.confidence, s->cond.confidence});
      taken[s->index] = true;
    }
    if (!eligible.empty()) models_current = false;

    std::vector<Sentence> remaining;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (!taken[i]) remaining.push_back(std::move(pool[i]));
    }
    pool = std::move(remaining);

    rec.promoted_count = static_cast<int>(rec.promoted.size());
    rec.pool_remaining = static_cast<int>(pool.size());
    result.report.iterations.push_back(std::move(rec));

    if (result.report.iterations.back().promoted_count < params.min_new) break;
  }

  if (!models_current) {
    result.fact_model = fit(Layer::kFact);
    result.cond_model = fit(Layer::kCondition);
  }
  result.report.final_training_size = static_cast<int>(result.augmented.size());
  return result;
}

}  // namespace biocs
