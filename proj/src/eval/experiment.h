// eval/experiment.h

// Copyright 2026  Deltadec Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DELTADEC_EVAL_EXPERIMENT_H_
#define DELTADEC_EVAL_EXPERIMENT_H_

#include <nlohmann/json.hpp>

#include "decoder/rescore.h"
#include "eval/perplexity.h"
#include "eval/wer.h"

namespace deltadec {

// Everything one experiment run consumes.  Frames are synthesized internally
// from the sim spec (seeded per utterance), so a run is a pure function of
// its inputs.
struct ExperimentInputs {
  SimSpec sim;
  std::vector<Conversation> test_corpus;
  const NGramModel* g = nullptr;
  const NGramModel* gp = nullptr;
  const DecodingGraph* graph = nullptr;
  const Lexicon* lexicon = nullptr;
  const LstmModel* lstm = nullptr;  // double precision; decode uses a float cast
  FusionConfig fusion;
  DecodeConfig decode;
  int second_pass_nbest = 100;
  std::vector<int> k_values = {0, 1, 2, 4, -1};
  uint64 shuffle_seed = 7;
  int jobs = 1;
};

// Frame synthesis seed shared by `gen --frames-dir` and the experiment
// driver, so file-based and in-process decodes see identical inputs.
uint64 UtteranceFrameSeed(uint64 corpus_seed, const std::string& session_id, int order);

// Perplexity grid, first-pass/second-pass WER grids, and per-utterance
// first-vs-rescored cost comparisons, as an ordered JSON report with one row
// per (table, k, source, with_s, pass) cell.  Deterministic given seeds,
// regardless of the job count.
nlohmann::ordered_json RunContextExperiment(const ExperimentInputs& inputs);

std::string ReportToTsv(const nlohmann::ordered_json& report);

}  // namespace deltadec

#endif  // DELTADEC_EVAL_EXPERIMENT_H_
