// fusion/fusion.h

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

#ifndef DELTADEC_FUSION_FUSION_H_
#define DELTADEC_FUSION_FUSION_H_

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "lm/ngram-model.h"
#include "nnet/lstm.h"

namespace deltadec {

// On-the-fly delta grammar: the decoding graph carries -log P_G' on its
// word arcs, the session returns per-word corrections
//
//   delta = [lambda_n log P_G + lambda_l s_lstm] negated, plus log P_G'
//
// so graph cost + delta accumulates the log-linear fusion of the full
// n-gram model with the neural score, and the pruned model cancels out.
struct FusionConfig {
  enum class Interp { kLogLinear, kLinear };
  Interp interpolation = Interp::kLogLinear;  // linear is reserved, rejected
  double ngram_weight = 0.5;
  double lstm_weight = 0.5;
  bool use_unnormalized = true;
  // History-recombination order consumed by the decoder; -1 means infinity
  // (merge only identical full histories).  Cache keys stay exact-history
  // regardless.
  int ngram_approx_n = -1;
  int batch_size = 16;
  bool cache_enabled = true;

  void Validate() const;
};

struct CacheStats {
  int64 l1_hits = 0;
  int64 l2_hits = 0;
  int64 l3_hits = 0;
  int64 full_forwards = 0;
};

// Per-hypothesis scorer state: truncated n-gram histories plus a handle into
// the session's exact-history trie.  Values are cheap to copy; the neural
// vectors live in the session cache, keyed by the handle.
struct FusionState {
  std::vector<int32> g_hist;   // at most order(G)-1 trailing words
  std::vector<int32> gp_hist;  // suffix truncation of g_hist
  int32 node = 0;
};

struct FusedScore {
  double delta_cost = 0.0;
  FusionState next;
};

// One session per utterance decode; not shared across concurrent decodes.
// Graph, models and config are shared immutable inputs.  The three cache
// levels follow the history-vector caching scheme: fused scores keyed by
// (history, word), final-hidden outputs keyed by history, recurrent vectors
// keyed by history; misses fall back to replaying from the nearest cached
// ancestor, ultimately the utterance-initial state.
class FusionSession {
 public:
  // `initial` is the utterance-start neural state: context utterances and the
  // leading <s> already consumed as the protocol dictates.  May be the
  // default-constructed zero state when lstm_weight is 0.
  FusionSession(const NGramModel& g, const NGramModel& gp, const LstmModelF* lstm,
                const FusionConfig& cfg, LmStateF initial);

  FusionState StartState() const;

  FusedScore ScoreWord(const FusionState& st, int32 word);
  FusedScore ScoreEnd(const FusionState& st);  // </s> delta for final weights

  // Identical results to per-request ScoreWord; neural work is grouped in
  // chunks of cfg.batch_size with duplicates served from the caches.
  std::vector<FusedScore> ScoreBatch(
      const std::vector<std::pair<FusionState, int32>>& requests);

  // Accumulated fused LM cost of a whole utterance (no acoustic part):
  // per-word G' cost plus delta, then the </s> terms; mirrors first-pass
  // accumulation so rescored totals match within rounding.
  double SentenceFusedLmCost(std::span<const int32> words);

  const CacheStats& Stats() const { return stats_; }
  const FusionConfig& Config() const { return cfg_; }
  const NGramModel& FullModel() const { return g_; }
  const NGramModel& PrunedModel() const { return gp_; }

 private:
  struct TrieNode {
    int32 parent = -1;
    int32 word = -1;
  };
  struct Recurrent {
    std::vector<VecX<float>> h, c;
  };

  int32 Child(int32 node, int32 word);
  double LstmLogScore(int32 node, int32 word);
  // Final-hidden vector after the node's history, through the cache cascade.
  VecX<float> ResolveSbar(int32 node);
  Recurrent ResolveRecurrent(int32 node);

  const NGramModel& g_;
  const NGramModel& gp_;
  const LstmModelF* lstm_;
  FusionConfig cfg_;
  LmStateF initial_;
  std::vector<TrieNode> nodes_;
  std::map<std::pair<int32, int32>, int32> children_;
  std::unordered_map<int64, double> l1_;
  std::unordered_map<int32, VecX<float>> l2_;
  std::unordered_map<int32, Recurrent> l3_;
  CacheStats stats_;
};

}  // namespace deltadec

#endif  // DELTADEC_FUSION_FUSION_H_
