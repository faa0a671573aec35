// fusion/fusion.cc

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

#include "fusion/fusion.h"

#include <algorithm>
#include <set>

namespace deltadec {

void FusionConfig::Validate() const {
  if (interpolation == Interp::kLinear)
    throw ConfigError("linear interpolation is reserved but not implemented");
  if (ngram_weight < 0 || lstm_weight < 0)
    throw ConfigError("interpolation weights must be >= 0");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (ngram_approx_n != -1 && ngram_approx_n < 1)
    throw ConfigError("ngram_approx_n must be >= 1 or -1 for infinity");
}

namespace {

void AppendTruncated(std::vector<int32>* hist, int32 word, int keep) {
  hist->push_back(word);
  if (static_cast<int>(hist->size()) > keep)
    hist->erase(hist->begin(), hist->end() - keep);
}

}  // namespace

FusionSession::FusionSession(const NGramModel& g, const NGramModel& gp,
                             const LstmModelF* lstm, const FusionConfig& cfg,
                             LmStateF initial)
    : g_(g), gp_(gp), lstm_(lstm), cfg_(cfg), initial_(std::move(initial)) {
  cfg_.Validate();
  if (!(g_.Vocab() == gp_.Vocab()))
    throw ConfigError("fusion models must share one vocabulary");
  if (cfg_.lstm_weight != 0.0) {
    if (lstm_ == nullptr)
      throw ConfigError("lstm_weight > 0 requires a neural model");
    if (lstm_->cfg.vocab_size != g_.Vocab().Symbols()->Size())
      throw ConfigError("neural model vocabulary size mismatch");
  }
  nodes_.push_back(TrieNode{});  // root: the utterance-initial history
  if (cfg_.cache_enabled && cfg_.lstm_weight != 0.0) {
    if (!initial_.h.empty()) l3_.emplace(0, Recurrent{initial_.h, initial_.c});
    if (initial_.SbarDefined()) l2_.emplace(0, initial_.sbar);
  }
}

FusionState FusionSession::StartState() const {
  FusionState st;
  int keep_g = g_.Order() - 1, keep_gp = gp_.Order() - 1;
  if (keep_g > 0) st.g_hist.push_back(g_.Vocab().Bos());
  if (keep_gp > 0) st.gp_hist.push_back(gp_.Vocab().Bos());
  return st;
}

int32 FusionSession::Child(int32 node, int32 word) {
  auto key = std::make_pair(node, word);
  auto it = children_.find(key);
  if (it != children_.end()) return it->second;
  int32 id = static_cast<int32>(nodes_.size());
  nodes_.push_back(TrieNode{node, word});
  children_.emplace(key, id);
  return id;
}

FusionSession::Recurrent FusionSession::ResolveRecurrent(int32 node) {
  if (node == 0) {
    if (initial_.h.empty())
      throw ContractError("fusion session has no neural initial state");
    return Recurrent{initial_.h, initial_.c};
  }
  if (cfg_.cache_enabled) {
    auto it = l3_.find(node);
    if (it != l3_.end()) return it->second;
  }
  // Replay from the nearest cached ancestor (the utterance-initial state in
  // the worst case), filling the caches on the way back down.
  std::vector<int32> words;
  int32 cur = node;
  Recurrent rec;
  for (;;) {
    if (cur == 0) {
      if (initial_.h.empty())
        throw ContractError("fusion session has no neural initial state");
      rec = Recurrent{initial_.h, initial_.c};
      break;
    }
    if (cfg_.cache_enabled) {
      auto it = l3_.find(cur);
      if (it != l3_.end()) {
        rec = it->second;
        break;
      }
    }
    words.push_back(nodes_[cur].word);
    cur = nodes_[cur].parent;
  }
  for (size_t i = words.size(); i-- > 0;) {
    StepVectors(*lstm_, &rec.h, &rec.c, words[i]);
    cur = Child(cur, words[i]);
    if (cfg_.cache_enabled) {
      l3_.emplace(cur, rec);
      l2_.emplace(cur, rec.h.back());
    }
  }
  return rec;
}

VecX<float> FusionSession::ResolveSbar(int32 node) {
  if (cfg_.cache_enabled) {
    auto it = l2_.find(node);
    if (it != l2_.end()) {
      ++stats_.l2_hits;
      return it->second;
    }
  }
  if (node == 0) {
    if (!initial_.SbarDefined())
      throw ContractError("scoring from a state that never consumed a token");
    return initial_.sbar;
  }
  int32 parent = nodes_[node].parent;
  int32 word = nodes_[node].word;
  Recurrent rec;
  if (cfg_.cache_enabled && l3_.count(parent) > 0) {
    ++stats_.l3_hits;
    rec = l3_.at(parent);
  } else {
    ++stats_.full_forwards;
    rec = ResolveRecurrent(parent);
  }
  StepVectors(*lstm_, &rec.h, &rec.c, word);
  VecX<float> sbar = rec.h.back();
  if (cfg_.cache_enabled) {
    l3_.emplace(node, std::move(rec));
    l2_.emplace(node, sbar);
  }
  return sbar;
}

double FusionSession::LstmLogScore(int32 node, int32 word) {
  VecX<float> sbar = ResolveSbar(node);
  double logit = OutputLogit(*lstm_, sbar, word);
  if (cfg_.use_unnormalized) return logit;
  return logit - OutputLogSumExp(*lstm_, sbar);
}

FusedScore FusionSession::ScoreWord(const FusionState& st, int32 word) {
  const Vocabulary& v = g_.Vocab();
  if (word == v.Bos()) throw ContractError("<s> is never a prediction target");

  FusedScore out;
  out.next.g_hist = st.g_hist;
  out.next.gp_hist = st.gp_hist;
  AppendTruncated(&out.next.g_hist, word, g_.Order() - 1);
  AppendTruncated(&out.next.gp_hist, word, gp_.Order() - 1);
  out.next.node = Child(st.node, word);

  int64 key = static_cast<int64>(st.node) *
                  static_cast<int64>(v.Symbols()->Size()) +
              word;
  if (cfg_.cache_enabled) {
    auto it = l1_.find(key);
    if (it != l1_.end()) {
      ++stats_.l1_hits;
      out.delta_cost = it->second;
      return out;
    }
  }
  double fused_log = 0.0;
  if (cfg_.ngram_weight != 0.0)
    fused_log += cfg_.ngram_weight * g_.LogProb(st.g_hist, word);
  if (cfg_.lstm_weight != 0.0)
    fused_log += cfg_.lstm_weight * LstmLogScore(st.node, word);
  double lp_gp = gp_.LogProb(st.gp_hist, word);
  out.delta_cost = lp_gp - fused_log;
  if (cfg_.cache_enabled) l1_.emplace(key, out.delta_cost);
  return out;
}

FusedScore FusionSession::ScoreEnd(const FusionState& st) {
  return ScoreWord(st, g_.Vocab().Eos());
}

std::vector<FusedScore> FusionSession::ScoreBatch(
    const std::vector<std::pair<FusionState, int32>>& requests) {
  std::vector<FusedScore> results;
  results.reserve(requests.size());
  const int64 vs = g_.Vocab().Symbols()->Size();
  for (size_t begin = 0; begin < requests.size();
       begin += static_cast<size_t>(cfg_.batch_size)) {
    size_t end = std::min(requests.size(), begin + static_cast<size_t>(cfg_.batch_size));
    if (cfg_.cache_enabled && cfg_.lstm_weight != 0.0) {
      // Group the chunk's outstanding neural work: resolve each distinct
      // history once, then the per-request pass below feeds off the caches.
      std::set<int32> pending;
      for (size_t i = begin; i < end; ++i) {
        const auto& [st, word] = requests[i];
        if (l1_.count(static_cast<int64>(st.node) * vs + word)) continue;
        if (pending.insert(st.node).second) ResolveSbar(st.node);
      }
    }
    for (size_t i = begin; i < end; ++i)
      results.push_back(ScoreWord(requests[i].first, requests[i].second));
  }
  return results;
}

double FusionSession::SentenceFusedLmCost(std::span<const int32> words) {
  FusionState st = StartState();
  double cost = 0.0;
  for (int32 w : words) {
    cost += -gp_.LogProb(st.gp_hist, w);
    FusedScore fs = ScoreWord(st, w);
    cost += fs.delta_cost;
    st = fs.next;
  }
  cost += -gp_.LogProb(st.gp_hist, gp_.Vocab().Eos());
  cost += ScoreEnd(st).delta_cost;
  return cost;
}

}  // namespace deltadec
