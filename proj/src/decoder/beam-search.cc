// decoder/beam-search.cc

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

#include "decoder/beam-search.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace deltadec {

void DecodeConfig::Validate() const {
  if (beam <= 0) throw ConfigError("beam must be > 0");
  if (nbest < 1) throw ConfigError("nbest must be >= 1");
  if (frames_per_symbol < 1) throw ConfigError("frames_per_symbol must be >= 1");
  if (ngram_approx_n != -1 && ngram_approx_n < 1)
    throw ConfigError("ngram_approx_n must be >= 1 or -1 for infinity");
  if (max_active < 0) throw ConfigError("max_active must be >= 0");
}

namespace {

struct Token {
  int32 state = -1;
  FusionState fstate;
  std::vector<int32> words;
  double ac = 0.0;
  double lm = 0.0;

  double Total() const { return ac + lm; }
};

bool TokenBetter(const Token& a, const Token& b) {
  double ta = a.Total(), tb = b.Total();
  if (ta != tb) return ta < tb;
  if (a.state != b.state) return a.state < b.state;
  return a.words < b.words;
}

std::vector<int32> RecombKey(const Token& t, int n) {
  std::vector<int32> key;
  size_t keep = n < 0 ? t.words.size()
                      : std::min(t.words.size(), static_cast<size_t>(n - 1));
  key.reserve(keep + 1);
  key.push_back(t.state);
  key.insert(key.end(), t.words.end() - keep, t.words.end());
  return key;
}

}  // namespace

DecodeResult Decode(const DecodingGraph& graph, const FrameMatrix& frames,
                    FusionSession* fusion, const DecodeConfig& cfg) {
  cfg.Validate();
  if (frames.rows == 0) throw InputError("decode called with zero acoustic frames");
  if (frames.cols != graph.phones->Size())
    throw InputError("frame matrix has " + std::to_string(frames.cols) +
                     " symbol columns, graph expects " +
                     std::to_string(graph.phones->Size()));
  if (frames.rows % cfg.frames_per_symbol != 0)
    throw InputError("frame count is not a multiple of frames_per_symbol");

  DecodeResult result;
  if (graph.fst.NumStates() == 0 || graph.fst.Start() < 0) {
    result.stats.diagnostic = "empty decoding graph";
    return result;
  }

  const int64 num_steps = frames.rows / cfg.frames_per_symbol;
  std::vector<Token> active;
  {
    Token init;
    init.state = graph.fst.Start();
    if (fusion != nullptr) init.fstate = fusion->StartState();
    active.push_back(std::move(init));
  }

  struct Cand {
    size_t token_index;
    const Arc* arc;
    double ac_add;
    int64 request = -1;
  };

  std::vector<double> block_cost;
  for (int64 step = 0; step < num_steps; ++step) {
    const int64 base = step * cfg.frames_per_symbol;
    block_cost.assign(frames.cols, std::nan(""));
    auto symbol_block_cost = [&](int32 sym) {
      double& cached = block_cost[sym];
      if (std::isnan(cached)) {
        double acc = 0.0;
        for (int f = 0; f < cfg.frames_per_symbol; ++f)
          acc += frames.At(base + f, sym);
        cached = acc;
      }
      return cached;
    };

    std::vector<Cand> cands;
    std::vector<std::pair<FusionState, int32>> requests;
    for (size_t ti = 0; ti < active.size(); ++ti) {
      for (const Arc& arc : graph.fst.Arcs(active[ti].state)) {
        Cand c{ti, &arc, symbol_block_cost(arc.ilabel), -1};
        if (arc.olabel != kEpsLabel && fusion != nullptr) {
          c.request = static_cast<int64>(requests.size());
          requests.emplace_back(active[ti].fstate, arc.olabel);
        }
        cands.push_back(c);
      }
    }
    std::vector<FusedScore> scores;
    if (fusion != nullptr && !requests.empty()) scores = fusion->ScoreBatch(requests);

    std::map<std::vector<int32>, Token> merged;
    for (const Cand& c : cands) {
      const Token& src = active[c.token_index];
      Token child;
      child.state = c.arc->next;
      child.ac = src.ac + c.ac_add;
      child.lm = src.lm + c.arc->cost;
      child.words = src.words;
      child.fstate = src.fstate;
      if (c.arc->olabel != kEpsLabel) {
        child.words.push_back(c.arc->olabel);
        if (fusion != nullptr) {
          child.lm += scores[c.request].delta_cost;
          child.fstate = scores[c.request].next;
        }
      }
      std::vector<int32> key = RecombKey(child, cfg.ngram_approx_n);
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(std::move(key), std::move(child));
      else if (TokenBetter(child, it->second))
        it->second = std::move(child);
    }

    active.clear();
    active.reserve(merged.size());
    for (auto& [key, tok] : merged) active.push_back(std::move(tok));
    if (active.empty()) {
      result.stats.diagnostic =
          "all tokens pruned at frame " + std::to_string(base);
      if (fusion != nullptr) result.stats.cache = fusion->Stats();
      return result;
    }
    std::sort(active.begin(), active.end(), TokenBetter);
    const double cutoff = active.front().Total() + cfg.beam;
    while (!active.empty() && active.back().Total() > cutoff) active.pop_back();
    if (cfg.max_active > 0 && static_cast<int>(active.size()) > cfg.max_active)
      active.resize(cfg.max_active);
    result.stats.tokens_per_step.push_back(static_cast<int64>(active.size()));
  }

  std::vector<Hypothesis> hyps;
  for (const Token& tok : active) {
    double final_cost = graph.fst.Final(tok.state);
    if (final_cost == kInfCost) continue;
    double lm = tok.lm + final_cost;
    if (fusion != nullptr) lm += fusion->ScoreEnd(tok.fstate).delta_cost;
    Hypothesis h;
    h.words = tok.words;
    h.acoustic_cost = tok.ac;
    h.lm_cost = lm;
    h.total_cost = tok.ac + lm;
    hyps.push_back(std::move(h));
  }
  if (hyps.empty() && result.stats.diagnostic.empty())
    result.stats.diagnostic = "no surviving token reached a final state";

  std::sort(hyps.begin(), hyps.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
    return a.words < b.words;
  });
  std::set<std::vector<int32>> seen;
  for (auto& h : hyps) {
    if (static_cast<int>(result.nbest.size()) >= cfg.nbest) break;
    if (seen.insert(h.words).second) result.nbest.push_back(std::move(h));
  }
  if (fusion != nullptr) result.stats.cache = fusion->Stats();
  return result;
}

}  // namespace deltadec
