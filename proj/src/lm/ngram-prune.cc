// lm/ngram-prune.cc

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

#include "lm/ngram-prune.h"

#include <cmath>
#include <map>
#include <set>

namespace deltadec {

namespace {

struct HistoryAgg {
  double sum_seen = 0.0;        // sum of stored P(w|h) over explicit grams
  double sum_seen_lower = 0.0;  // sum of P(w|tail(h)) over the same grams
};

// Model probability of the history itself, leading <s> taken as certain.
double HistoryLogMass(const NGramModel& m, const std::vector<int32>& h) {
  double acc = 0.0;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i == 0 && h[i] == m.Vocab().Bos()) continue;
    std::span<const int32> prefix(h.data(), i);
    acc += m.LogProb(prefix, h[i]);
  }
  return acc;
}

}  // namespace

NGramModel PruneNGram(const NGramModel& model, double threshold) {
  if (threshold < 0) throw ConfigError("pruning threshold must be >= 0");

  // Weighted exact KL divergence caused by removing each gram, computed
  // against the unpruned model so the pruned set grows monotonically with
  // the threshold.
  std::vector<std::map<std::vector<int32>, bool>> keep(model.Order() + 1);
  std::map<std::vector<int32>, HistoryAgg> aggs;
  for (int m = 2; m <= model.Order(); ++m) {
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry& e) {
      std::vector<int32> hist(gram.begin(), gram.end() - 1);
      std::vector<int32> tail(gram.begin() + 1, gram.end() - 1);
      auto& agg = aggs[hist];
      agg.sum_seen += std::exp(e.logp);
      agg.sum_seen_lower += std::exp(model.LogProb(tail, gram.back()));
    });
  }

  std::set<std::vector<int32>> protected_contexts;
  for (int m = model.Order(); m >= 2; --m) {
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry& e) {
      bool kept = true;
      if (threshold > 0 && !protected_contexts.count(gram)) {
        std::vector<int32> hist(gram.begin(), gram.end() - 1);
        std::vector<int32> tail(gram.begin() + 1, gram.end() - 1);
        const auto& agg = aggs.at(hist);
        double p_hw = std::exp(e.logp);
        double p_lw = std::exp(model.LogProb(tail, gram.back()));
        double num = 1.0 - agg.sum_seen;
        double den = 1.0 - agg.sum_seen_lower;
        if (num > 0 && den > 0 && num + p_hw > 0 && den + p_lw > 0) {
          double log_alpha = std::log(num) - std::log(den);
          double log_alpha_p = std::log(num + p_hw) - std::log(den + p_lw);
          double divergence =
              std::exp(HistoryLogMass(model, hist)) *
              (p_hw * (e.logp - log_alpha_p - std::log(p_lw)) +
               num * (log_alpha - log_alpha_p));
          if (divergence < threshold) kept = false;
        } else {
          kept = false;  // degenerate history, nothing left to normalize
        }
      }
      keep[m][gram] = kept;
      if (kept && m >= 3)
        protected_contexts.insert(std::vector<int32>(gram.begin(), gram.end() - 1));
    });
  }

  // Rebuild bottom-up; stored probabilities are untouched, backoff weights
  // are recomputed against the pruned structure so histories renormalize.
  NGramModel out(model.Order(), model.VocabPtr());
  model.ForEachGramSorted(1, [&](const std::vector<int32>& gram, const GramEntry& e) {
    out.AddGram(gram, e.logp);
  });
  for (int m = 2; m <= model.Order(); ++m) {
    std::map<std::vector<int32>, HistoryAgg> kept_aggs;
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry& e) {
      if (!keep[m].at(gram)) return;
      out.AddGram(gram, e.logp);
      std::vector<int32> hist(gram.begin(), gram.end() - 1);
      std::vector<int32> tail(gram.begin() + 1, gram.end() - 1);
      auto& agg = kept_aggs[hist];
      agg.sum_seen += std::exp(e.logp);
      agg.sum_seen_lower += std::exp(out.LogProb(tail, gram.back()));
    });
    for (const auto& [hist, agg] : kept_aggs) {
      double num = 1.0 - agg.sum_seen;
      double den = 1.0 - agg.sum_seen_lower;
      if (num <= 0 || den <= 0)
        throw InternalError("pruned history cannot be renormalized");
      out.SetBow(hist, std::log(num) - std::log(den));
    }
  }
  out.CheckWellFormed();
  return out;
}

}  // namespace deltadec
