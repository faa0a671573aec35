// lm/ngram-fst.cc

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

#include "lm/ngram-fst.h"

#include <map>

namespace deltadec {

Wfst NGramToFst(const NGramModel& model) {
  const Vocabulary& v = model.Vocab();
  Wfst fst;
  fst.SetInputSymbols(v.Symbols());
  fst.SetOutputSymbols(v.Symbols());
  fst.SetPhiLabel(v.PhiLabel());

  // One state per listed history (grams shorter than the order, </s>-free),
  // plus the empty history.
  std::map<std::vector<int32>, int32> state_of;
  state_of[{}] = fst.AddState();
  for (int m = 1; m < model.Order(); ++m) {
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry&) {
      if (gram.back() == v.Eos()) return;
      state_of[gram] = fst.AddState();
    });
  }

  auto resolve_state = [&](std::vector<int32> hist) {
    if (hist.size() >= static_cast<size_t>(model.Order()))
      hist.erase(hist.begin(), hist.end() - (model.Order() - 1));
    while (!hist.empty() && !state_of.count(hist)) hist.erase(hist.begin());
    return state_of.at(hist);
  };

  for (int m = 1; m <= model.Order(); ++m) {
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry& e) {
      int32 word = gram.back();
      if (word == v.Eos() || word == v.Bos()) return;
      std::vector<int32> hist(gram.begin(), gram.end() - 1);
      auto it = state_of.find(hist);
      if (it == state_of.end()) return;  // contexts ending in </s> have no state
      std::vector<int32> next = hist;
      next.push_back(word);
      fst.AddArc(it->second, Arc{word, word, -e.logp, resolve_state(next)});
    });
  }

  // Backoff arcs and </s> finals.
  for (const auto& [hist, s] : state_of) {
    if (!hist.empty()) {
      std::vector<int32> tail(hist.begin() + 1, hist.end());
      fst.AddArc(s, Arc{v.PhiLabel(), kEpsLabel, -model.ContextBow(hist),
                        resolve_state(tail)});
    }
    fst.SetFinal(s, -model.LogProb(hist, v.Eos()));
  }

  std::vector<int32> bos_hist{v.Bos()};
  fst.SetStart(resolve_state(bos_hist));
  fst.Validate();
  return fst;
}

double SentenceCost(const Wfst& lm_fst, std::span<const int32> words) {
  return StringCost(lm_fst, words);
}

}  // namespace deltadec
