// lm/ngram-train.cc

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

#include "lm/ngram-train.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace deltadec {

namespace {

// Ordered maps keep every downstream iteration deterministic.
using CountMap = std::map<std::vector<int32>, int64>;

struct OrderCounts {
  CountMap gram;                 // c(h, w)
  CountMap context_total;        // c(h) summed over counted continuations
  CountMap context_distinct;     // N1+(h)
};

}  // namespace

NGramModel TrainNGram(const std::vector<std::vector<int32>>& utterances, int order,
                      std::shared_ptr<const Vocabulary> vocab) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (utterances.empty()) throw ConfigError("training corpus is empty");
  const Vocabulary& v = *vocab;

  std::vector<OrderCounts> counts(order);
  for (const auto& utt : utterances) {
    std::vector<int32> toks;
    toks.reserve(utt.size() + 2);
    toks.push_back(v.Bos());
    toks.insert(toks.end(), utt.begin(), utt.end());
    toks.push_back(v.Eos());
    // Grams end at each predicted position (never at the leading <s>).
    for (size_t i = 1; i < toks.size(); ++i) {
      for (int m = 1; m <= order; ++m) {
        if (i + 1 < static_cast<size_t>(m)) break;
        std::vector<int32> gram(toks.begin() + (i + 1 - m), toks.begin() + i + 1);
        std::vector<int32> hist(gram.begin(), gram.end() - 1);
        auto& oc = counts[m - 1];
        int64& c = oc.gram[gram];
        if (c == 0) ++oc.context_distinct[hist];
        ++c;
        ++oc.context_total[hist];
      }
    }
  }

  NGramModel model(order, vocab);

  // Unigrams: interpolate the ML estimate with a uniform floor over the
  // predictable vocabulary, so every word (and <unk>) gets mass.
  const auto predictable = v.PredictableIds();
  const double vocab_size = static_cast<double>(predictable.size());
  int64 total_tokens = 0;
  for (const auto& [gram, c] : counts[0].gram) total_tokens += c;
  const double distinct = static_cast<double>(counts[0].gram.size());
  const double uni_denom = static_cast<double>(total_tokens) + distinct;
  for (int32 w : predictable) {
    std::vector<int32> gram{w};
    auto it = counts[0].gram.find(gram);
    double c = it == counts[0].gram.end() ? 0.0 : static_cast<double>(it->second);
    double p = (c + distinct / vocab_size) / uni_denom;
    model.AddGram(gram, std::log(p));
  }
  // <s> is listed to anchor its context but never predicted.
  std::vector<int32> bos{v.Bos()};
  model.AddGram(bos, kLogZero);

  // Higher orders: stored probabilities are the interpolated Witten-Bell
  // values; the leftover mass N1+/(c+N1+) becomes the backoff weight, which
  // reproduces the interpolated model exactly in backoff form.
  for (int m = 2; m <= order; ++m) {
    const auto& oc = counts[m - 1];
    for (const auto& [gram, c] : oc.gram) {
      std::vector<int32> hist(gram.begin(), gram.end() - 1);
      std::vector<int32> lower_hist(gram.begin() + 1, gram.end() - 1);
      int32 word = gram.back();
      double ch = static_cast<double>(oc.context_total.at(hist));
      double n1 = static_cast<double>(oc.context_distinct.at(hist));
      double lambda = ch / (ch + n1);
      double p_lower = std::exp(model.LogProb(lower_hist, word));
      double p = lambda * (static_cast<double>(c) / ch) + (1.0 - lambda) * p_lower;
      model.AddGram(gram, std::log(p));
    }
    for (const auto& [hist, ch] : oc.context_total) {
      double n1 = static_cast<double>(oc.context_distinct.at(hist));
      double bow = n1 / (static_cast<double>(ch) + n1);
      model.SetBow(hist, std::log(bow));
    }
  }
  model.CheckWellFormed();
  return model;
}

NGramModel TrainNGramFromLines(const std::vector<std::string>& lines, int order) {
  auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromCorpusLines(lines));
  std::vector<std::vector<int32>> utts;
  for (const auto& line : lines) {
    auto ids = vocab->TokenizeToIds(line);
    if (!ids.empty()) utts.push_back(std::move(ids));
  }
  if (utts.empty()) throw ConfigError("training corpus is empty");
  return TrainNGram(utts, order, vocab);
}

}  // namespace deltadec
