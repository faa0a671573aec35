// lm/ngram-model.cc

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

#include "lm/ngram-model.h"

#include <algorithm>
#include <cmath>

namespace deltadec {

namespace {
std::vector<int32> ToVec(std::span<const int32> s) { return {s.begin(), s.end()}; }
}  // namespace

NGramModel::NGramModel(int order, std::shared_ptr<const Vocabulary> vocab)
    : order_(order), vocab_(std::move(vocab)), grams_(order) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
}

void NGramModel::AddGram(std::span<const int32> ids, double logp) {
  int m = static_cast<int>(ids.size());
  if (m < 1 || m > order_) throw InternalError("gram length out of range");
  grams_[m - 1][ToVec(ids)].logp = logp;
}

void NGramModel::SetBow(std::span<const int32> ids, double bow) {
  int m = static_cast<int>(ids.size());
  if (m < 1 || m >= order_) throw InternalError("bow only on grams shorter than order");
  auto it = grams_[m - 1].find(ToVec(ids));
  if (it == grams_[m - 1].end()) throw InternalError("bow on unlisted gram");
  it->second.bow = bow;
  it->second.has_bow = true;
}

bool NGramModel::HasGram(std::span<const int32> ids) const {
  int m = static_cast<int>(ids.size());
  if (m < 1 || m > order_) return false;
  return grams_[m - 1].count(ToVec(ids)) > 0;
}

double NGramModel::GramLogProb(std::span<const int32> ids) const {
  auto it = grams_[ids.size() - 1].find(ToVec(ids));
  if (it == grams_[ids.size() - 1].end()) throw InternalError("gram not listed");
  return it->second.logp;
}

bool NGramModel::HasContext(std::span<const int32> ids) const {
  int m = static_cast<int>(ids.size());
  if (m < 1) return true;  // the empty history is always a context
  if (m >= order_) return false;
  return grams_[m - 1].count(ToVec(ids)) > 0;
}

double NGramModel::ContextBow(std::span<const int32> ids) const {
  if (ids.empty()) return 0.0;
  auto it = grams_[ids.size() - 1].find(ToVec(ids));
  if (it == grams_[ids.size() - 1].end()) return 0.0;
  return it->second.has_bow ? it->second.bow : 0.0;
}

std::vector<int32> NGramModel::LongestListedSuffix(std::span<const int32> history) const {
  size_t start = history.size() > static_cast<size_t>(order_ - 1)
                     ? history.size() - static_cast<size_t>(order_ - 1)
                     : 0;
  std::vector<int32> h(history.begin() + start, history.end());
  while (!h.empty() && !HasContext(h)) h.erase(h.begin());
  return h;
}

double NGramModel::LogProb(std::span<const int32> history, int32 word) const {
  if (word == vocab_->Bos())
    throw ContractError("<s> is never a prediction target");
  if (!vocab_->IsValidId(word) || word == kEpsLabel || word == vocab_->PhiLabel())
    throw InputError("invalid word id " + std::to_string(word));

  std::vector<int32> h = LongestListedSuffix(history);
  double acc = 0.0;
  for (;;) {
    std::vector<int32> gram = h;
    gram.push_back(word);
    if (HasGram(gram)) return acc + GramLogProb(gram);
    if (h.empty()) {
      // every vocabulary word carries a unigram entry; fall back to <unk>
      std::vector<int32> unk{vocab_->Unk()};
      return acc + GramLogProb(unk);
    }
    acc += ContextBow(h);
    h.erase(h.begin());
    while (!h.empty() && !HasContext(h)) h.erase(h.begin());
  }
}

int64 NGramModel::NumGrams(int m) const {
  if (m < 1 || m > order_) return 0;
  return static_cast<int64>(grams_[m - 1].size());
}

int64 NGramModel::NumGramsTotal() const {
  int64 total = 0;
  for (int m = 1; m <= order_; ++m) total += NumGrams(m);
  return total;
}

void NGramModel::ForEachGramSorted(
    int m, const std::function<void(const std::vector<int32>&, const GramEntry&)>& fn) const {
  std::vector<const std::vector<int32>*> keys;
  keys.reserve(grams_[m - 1].size());
  for (const auto& [k, v] : grams_[m - 1]) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(),
            [](const auto* a, const auto* b) { return *a < *b; });
  for (const auto* k : keys) fn(*k, grams_[m - 1].at(*k));
}

void NGramModel::CheckWellFormed() const {
  for (int m = 2; m <= order_; ++m) {
    for (const auto& [k, v] : grams_[m - 1]) {
      std::vector<int32> hist(k.begin(), k.end() - 1);
      if (!grams_[m - 2].count(hist))
        throw InternalError("gram history not listed (ARPA well-formedness)");
    }
  }
}

double NGramModel::ProbabilitySum(std::span<const int32> history) const {
  double sum = 0.0;
  for (int32 w : vocab_->PredictableIds()) sum += std::exp(LogProb(history, w));
  return sum;
}

}  // namespace deltadec
