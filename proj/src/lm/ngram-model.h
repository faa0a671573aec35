// lm/ngram-model.h

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

#ifndef DELTADEC_LM_NGRAM_MODEL_H_
#define DELTADEC_LM_NGRAM_MODEL_H_

#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "lm/vocab.h"

namespace deltadec {

// Natural-log probability sentinel for never-predicted entries (<s>); ARPA io
// maps it to/from the conventional -99 log10 placeholder.
constexpr double kLogZero = -std::numeric_limits<double>::infinity();

struct GramEntry {
  double logp = kLogZero;  // natural log
  double bow = 0.0;        // natural log backoff weight
  bool has_bow = false;
};

struct IdSeqHash {
  size_t operator()(const std::vector<int32>& v) const {
    uint64 h = 0xcbf29ce484222325ull;
    for (int32 x : v) h = (h ^ static_cast<uint64>(static_cast<uint64>(x) + 1)) * 0x100000001b3ull;
    return static_cast<size_t>(h);
  }
};

// Backoff n-gram model in natural-log domain.  Immutable after training,
// pruning or parsing; LogProb is reentrant.
class NGramModel {
 public:
  NGramModel(int order, std::shared_ptr<const Vocabulary> vocab);

  int Order() const { return order_; }
  const Vocabulary& Vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& VocabPtr() const { return vocab_; }

  void AddGram(std::span<const int32> ids, double logp);
  void SetBow(std::span<const int32> ids, double bow);

  bool HasGram(std::span<const int32> ids) const;
  double GramLogProb(std::span<const int32> ids) const;
  // A listed gram of length < order, usable as a conditioning context.
  bool HasContext(std::span<const int32> ids) const;
  double ContextBow(std::span<const int32> ids) const;  // 0 when absent

  // Backoff recursion P(word | history); uses at most the last order-1
  // history words.  word must not be <s>.
  double LogProb(std::span<const int32> history, int32 word) const;

  // Longest suffix of `history` (truncated to order-1) that is listed; the
  // FST compiler uses the same rule so graph walks match LogProb exactly.
  std::vector<int32> LongestListedSuffix(std::span<const int32> history) const;

  int64 NumGrams(int m) const;
  int64 NumGramsTotal() const;
  // Iterates m-grams sorted by id sequence (deterministic).
  void ForEachGramSorted(int m,
                         const std::function<void(const std::vector<int32>&,
                                                  const GramEntry&)>& fn) const;

  // ARPA well-formedness: every gram's history (length > 1) is listed.
  void CheckWellFormed() const;

  // Sum over the predictable vocabulary of exp(LogProb(h, w)).
  double ProbabilitySum(std::span<const int32> history) const;

 private:
  int order_;
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::unordered_map<std::vector<int32>, GramEntry, IdSeqHash>> grams_;
};

}  // namespace deltadec

#endif  // DELTADEC_LM_NGRAM_MODEL_H_
