// lm/ngram-train.h

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

#ifndef DELTADEC_LM_NGRAM_TRAIN_H_
#define DELTADEC_LM_NGRAM_TRAIN_H_

#include <memory>
#include <vector>

#include "lm/ngram-model.h"

namespace deltadec {

// Witten-Bell estimation (interpolated, stored in backoff form).  Utterances
// are id sequences without boundary tokens; each is wrapped <s> ... </s>.
// Deterministic given corpus and order.
NGramModel TrainNGram(const std::vector<std::vector<int32>>& utterances, int order,
                      std::shared_ptr<const Vocabulary> vocab);

// Convenience: raw text lines, vocabulary built from the corpus.
NGramModel TrainNGramFromLines(const std::vector<std::string>& lines, int order);

}  // namespace deltadec

#endif  // DELTADEC_LM_NGRAM_TRAIN_H_
