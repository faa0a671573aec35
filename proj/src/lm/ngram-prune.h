// lm/ngram-prune.h

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

#ifndef DELTADEC_LM_NGRAM_PRUNE_H_
#define DELTADEC_LM_NGRAM_PRUNE_H_

#include "lm/ngram-model.h"

namespace deltadec {

// Relative-entropy pruning.  Removes explicit grams of order >= 2 whose
// removal costs less than `threshold` weighted relative entropy, then
// recomputes backoff weights so every history still normalizes.  Grams that
// serve as histories of retained higher-order grams are kept.  threshold 0
// removes nothing; +infinity keeps only unigrams.
NGramModel PruneNGram(const NGramModel& model, double threshold);

}  // namespace deltadec

#endif  // DELTADEC_LM_NGRAM_PRUNE_H_
