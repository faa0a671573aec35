// lm/ngram-fst.h

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

#ifndef DELTADEC_LM_NGRAM_FST_H_
#define DELTADEC_LM_NGRAM_FST_H_

#include "fst/wfst-algo.h"
#include "lm/ngram-model.h"

namespace deltadec {

// Standard backoff acceptor: one state per listed history, word arcs cost
// -log P, phi arcs cost -log bow, </s> realized as a final weight resolved
// through the same backoff recursion as NGramModel::LogProb, so any
// utterance's path cost equals the LogProb chain exactly.
Wfst NGramToFst(const NGramModel& model);

// Failure-aware cost of <s> utt </s> through an NGramToFst machine; equals
// -sum LogProb.  Used by graph invariant checks and oracles.
double SentenceCost(const Wfst& lm_fst, std::span<const int32> words);

}  // namespace deltadec

#endif  // DELTADEC_LM_NGRAM_FST_H_
