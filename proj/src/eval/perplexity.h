// eval/perplexity.h

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

#ifndef DELTADEC_EVAL_PERPLEXITY_H_
#define DELTADEC_EVAL_PERPLEXITY_H_

#include "lm/ngram-model.h"
#include "nnet/lstm.h"
#include "sim/corpus.h"

namespace deltadec {

// Cross-utterance evaluation protocol: how much session history initializes
// the model before each utterance, where that history comes from, and
// whether the trailing <s> that would open the current utterance is kept.
struct ContextProtocol {
  int k = 0;  // history utterances; -1 = complete history
  enum class Source { kReference, kHypothesis } source = Source::kReference;
  bool include_trailing_bos = true;
  bool shuffle = false;  // permute the selected history utterances
  uint64 shuffle_seed = 0;

  static ContextProtocol NoContext() { return ContextProtocol{}; }
};

struct EvalUtterance {
  std::vector<int32> ref;
  std::vector<int32> hyp;
  bool has_hyp = false;
};

struct EvalSession {
  std::string id;
  std::vector<EvalUtterance> utts;
};

std::vector<EvalSession> ToEvalSessions(const std::vector<Conversation>& corpus);

// The context utterances protocol `proto` selects for utterance `index`.
std::vector<std::vector<int32>> SelectContext(const EvalSession& session, size_t index,
                                              const ContextProtocol& proto);

// exp of mean negative log probability per predicted token; predicted tokens
// are the utterance words plus </s>, never <s>.  Normalized neural scores
// throughout.
double PerplexityLstm(const LstmModel& m, const std::vector<EvalSession>& sessions,
                      const ContextProtocol& proto, const Vocabulary& vocab);

// Same protocol for the backoff model; context influences at most the last
// order-1 tokens of the stream, anything older is ignored by construction.
double PerplexityNGram(const NGramModel& m, const std::vector<EvalSession>& sessions,
                       const ContextProtocol& proto);

}  // namespace deltadec

#endif  // DELTADEC_EVAL_PERPLEXITY_H_
