// sim/corpus.h

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

#ifndef DELTADEC_SIM_CORPUS_H_
#define DELTADEC_SIM_CORPUS_H_

#include <memory>
#include <string>
#include <vector>

#include "lm/vocab.h"

namespace deltadec {

struct Utterance {
  int order = 0;  // contiguous from 0 within a session
  std::vector<int32> words;
};

struct Conversation {
  std::string session_id;
  std::vector<Utterance> utterances;
};

struct SimSpec {
  int vocab_size = 40;       // regular words
  int sessions = 10;
  int utterances_per_session = 8;
  double mean_utterance_len = 8.0;
  double beta = 0.8;         // probability of drawing from session history
  double sigma = 0.0;        // acoustic logit noise scale
  int frames_per_symbol = 3;
  uint64 seed = 1;

  void Validate() const;
};

// Word strings depend only on the index, so corpora generated with different
// seeds share one vocabulary.
std::vector<std::string> SimWordList(int vocab_size);
std::shared_ptr<Vocabulary> SimVocabulary(int vocab_size);

// Session-structured text: each session draws a topic word subset; later
// utterances re-draw words already used in the session (weight beta,
// recency-decayed), so ordered history is genuinely predictive.
std::vector<Conversation> GenCorpus(const SimSpec& spec, const Vocabulary& vocab);

std::vector<std::vector<int32>> FlattenUtterances(const std::vector<Conversation>& corpus);

// JSON lines, one object per utterance: {"session": str, "order": int, "text": str}.
std::string CorpusToJsonl(const std::vector<Conversation>& corpus, const Vocabulary& vocab);
std::vector<Conversation> CorpusFromJsonl(const std::string& text, const Vocabulary& vocab,
                                          const std::string& name = "<jsonl>");
void WriteCorpusJsonl(const std::vector<Conversation>& corpus, const Vocabulary& vocab,
                      const std::string& path);
std::vector<Conversation> ReadCorpusJsonl(const std::string& path, const Vocabulary& vocab);

}  // namespace deltadec

#endif  // DELTADEC_SIM_CORPUS_H_
