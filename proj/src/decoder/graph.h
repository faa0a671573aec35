// decoder/graph.h

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

#ifndef DELTADEC_DECODER_GRAPH_H_
#define DELTADEC_DECODER_GRAPH_H_

#include "decoder/lexicon.h"
#include "fst/wfst-algo.h"
#include "lm/ngram-fst.h"

namespace deltadec {

// The static first-pass graph: lexicon closure composed with the pruned
// grammar.  H and C are identity at desk scale, so inputs are acoustic
// symbols and outputs are words; all LM cost comes from G'.
struct DecodingGraph {
  Wfst fst;
  uint64 grammar_fingerprint = 0;  // which G' built this graph
  std::shared_ptr<const SymbolTable> phones;
  std::shared_ptr<const SymbolTable> words;
};

// Throws ConfigError listing uncovered words when the lexicon misses part of
// the grammar vocabulary.
DecodingGraph BuildGraph(const Lexicon& lex, const NGramModel& gp);

uint64 GrammarFingerprint(const NGramModel& m);

}  // namespace deltadec

#endif  // DELTADEC_DECODER_GRAPH_H_
