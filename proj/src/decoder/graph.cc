// decoder/graph.cc

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

#include "decoder/graph.h"

#include "base/io.h"
#include "lm/arpa-io.h"

namespace deltadec {

uint64 GrammarFingerprint(const NGramModel& m) {
  return Fnv1a64(ArpaWriteString(m));
}

DecodingGraph BuildGraph(const Lexicon& lex, const NGramModel& gp) {
  const Vocabulary& v = gp.Vocab();
  std::string missing;
  for (int32 w : v.RegularWordIds()) {
    if (!lex.HasWord(w)) missing += (missing.empty() ? "" : ", ") + v.Name(w);
  }
  if (!missing.empty())
    throw ConfigError("lexicon does not cover grammar words: " + missing);

  DecodingGraph graph;
  graph.phones = lex.PhoneSymbols();
  graph.words = v.Symbols();
  graph.grammar_fingerprint = GrammarFingerprint(gp);
  graph.fst = Compose(lex.ToFst(), NGramToFst(gp));
  return graph;
}

}  // namespace deltadec
