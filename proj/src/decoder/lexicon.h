// decoder/lexicon.h

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

#ifndef DELTADEC_DECODER_LEXICON_H_
#define DELTADEC_DECODER_LEXICON_H_

#include <unordered_map>

#include "fst/wfst.h"
#include "lm/vocab.h"

namespace deltadec {

// Word -> acoustic symbol sequence.  At desk scale pronunciations are the
// character spellings of the words, which keeps them short and
// collision-prone enough that LM scores matter.
class Lexicon {
 public:
  static Lexicon SpellingLexicon(const Vocabulary& vocab);

  bool HasWord(int32 word) const { return prons_.count(word) > 0; }
  const std::vector<int32>& Pronunciation(int32 word) const;

  const std::shared_ptr<const SymbolTable>& PhoneSymbols() const { return phones_; }
  const std::shared_ptr<const SymbolTable>& WordSymbols() const { return words_; }

  // Closure transducer phones -> words, all costs zero; the word label sits
  // on the first phone arc.
  Wfst ToFst() const;

 private:
  std::shared_ptr<const SymbolTable> phones_;
  std::shared_ptr<const SymbolTable> words_;
  std::unordered_map<int32, std::vector<int32>> prons_;
};

}  // namespace deltadec

#endif  // DELTADEC_DECODER_LEXICON_H_
