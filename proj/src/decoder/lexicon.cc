// decoder/lexicon.cc

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

#include "decoder/lexicon.h"

#include <algorithm>
#include <set>

namespace deltadec {

Lexicon Lexicon::SpellingLexicon(const Vocabulary& vocab) {
  Lexicon lex;
  lex.words_ = vocab.Symbols();

  std::set<char> chars;
  for (int32 w : vocab.RegularWordIds())
    for (char ch : vocab.Name(w)) chars.insert(ch);
  auto phones = std::make_shared<SymbolTable>();
  for (char ch : chars) phones->AddSymbol(std::string(1, ch));
  lex.phones_ = phones;

  for (int32 w : vocab.RegularWordIds()) {
    const std::string& spelling = vocab.Name(w);
    if (spelling.empty()) throw ConfigError("empty pronunciation for word id " +
                                            std::to_string(w));
    std::vector<int32> pron;
    for (char ch : spelling) pron.push_back(phones->Find(std::string(1, ch)));
    lex.prons_.emplace(w, std::move(pron));
  }
  return lex;
}

const std::vector<int32>& Lexicon::Pronunciation(int32 word) const {
  auto it = prons_.find(word);
  if (it == prons_.end())
    throw InputError("word id " + std::to_string(word) + " has no pronunciation");
  return it->second;
}

Wfst Lexicon::ToFst() const {
  Wfst fst;
  fst.SetInputSymbols(phones_);
  fst.SetOutputSymbols(words_);
  int32 start = fst.AddState();
  fst.SetStart(start);
  fst.SetFinal(start, 0.0);

  std::vector<int32> word_ids;
  for (const auto& [w, pron] : prons_) word_ids.push_back(w);
  std::sort(word_ids.begin(), word_ids.end());
  for (int32 w : word_ids) {
    const auto& pron = prons_.at(w);
    int32 cur = start;
    for (size_t i = 0; i < pron.size(); ++i) {
      int32 next = i + 1 == pron.size() ? start : fst.AddState();
      fst.AddArc(cur, Arc{pron[i], i == 0 ? w : kEpsLabel, 0.0, next});
      cur = next;
    }
  }
  fst.Validate();
  return fst;
}

}  // namespace deltadec
