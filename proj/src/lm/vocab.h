// lm/vocab.h

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

#ifndef DELTADEC_LM_VOCAB_H_
#define DELTADEC_LM_VOCAB_H_

#include <memory>
#include <string>
#include <vector>

#include "fst/symbol-table.h"

namespace deltadec {

// Word ids are FST output labels: 0 <eps>, then the reserved tokens below,
// then regular words.  <s> is never a prediction target, </s> never
// continues a history, and unseen words map to <unk>.
inline const char* const kBosSymbol = "<s>";
inline const char* const kEosSymbol = "</s>";
inline const char* const kUnkSymbol = "<unk>";

// Reserved id layout is fixed by the Vocabulary constructor.
inline constexpr int32 kBosId = 1;
inline constexpr int32 kEosId = 2;
inline constexpr int32 kUnkId = 3;
inline constexpr int32 kPhiId = 4;

class Vocabulary {
 public:
  Vocabulary();

  int32 AddWord(const std::string& word);
  // Lookup for corpus tokens: unseen strings map to <unk>.
  int32 WordId(const std::string& word) const;
  const std::string& Name(int32 id) const { return table_->Name(id); }

  int32 Bos() const { return bos_; }
  int32 Eos() const { return eos_; }
  int32 Unk() const { return unk_; }
  int32 PhiLabel() const { return phi_; }

  bool IsRegularWord(int32 id) const {
    return id >= first_word_ && id < table_->Size();
  }
  bool IsValidId(int32 id) const { return table_->Contains(id); }

  // All ids a model may assign probability to: regular words, <unk>, </s>.
  std::vector<int32> PredictableIds() const;
  std::vector<int32> RegularWordIds() const;
  int32 NumRegularWords() const { return table_->Size() - first_word_; }

  // Whitespace tokenization to ids, unknowns folded to <unk>.
  std::vector<int32> TokenizeToIds(const std::string& line) const;

  const std::shared_ptr<const SymbolTable>& Symbols() const { return shared_; }
  uint64 Hash() const { return table_->Hash(); }

  bool operator==(const Vocabulary& o) const { return *table_ == *o.table_; }

  static Vocabulary FromCorpusLines(const std::vector<std::string>& lines);

 private:
  std::shared_ptr<SymbolTable> table_;
  std::shared_ptr<const SymbolTable> shared_;
  int32 bos_, eos_, unk_, phi_, first_word_;
};

}  // namespace deltadec

#endif  // DELTADEC_LM_VOCAB_H_
