// lm/vocab.cc

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

#include "lm/vocab.h"

#include <algorithm>
#include <set>

#include "base/io.h"

namespace deltadec {

Vocabulary::Vocabulary() : table_(std::make_shared<SymbolTable>()) {
  bos_ = table_->AddSymbol(kBosSymbol);
  eos_ = table_->AddSymbol(kEosSymbol);
  unk_ = table_->AddSymbol(kUnkSymbol);
  phi_ = table_->AddSymbol(kPhiSymbol);
  if (bos_ != kBosId || eos_ != kEosId || unk_ != kUnkId || phi_ != kPhiId)
    throw InternalError("reserved vocabulary ids shifted");
  first_word_ = table_->Size();
  shared_ = table_;
}

int32 Vocabulary::AddWord(const std::string& word) {
  if (word == kEpsSymbol || word == kPhiSymbol || word == kBosSymbol ||
      word == kEosSymbol || word == kUnkSymbol)
    return table_->Find(word);
  return table_->AddSymbol(word);
}

int32 Vocabulary::WordId(const std::string& word) const {
  int32 id = table_->Find(word);
  if (id < 0 || id == kEpsLabel || id == phi_) return unk_;
  return id;
}

std::vector<int32> Vocabulary::PredictableIds() const {
  std::vector<int32> ids;
  ids.push_back(eos_);
  ids.push_back(unk_);
  for (int32 id = first_word_; id < table_->Size(); ++id) ids.push_back(id);
  return ids;
}

std::vector<int32> Vocabulary::RegularWordIds() const {
  std::vector<int32> ids;
  for (int32 id = first_word_; id < table_->Size(); ++id) ids.push_back(id);
  return ids;
}

std::vector<int32> Vocabulary::TokenizeToIds(const std::string& line) const {
  std::vector<int32> ids;
  for (const auto& tok : SplitWhitespace(line)) ids.push_back(WordId(tok));
  return ids;
}

Vocabulary Vocabulary::FromCorpusLines(const std::vector<std::string>& lines) {
  Vocabulary vocab;
  // Sort for an id assignment independent of corpus order.
  std::set<std::string> words;
  for (const auto& line : lines)
    for (const auto& tok : SplitWhitespace(line)) words.insert(tok);
  for (const auto& w : words) vocab.AddWord(w);
  return vocab;
}

}  // namespace deltadec
