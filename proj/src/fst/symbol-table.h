// fst/symbol-table.h

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

#ifndef DELTADEC_FST_SYMBOL_TABLE_H_
#define DELTADEC_FST_SYMBOL_TABLE_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "base/common.h"

namespace deltadec {

inline constexpr int32 kEpsLabel = 0;
inline const char* const kEpsSymbol = "<eps>";
inline const char* const kPhiSymbol = "#phi";

// Dense string<->id bimap.  Id 0 is always <eps>.  The phi (failure) label,
// written "#phi" in sidecar files, is an ordinary entry here; Wfst tracks
// which id plays the failure role.
class SymbolTable {
 public:
  SymbolTable() { AddSymbol(kEpsSymbol); }

  int32 AddSymbol(const std::string& sym);
  int32 Find(const std::string& sym) const;  // -1 if absent
  bool Contains(int32 id) const { return id >= 0 && id < static_cast<int32>(names_.size()); }
  const std::string& Name(int32 id) const;
  int32 Size() const { return static_cast<int32>(names_.size()); }

  bool operator==(const SymbolTable& o) const { return names_ == o.names_; }

  void Write(const std::string& path) const;
  static SymbolTable Read(const std::string& path);

  uint64 Hash() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int32> ids_;
};

}  // namespace deltadec

#endif  // DELTADEC_FST_SYMBOL_TABLE_H_
