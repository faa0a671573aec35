// fst/symbol-table.cc

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

#include "fst/symbol-table.h"

#include <fstream>
#include <sstream>

#include "base/io.h"

namespace deltadec {

int32 SymbolTable::AddSymbol(const std::string& sym) {
  auto it = ids_.find(sym);
  if (it != ids_.end()) return it->second;
  int32 id = static_cast<int32>(names_.size());
  names_.push_back(sym);
  ids_.emplace(sym, id);
  return id;
}

int32 SymbolTable::Find(const std::string& sym) const {
  auto it = ids_.find(sym);
  return it == ids_.end() ? -1 : it->second;
}

const std::string& SymbolTable::Name(int32 id) const {
  if (!Contains(id)) throw InternalError("symbol id out of range: " + std::to_string(id));
  return names_[id];
}

void SymbolTable::Write(const std::string& path) const {
  std::ostringstream os;
  for (int32 i = 0; i < Size(); ++i) os << names_[i] << '\t' << i << '\n';
  WriteStringToFile(path, os.str());
}

SymbolTable SymbolTable::Read(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open symbol table " + path);
  SymbolTable table;
  std::string line;
  int64 lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != 2)
      throw ParseError(path, lineno, "expected 'symbol<TAB>id'");
    int32 id;
    try {
      id = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "bad id '" + fields[1] + "'");
    }
    if (id == 0) {
      if (fields[0] != kEpsSymbol)
        throw ParseError(path, lineno, "id 0 must be " + std::string(kEpsSymbol));
      continue;  // constructor already inserted it
    }
    if (id != table.Size())
      throw ParseError(path, lineno, "ids must be dense and ascending");
    table.AddSymbol(fields[0]);
  }
  return table;
}

uint64 SymbolTable::Hash() const {
  uint64 h = 0xcbf29ce484222325ull;
  for (const auto& name : names_) {
    h = HashCombine(h, Fnv1a64(name));
    h = HashCombine(h, 0x0a);
  }
  return h;
}

}  // namespace deltadec
