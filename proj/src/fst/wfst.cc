// fst/wfst.cc

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

#include "fst/wfst.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "base/io.h"

namespace deltadec {

bool Wfst::HasPhiArcs() const {
  if (phi_label_ < 0) return false;
  for (int32 s = 0; s < NumStates(); ++s)
    for (const Arc& a : arcs_[s])
      if (a.ilabel == phi_label_) return true;
  return false;
}

void Wfst::Validate() const {
  if (start_ < 0 && NumStates() > 0)
    throw InternalError("machine has states but no start state");
  for (int32 s = 0; s < NumStates(); ++s) {
    int phi_count = 0;
    for (const Arc& a : arcs_[s]) {
      if (a.next < 0 || a.next >= NumStates())
        throw InternalError("arc from state " + std::to_string(s) + " has bad target");
      if (!std::isfinite(a.cost))
        throw InternalError("non-finite arc cost at state " + std::to_string(s));
      if (phi_label_ >= 0 && a.ilabel == phi_label_) ++phi_count;
    }
    if (phi_count > 1)
      throw InternalError("state " + std::to_string(s) + " has multiple phi arcs");
  }
}

void Wfst::WriteText(const std::string& fst_path, const std::string& isyms_path,
                     const std::string& osyms_path) const {
  if (!isyms_ || !osyms_) throw InternalError("WriteText requires symbol tables");
  std::ostringstream os;
  auto emit_state_arcs = [&](int32 s) {
    for (const Arc& a : arcs_[s]) {
      os << s << ' ' << a.next << ' ' << isyms_->Name(a.ilabel) << ' '
         << osyms_->Name(a.olabel) << ' ' << FormatDouble17(a.cost) << '\n';
    }
  };
  if (start_ >= 0) emit_state_arcs(start_);
  for (int32 s = 0; s < NumStates(); ++s)
    if (s != start_) emit_state_arcs(s);
  // Finals; start-state final first so an arcless machine still records start.
  if (start_ >= 0 && IsFinal(start_))
    os << start_ << ' ' << FormatDouble17(finals_[start_]) << '\n';
  for (int32 s = 0; s < NumStates(); ++s)
    if (s != start_ && IsFinal(s)) os << s << ' ' << FormatDouble17(finals_[s]) << '\n';
  WriteStringToFile(fst_path, os.str());
  isyms_->Write(isyms_path);
  osyms_->Write(osyms_path);
}

Wfst Wfst::ReadText(const std::string& fst_path, const std::string& isyms_path,
                    const std::string& osyms_path) {
  auto isyms = std::make_shared<SymbolTable>(SymbolTable::Read(isyms_path));
  auto osyms = std::make_shared<SymbolTable>(SymbolTable::Read(osyms_path));
  std::ifstream is(fst_path);
  if (!is) throw InputError("cannot open fst " + fst_path);

  Wfst fst;
  fst.SetInputSymbols(isyms);
  fst.SetOutputSymbols(osyms);
  int32 phi = isyms->Find(kPhiSymbol);
  fst.SetPhiLabel(phi);

  auto ensure_state = [&fst](int32 s) {
    while (fst.NumStates() <= s) fst.AddState();
  };
  auto parse_int = [&fst_path](const std::string& tok, int64 lineno) -> int32 {
    try {
      size_t pos;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(fst_path, lineno, "bad state id '" + tok + "'");
    }
  };
  auto parse_cost = [&fst_path](const std::string& tok, int64 lineno) -> double {
    try {
      size_t pos;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(fst_path, lineno, "bad cost '" + tok + "'");
    }
  };

  std::string line;
  int64 lineno = 0;
  bool have_start = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() == 5) {
      int32 src = parse_int(f[0], lineno), dst = parse_int(f[1], lineno);
      int32 il = isyms->Find(f[2]);
      int32 ol = osyms->Find(f[3]);
      if (il < 0) throw ParseError(fst_path, lineno, "unknown input label '" + f[2] + "'");
      if (ol < 0) throw ParseError(fst_path, lineno, "unknown output label '" + f[3] + "'");
      ensure_state(std::max(src, dst));
      fst.AddArc(src, Arc{il, ol, parse_cost(f[4], lineno), dst});
      if (!have_start) {
        fst.SetStart(src);
        have_start = true;
      }
    } else if (f.size() == 2) {
      int32 s = parse_int(f[0], lineno);
      ensure_state(s);
      fst.SetFinal(s, parse_cost(f[1], lineno));
      if (!have_start) {
        fst.SetStart(s);
        have_start = true;
      }
    } else {
      throw ParseError(fst_path, lineno, "expected 5 fields (arc) or 2 (final)");
    }
  }
  fst.Validate();
  return fst;
}

}  // namespace deltadec
