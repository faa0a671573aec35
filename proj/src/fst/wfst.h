// fst/wfst.h

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

#ifndef DELTADEC_FST_WFST_H_
#define DELTADEC_FST_WFST_H_

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "base/common.h"
#include "fst/symbol-table.h"

namespace deltadec {

struct Arc {
  int32 ilabel = kEpsLabel;
  int32 olabel = kEpsLabel;
  double cost = 0.0;  // tropical weight, negated natural log
  int32 next = -1;
};

// Weighted FST over the tropical semiring.  Costs accumulate by addition,
// path choice is min.  Immutable once built; construction is single-owner.
//
// At most one phi (failure) arc per state.  A phi arc consumes no input and
// is taken only when the queried label has no explicit arc at the state.
class Wfst {
 public:
  int32 AddState() {
    arcs_.emplace_back();
    finals_.push_back(kInfCost);
    return static_cast<int32>(arcs_.size()) - 1;
  }
  int32 NumStates() const { return static_cast<int32>(arcs_.size()); }

  void SetStart(int32 s) { CheckState(s); start_ = s; }
  int32 Start() const { return start_; }

  void AddArc(int32 src, const Arc& arc) {
    CheckState(src);
    CheckState(arc.next);
    arcs_[src].push_back(arc);
  }
  const std::vector<Arc>& Arcs(int32 s) const { CheckState(s); return arcs_[s]; }

  void SetFinal(int32 s, double cost) { CheckState(s); finals_[s] = cost; }
  double Final(int32 s) const { CheckState(s); return finals_[s]; }
  bool IsFinal(int32 s) const { return Final(s) != kInfCost; }

  void SetInputSymbols(std::shared_ptr<const SymbolTable> syms) { isyms_ = std::move(syms); }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> syms) { osyms_ = std::move(syms); }
  const std::shared_ptr<const SymbolTable>& InputSymbols() const { return isyms_; }
  const std::shared_ptr<const SymbolTable>& OutputSymbols() const { return osyms_; }

  // Id of the failure label on the input side, or -1 when the machine has no
  // failure semantics.
  void SetPhiLabel(int32 label) { phi_label_ = label; }
  int32 PhiLabel() const { return phi_label_; }

  bool HasPhiArcs() const;

  // Checks structural invariants; throws InternalError on violation.
  void Validate() const;

  // Text format, one arc per line "src dst ilabel olabel cost", final lines
  // "state cost".  Labels are symbol strings; costs print with 17 significant
  // digits so the round-trip is bit exact.  The source state of the first
  // line is the start state.
  void WriteText(const std::string& fst_path, const std::string& isyms_path,
                 const std::string& osyms_path) const;
  static Wfst ReadText(const std::string& fst_path, const std::string& isyms_path,
                       const std::string& osyms_path);

 private:
  void CheckState(int32 s) const {
    if (s < 0 || s >= NumStates())
      throw InternalError("state id out of range: " + std::to_string(s));
  }

  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> finals_;
  int32 start_ = -1;
  int32 phi_label_ = -1;
  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
};

}  // namespace deltadec

#endif  // DELTADEC_FST_WFST_H_
