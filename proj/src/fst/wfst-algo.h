// fst/wfst-algo.h

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

#ifndef DELTADEC_FST_WFST_ALGO_H_
#define DELTADEC_FST_WFST_ALGO_H_

#include <span>
#include <vector>

#include "fst/wfst.h"

namespace deltadec {

struct Path {
  std::vector<Arc> arcs;
  double cost = 0.0;                // fold of arc costs plus final weight
  std::vector<int32> ilabels;       // epsilon-stripped
  std::vector<int32> olabels;       // epsilon-stripped
};

// Composition a . b.  Precondition: a's output symbol table equals b's input
// table, and a carries no phi arcs.  Phi arcs in b are failure transitions:
// a queried label follows the phi chain only where no explicit arc matches.
// Output-side epsilons in a advance a while b holds still; input-side
// epsilons in b are not supported.  The result is trimmed.
Wfst Compose(const Wfst& a, const Wfst& b);

// Up to n accepted paths with distinct output-label strings, nondecreasing
// in total cost; the first is a global best path.  Handles negative arc
// costs (backoff weights above one) via exact distance-to-final potentials,
// so the machine must not contain negative-cost cycles.  max_expansions
// bounds queue pops on cyclic machines when fewer than n distinct strings
// exist.
std::vector<Path> ShortestPaths(const Wfst& f, int n, int64 max_expansions = 4000000);

// Removes states on no start-to-final path; accepted strings and path
// weights are untouched.  State order is preserved.
Wfst Trim(const Wfst& f);

// Failure-aware single-label transition: the explicit arc for `label` at
// `state`, or the first explicit match reached through the phi chain, with
// the phi costs folded in.  ok=false when the label cannot be consumed.
struct LabelResolution {
  bool ok = false;
  double cost = 0.0;
  int32 next = -1;
  int32 olabel = kEpsLabel;
};
LabelResolution ResolveLabel(const Wfst& f, int32 state, int32 label);

// Cost of accepting `labels` (input side) through failure-aware transitions,
// including the final weight; +inf if rejected.  Left-to-right accumulation,
// which LM-cost oracles rely on.
double StringCost(const Wfst& f, std::span<const int32> labels);

}  // namespace deltadec

#endif  // DELTADEC_FST_WFST_ALGO_H_
