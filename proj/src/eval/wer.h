// eval/wer.h

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

#ifndef DELTADEC_EVAL_WER_H_
#define DELTADEC_EVAL_WER_H_

#include <span>
#include <vector>

#include "base/common.h"

namespace deltadec {

struct WerStats {
  int64 substitutions = 0;
  int64 insertions = 0;
  int64 deletions = 0;
  int64 ref_words = 0;

  int64 Errors() const { return substitutions + insertions + deletions; }
  double Percent() const {
    return 100.0 * static_cast<double>(Errors()) / static_cast<double>(ref_words);
  }
  void Accumulate(const WerStats& o) {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    ref_words += o.ref_words;
  }
};

// Unit-cost Levenshtein alignment; ties resolve substitution over insertion
// over deletion.  Empty reference is an input error.
WerStats ComputeWer(std::span<const int32> ref, std::span<const int32> hyp);

}  // namespace deltadec

#endif  // DELTADEC_EVAL_WER_H_
