// sim/frames.h

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

#ifndef DELTADEC_SIM_FRAMES_H_
#define DELTADEC_SIM_FRAMES_H_

#include "decoder/lexicon.h"
#include "sim/corpus.h"

namespace deltadec {

// Per-frame acoustic costs, columns indexed by acoustic symbol id.
struct FrameMatrix {
  int64 rows = 0;
  int64 cols = 0;
  uint64 symtab_hash = 0;
  std::vector<double> data;  // row-major

  double At(int64 r, int64 c) const { return data[r * cols + c]; }
  double& At(int64 r, int64 c) { return data[r * cols + c]; }
};

// Expands the utterance through the lexicon and emits frames_per_symbol
// frames per acoustic symbol.  Frame costs are shifted logits: the true
// symbol carries logit `peak`, all logits get N(0, sigma^2) noise, and
// cost(sym) = max_logit - logit(sym), so sigma=0 gives the true symbol cost
// zero at maximal margin.  Deterministic given the seed.
FrameMatrix SynthFrames(const std::vector<int32>& words, const Lexicon& lex,
                        double sigma, int frames_per_symbol, uint64 seed,
                        double peak = 6.0);

// Binary format: three uint64 little-endian header words (rows, cols,
// symbol-table hash), then row-major doubles.
void WriteFrames(const FrameMatrix& fm, const std::string& path);
FrameMatrix ReadFrames(const std::string& path);

}  // namespace deltadec

#endif  // DELTADEC_SIM_FRAMES_H_
