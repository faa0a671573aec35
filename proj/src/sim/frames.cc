// sim/frames.cc

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

#include "sim/frames.h"

#include <fstream>

#include "base/io.h"
#include "base/rng.h"

namespace deltadec {

FrameMatrix SynthFrames(const std::vector<int32>& words, const Lexicon& lex,
                        double sigma, int frames_per_symbol, uint64 seed,
                        double peak) {
  if (frames_per_symbol < 1) throw ConfigError("frames per symbol must be >= 1");
  std::vector<int32> symbols;
  for (int32 w : words) {
    const auto& pron = lex.Pronunciation(w);  // throws InputError on OOV
    symbols.insert(symbols.end(), pron.begin(), pron.end());
  }

  FrameMatrix fm;
  fm.cols = lex.PhoneSymbols()->Size();
  fm.rows = static_cast<int64>(symbols.size()) * frames_per_symbol;
  fm.symtab_hash = lex.PhoneSymbols()->Hash();
  fm.data.assign(fm.rows * fm.cols, 0.0);

  Rng rng(seed);
  std::vector<double> logits(fm.cols);
  for (size_t si = 0; si < symbols.size(); ++si) {
    for (int f = 0; f < frames_per_symbol; ++f) {
      int64 row = static_cast<int64>(si) * frames_per_symbol + f;
      double mx = -kInfCost;
      // Column 0 is <eps>, which no graph arc consumes; pin it far away.
      logits[0] = -1e9;
      for (int64 c = 1; c < fm.cols; ++c) {
        double l = (c == symbols[si] ? peak : 0.0);
        if (sigma > 0) l += sigma * rng.Gaussian(0.0, 1.0);
        logits[c] = l;
        mx = std::max(mx, l);
      }
      for (int64 c = 0; c < fm.cols; ++c) fm.At(row, c) = mx - logits[c];
    }
  }
  return fm;
}

void WriteFrames(const FrameMatrix& fm, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write frames " + path);
  WritePod<uint64>(os, static_cast<uint64>(fm.rows));
  WritePod<uint64>(os, static_cast<uint64>(fm.cols));
  WritePod<uint64>(os, fm.symtab_hash);
  WriteDoubles(os, fm.data.data(), fm.data.size());
  if (!os) throw InputError("write failed: " + path);
}

FrameMatrix ReadFrames(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open frames " + path);
  FrameMatrix fm;
  fm.rows = static_cast<int64>(ReadPod<uint64>(is, path));
  fm.cols = static_cast<int64>(ReadPod<uint64>(is, path));
  fm.symtab_hash = ReadPod<uint64>(is, path);
  if (fm.rows < 0 || fm.cols <= 0 || fm.rows > (1ll << 32))
    throw ParseError(path, 0, "implausible frame matrix header");
  fm.data.resize(fm.rows * fm.cols);
  ReadDoubles(is, fm.data.data(), fm.data.size(), path);
  return fm;
}

}  // namespace deltadec
