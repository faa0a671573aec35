// nnet/checkpoint.h

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

#ifndef DELTADEC_NNET_CHECKPOINT_H_
#define DELTADEC_NNET_CHECKPOINT_H_

#include <string>

#include "nnet/lstm.h"

namespace deltadec {

// Binary checkpoint: magic "DDLSTM01", int32 dims (vocab, embed, hidden,
// layers), uint64 vocabulary hash, then double tensors little-endian in
// ForEachParam order (embed, per-layer wx/wh/b, out_w, out_b), each in
// Eigen column-major layout.
void SaveCheckpoint(const LstmModel& model, uint64 vocab_hash, const std::string& path);

struct LoadedCheckpoint {
  LstmModel model;
  uint64 vocab_hash = 0;
};
// Validates the header against the declared dims; throws ParseError on a
// malformed or truncated file.
LoadedCheckpoint LoadCheckpoint(const std::string& path);

}  // namespace deltadec

#endif  // DELTADEC_NNET_CHECKPOINT_H_
