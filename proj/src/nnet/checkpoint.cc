// nnet/checkpoint.cc

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

#include "nnet/checkpoint.h"

#include <cstring>
#include <fstream>

#include "base/io.h"

namespace deltadec {

namespace {
constexpr char kMagic[8] = {'D', 'D', 'L', 'S', 'T', 'M', '0', '1'};
}

void SaveCheckpoint(const LstmModel& model, uint64 vocab_hash, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write checkpoint " + path);
  os.write(kMagic, sizeof(kMagic));
  WritePod<int32>(os, model.cfg.vocab_size);
  WritePod<int32>(os, model.cfg.embed_dim);
  WritePod<int32>(os, model.cfg.hidden_dim);
  WritePod<int32>(os, model.cfg.num_layers);
  WritePod<uint64>(os, vocab_hash);
  ForEachParamConst<double>(model, [&os](const double* p, size_t n) {
    WriteDoubles(os, p, n);
  });
  if (!os) throw InputError("write failed: " + path);
}

LoadedCheckpoint LoadCheckpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open checkpoint " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ParseError(path, 0, "bad checkpoint magic");

  LstmConfig cfg;
  cfg.vocab_size = ReadPod<int32>(is, path);
  cfg.embed_dim = ReadPod<int32>(is, path);
  cfg.hidden_dim = ReadPod<int32>(is, path);
  cfg.num_layers = ReadPod<int32>(is, path);
  cfg.Validate();

  LoadedCheckpoint out;
  out.vocab_hash = ReadPod<uint64>(is, path);
  out.model = LstmModel::Init(cfg);
  ForEachParam<double>(out.model, [&is, &path](double* p, size_t n) {
    ReadDoubles(is, p, n, path);
  });
  char extra;
  if (is.read(&extra, 1))
    throw ParseError(path, 0, "trailing bytes after parameter tensors");
  return out;
}

}  // namespace deltadec
