// lm/arpa-io.h

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

#ifndef DELTADEC_LM_ARPA_IO_H_
#define DELTADEC_LM_ARPA_IO_H_

#include <iosfwd>
#include <memory>
#include <string>

#include "lm/ngram-model.h"

namespace deltadec {

// Standard ARPA text format.  Values are log10 on disk, natural log in
// memory; -99 marks never-predicted entries.  Parse errors carry the line
// number and the section being read.
std::string ArpaWriteString(const NGramModel& model);
void ArpaWriteFile(const NGramModel& model, const std::string& path);

// The vocabulary is reconstructed from the unigram section; words beyond
// the reserved tokens are added in file order.
NGramModel ArpaReadString(const std::string& text, const std::string& name = "<arpa>");
NGramModel ArpaReadFile(const std::string& path);

}  // namespace deltadec

#endif  // DELTADEC_LM_ARPA_IO_H_
