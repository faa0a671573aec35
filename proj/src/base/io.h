// base/io.h

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

#ifndef DELTADEC_BASE_IO_H_
#define DELTADEC_BASE_IO_H_

#include <cstring>
#include <iosfwd>
#include <string>
#include <vector>

#include "base/common.h"

namespace deltadec {

std::string ReadFileToString(const std::string& path);
void WriteStringToFile(const std::string& path, const std::string& contents);

// Little-endian binary POD io.  The build targets little-endian hosts only;
// a static_assert in io.cc enforces it.
template <typename T>
void WritePod(std::ostream& os, const T& v);
template <typename T>
T ReadPod(std::istream& is, const std::string& what);

void WriteDoubles(std::ostream& os, const double* data, size_t n);
void ReadDoubles(std::istream& is, double* data, size_t n, const std::string& what);

// FNV-1a, used for symbol-table / vocabulary fingerprints in binary headers.
uint64 Fnv1a64(const void* data, size_t n);
uint64 Fnv1a64(const std::string& s);
inline uint64 HashCombine(uint64 h, uint64 v) {
  return (h ^ v) * 0x100000001b3ull;
}

// Prints a double with 17 significant digits, enough to round-trip exactly.
std::string FormatDouble17(double v);

std::vector<std::string> SplitWhitespace(const std::string& line);

}  // namespace deltadec

#endif  // DELTADEC_BASE_IO_H_
