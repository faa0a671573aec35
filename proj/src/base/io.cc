// base/io.cc

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

#include "base/io.h"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace deltadec {

static_assert(std::endian::native == std::endian::little,
              "binary formats are little-endian; big-endian hosts unsupported");

std::string ReadFileToString(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteStringToFile(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  os << contents;
  if (!os) throw InputError("write failed: " + path);
}

template <typename T>
void WritePod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T ReadPod(std::istream& is, const std::string& what) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ParseError(what, 0, "unexpected end of file");
  return v;
}

template void WritePod<uint64>(std::ostream&, const uint64&);
template void WritePod<int64>(std::ostream&, const int64&);
template void WritePod<int32>(std::ostream&, const int32&);
template void WritePod<double>(std::ostream&, const double&);
template uint64 ReadPod<uint64>(std::istream&, const std::string&);
template int64 ReadPod<int64>(std::istream&, const std::string&);
template int32 ReadPod<int32>(std::istream&, const std::string&);
template double ReadPod<double>(std::istream&, const std::string&);

void WriteDoubles(std::ostream& os, const double* data, size_t n) {
  os.write(reinterpret_cast<const char*>(data), n * sizeof(double));
}

void ReadDoubles(std::istream& is, double* data, size_t n, const std::string& what) {
  is.read(reinterpret_cast<char*>(data), n * sizeof(double));
  if (!is) throw ParseError(what, 0, "unexpected end of file reading tensor");
}

uint64 Fnv1a64(const void* data, size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64 h = 0xcbf29ce484222325ull;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64 Fnv1a64(const std::string& s) { return Fnv1a64(s.data(), s.size()); }

std::string FormatDouble17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace deltadec
