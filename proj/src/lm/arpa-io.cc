// lm/arpa-io.cc

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

#include "lm/arpa-io.h"

#include <cmath>
#include <sstream>

#include "base/io.h"

namespace deltadec {

namespace {

constexpr double kLn10 = 2.30258509299404568402;
constexpr double kArpaLogZero = -99.0;

double ToLog10(double nat) {
  if (nat == kLogZero) return kArpaLogZero;
  return nat / kLn10;
}

double FromLog10(double l10) {
  if (l10 <= -98.0) return kLogZero;
  return l10 * kLn10;
}

std::string FormatLog10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

}  // namespace

std::string ArpaWriteString(const NGramModel& model) {
  std::ostringstream os;
  os << "\\data\\\n";
  for (int m = 1; m <= model.Order(); ++m)
    os << "ngram " << m << "=" << model.NumGrams(m) << "\n";
  for (int m = 1; m <= model.Order(); ++m) {
    os << "\n\\" << m << "-grams:\n";
    model.ForEachGramSorted(m, [&](const std::vector<int32>& gram, const GramEntry& e) {
      os << FormatLog10(ToLog10(e.logp));
      for (int32 id : gram) os << (id == gram.front() ? '\t' : ' ') << model.Vocab().Name(id);
      if (e.has_bow) os << '\t' << FormatLog10(ToLog10(e.bow));
      os << '\n';
    });
  }
  os << "\n\\end\\\n";
  return os.str();
}

void ArpaWriteFile(const NGramModel& model, const std::string& path) {
  WriteStringToFile(path, ArpaWriteString(model));
}

NGramModel ArpaReadString(const std::string& text, const std::string& name) {
  std::istringstream is(text);
  std::string line;
  int64 lineno = 0;

  auto next_nonempty = [&](const char* missing_what) {
    while (std::getline(is, line)) {
      ++lineno;
      if (!SplitWhitespace(line).empty()) return;
    }
    throw ParseError(name, lineno, std::string("unexpected end of file; missing ") + missing_what);
  };

  next_nonempty("\\data\\ header");
  if (line.find("\\data\\") == std::string::npos)
    throw ParseError(name, lineno, "expected \\data\\ header");

  std::vector<int64> declared;
  for (;;) {
    next_nonempty("ngram count declarations");
    auto f = SplitWhitespace(line);
    if (f[0] != "ngram") break;
    auto eq = f.at(1).find('=');
    if (f.size() != 2 || eq == std::string::npos)
      throw ParseError(name, lineno, "expected 'ngram N=count'");
    int m = std::stoi(f[1].substr(0, eq));
    if (m != static_cast<int>(declared.size()) + 1)
      throw ParseError(name, lineno, "ngram orders must be declared 1..N in sequence");
    declared.push_back(std::stoll(f[1].substr(eq + 1)));
  }
  if (declared.empty()) throw ParseError(name, lineno, "no ngram counts declared");
  int order = static_cast<int>(declared.size());

  // First pass through the unigram section builds the vocabulary; the grams
  // themselves load as id sequences.
  auto vocab = std::make_shared<Vocabulary>();
  NGramModel model(order, vocab);

  for (int m = 1; m <= order; ++m) {
    // `line` currently holds the section header for order m.
    std::string expect = "\\" + std::to_string(m) + "-grams:";
    if (SplitWhitespace(line)[0] != expect)
      throw ParseError(name, lineno, "expected section " + expect);
    int64 read_count = 0;
    for (;;) {
      next_nonempty(m == order ? "\\end\\ marker" : "next n-gram section");
      auto f = SplitWhitespace(line);
      if (f[0][0] == '\\') break;  // next section marker or end marker
      int expected_min = 1 + m, expected_max = (m < order) ? 2 + m : 1 + m;
      if (static_cast<int>(f.size()) < expected_min || static_cast<int>(f.size()) > expected_max)
        throw ParseError(name, lineno, "malformed " + std::to_string(m) + "-gram line");
      double logp;
      try {
        logp = FromLog10(std::stod(f[0]));
      } catch (const std::exception&) {
        throw ParseError(name, lineno, "bad log probability '" + f[0] + "'");
      }
      std::vector<int32> ids;
      for (int i = 0; i < m; ++i) {
        const std::string& w = f[1 + i];
        int32 id = (m == 1) ? vocab->AddWord(w) : vocab->Symbols()->Find(w);
        if (id < 0)
          throw ParseError(name, lineno, "word '" + w + "' not in unigram section");
        ids.push_back(id);
      }
      model.AddGram(ids, logp);
      if (static_cast<int>(f.size()) == 2 + m) {
        if (m >= order)
          throw ParseError(name, lineno, "backoff weight on highest order");
        try {
          model.SetBow(ids, FromLog10(std::stod(f[m + 1])));
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception&) {
          throw ParseError(name, lineno, "bad backoff weight '" + f[m + 1] + "'");
        }
      }
      ++read_count;
    }
    if (read_count != declared[m - 1])
      throw ParseError(name, lineno,
                       "section " + std::to_string(m) + "-grams declared " +
                           std::to_string(declared[m - 1]) + " entries, found " +
                           std::to_string(read_count));
  }
  if (line.find("\\end\\") == std::string::npos)
    throw ParseError(name, lineno, "expected \\end\\ marker");

  // A usable model needs the reserved tokens listed.
  for (int32 id : {vocab->Eos(), vocab->Unk()}) {
    std::vector<int32> g{id};
    if (!model.HasGram(g))
      throw ParseError(name, lineno,
                       "unigram section missing reserved word " + vocab->Name(id));
  }
  std::vector<int32> bos{vocab->Bos()};
  if (!model.HasGram(bos)) model.AddGram(bos, kLogZero);
  model.CheckWellFormed();
  return model;
}

NGramModel ArpaReadFile(const std::string& path) {
  return ArpaReadString(ReadFileToString(path), path);
}

}  // namespace deltadec
