// sim/corpus.cc

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

#include "sim/corpus.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "base/io.h"
#include "base/rng.h"

namespace deltadec {

using nlohmann::json;

void SimSpec::Validate() const {
  if (vocab_size < 2 || sessions < 1 || utterances_per_session < 1)
    throw ConfigError("sim spec sizes must be positive");
  if (beta < 0 || beta > 1) throw ConfigError("beta must lie in [0, 1]");
  if (sigma < 0) throw ConfigError("sigma must be >= 0");
  if (mean_utterance_len < 1) throw ConfigError("mean utterance length must be >= 1");
  if (frames_per_symbol < 1) throw ConfigError("frames per symbol must be >= 1");
}

std::vector<std::string> SimWordList(int vocab_size) {
  static const char* kConsonants = "bdgklmnprst";
  static const char* kVowels = "aeiou";
  const int nc = 11, nv = 5;
  std::vector<std::string> words;
  words.reserve(vocab_size);
  for (int i = 0; i < vocab_size; ++i) {
    std::string w;
    int x = i;
    do {
      w += kConsonants[x % nc];
      w += kVowels[(x / nc) % nv];
      x /= nc * nv;
    } while (x > 0);
    // Stretch short words with a closing consonant for spelling overlap.
    if (i % 3 == 0) w += kConsonants[i % nc];
    words.push_back(w);
  }
  return words;
}

std::shared_ptr<Vocabulary> SimVocabulary(int vocab_size) {
  auto vocab = std::make_shared<Vocabulary>();
  for (const auto& w : SimWordList(vocab_size)) vocab->AddWord(w);
  return vocab;
}

std::vector<Conversation> GenCorpus(const SimSpec& spec, const Vocabulary& vocab) {
  spec.Validate();
  Rng rng(DeriveSeed(spec.seed, "gen-corpus"));
  const auto word_ids = vocab.RegularWordIds();
  const int v = static_cast<int>(word_ids.size());
  if (v < 2) throw ConfigError("sim vocabulary too small");

  // Zipf-like background over the word list.
  std::vector<double> bg_cdf(v);
  double acc = 0.0;
  for (int i = 0; i < v; ++i) {
    acc += 1.0 / static_cast<double>(i + 2);
    bg_cdf[i] = acc;
  }
  auto draw_background = [&]() {
    double u = rng.Uniform(0.0, bg_cdf.back());
    return word_ids[std::lower_bound(bg_cdf.begin(), bg_cdf.end(), u) - bg_cdf.begin()];
  };

  const int topic_size = std::max(2, std::min(6, v / 4));
  std::vector<Conversation> corpus;
  corpus.reserve(spec.sessions);
  for (int s = 0; s < spec.sessions; ++s) {
    Conversation conv;
    conv.session_id = "s" + std::to_string(s);
    std::vector<int32> topic;
    while (static_cast<int>(topic.size()) < topic_size) {
      int32 w = word_ids[rng.UniformInt(0, v - 1)];
      if (std::find(topic.begin(), topic.end(), w) == topic.end()) topic.push_back(w);
    }
    std::vector<std::vector<int32>> history;
    for (int t = 0; t < spec.utterances_per_session; ++t) {
      int len = std::max<int64>(
          1, std::llround(rng.Uniform(0.5, 1.5) * spec.mean_utterance_len));
      Utterance utt;
      utt.order = t;
      for (int k = 0; k < len; ++k) {
        double u = rng.Uniform(0.0, 1.0);
        if (t > 0 && u < spec.beta) {
          // Recency-weighted draw from earlier utterances of the session.
          int age = 0;
          while (age < t - 1 && rng.Uniform(0.0, 1.0) < 0.5) ++age;
          const auto& src = history[t - 1 - age];
          utt.words.push_back(src[rng.UniformInt(0, static_cast<int64>(src.size()) - 1)]);
        } else if (u < spec.beta + (1.0 - spec.beta) * 0.5) {
          utt.words.push_back(topic[rng.UniformInt(0, topic_size - 1)]);
        } else {
          utt.words.push_back(draw_background());
        }
      }
      history.push_back(utt.words);
      conv.utterances.push_back(std::move(utt));
    }
    corpus.push_back(std::move(conv));
  }
  return corpus;
}

std::vector<std::vector<int32>> FlattenUtterances(const std::vector<Conversation>& corpus) {
  std::vector<std::vector<int32>> out;
  for (const auto& conv : corpus)
    for (const auto& utt : conv.utterances) out.push_back(utt.words);
  return out;
}

std::string CorpusToJsonl(const std::vector<Conversation>& corpus, const Vocabulary& vocab) {
  std::ostringstream os;
  for (const auto& conv : corpus) {
    for (const auto& utt : conv.utterances) {
      std::string text;
      for (size_t i = 0; i < utt.words.size(); ++i) {
        if (i) text += ' ';
        text += vocab.Name(utt.words[i]);
      }
      json j;
      j["session"] = conv.session_id;
      j["order"] = utt.order;
      j["text"] = text;
      os << j.dump() << '\n';
    }
  }
  return os.str();
}

std::vector<Conversation> CorpusFromJsonl(const std::string& text, const Vocabulary& vocab,
                                          const std::string& name) {
  std::istringstream is(text);
  std::string line;
  int64 lineno = 0;
  std::vector<Conversation> corpus;
  std::unordered_map<std::string, size_t> index;
  while (std::getline(is, line)) {
    ++lineno;
    if (SplitWhitespace(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(name, lineno, e.what());
    }
    if (!j.contains("session") || !j.contains("order") || !j.contains("text"))
      throw ParseError(name, lineno, "utterance object needs session/order/text");
    std::string sid = j["session"].get<std::string>();
    auto [it, inserted] = index.emplace(sid, corpus.size());
    if (inserted) corpus.push_back(Conversation{sid, {}});
    Utterance utt;
    utt.order = j["order"].get<int>();
    utt.words = vocab.TokenizeToIds(j["text"].get<std::string>());
    if (utt.words.empty()) throw ParseError(name, lineno, "empty utterance");
    corpus[it->second].utterances.push_back(std::move(utt));
  }
  for (auto& conv : corpus) {
    std::sort(conv.utterances.begin(), conv.utterances.end(),
              [](const Utterance& a, const Utterance& b) { return a.order < b.order; });
    for (size_t i = 0; i < conv.utterances.size(); ++i)
      if (conv.utterances[i].order != static_cast<int>(i))
        throw ParseError(name, 0, "session " + conv.session_id +
                                      " has non-contiguous utterance order indices");
  }
  return corpus;
}

void WriteCorpusJsonl(const std::vector<Conversation>& corpus, const Vocabulary& vocab,
                      const std::string& path) {
  WriteStringToFile(path, CorpusToJsonl(corpus, vocab));
}

std::vector<Conversation> ReadCorpusJsonl(const std::string& path, const Vocabulary& vocab) {
  return CorpusFromJsonl(ReadFileToString(path), vocab, path);
}

}  // namespace deltadec
