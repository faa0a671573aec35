// fst/wfst-algo.cc

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

#include "fst/wfst-algo.h"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

namespace deltadec {

LabelResolution ResolveLabel(const Wfst& f, int32 state, int32 label) {
  if (label == kEpsLabel || label == f.PhiLabel())
    throw InternalError("ResolveLabel queried with epsilon or phi");
  LabelResolution r;
  int32 s = state;
  double acc = 0.0;
  for (int32 hops = 0; hops <= f.NumStates(); ++hops) {
    const Arc* phi = nullptr;
    for (const Arc& a : f.Arcs(s)) {
      if (a.ilabel == label) {
        r.ok = true;
        r.cost = acc + a.cost;
        r.next = a.next;
        r.olabel = a.olabel;
        return r;
      }
      if (f.PhiLabel() >= 0 && a.ilabel == f.PhiLabel()) phi = &a;
    }
    if (phi == nullptr) return r;  // dead end
    acc += phi->cost;
    s = phi->next;
  }
  throw InternalError("phi cycle detected during label resolution");
}

double StringCost(const Wfst& f, std::span<const int32> labels) {
  if (f.NumStates() == 0 || f.Start() < 0) return kInfCost;
  int32 s = f.Start();
  double cost = 0.0;
  for (int32 label : labels) {
    LabelResolution r = ResolveLabel(f, s, label);
    if (!r.ok) return kInfCost;
    cost += r.cost;
    s = r.next;
  }
  if (!f.IsFinal(s)) return kInfCost;
  return cost + f.Final(s);
}

Wfst Trim(const Wfst& f) {
  Wfst out;
  out.SetInputSymbols(f.InputSymbols());
  out.SetOutputSymbols(f.OutputSymbols());
  out.SetPhiLabel(f.PhiLabel());
  if (f.NumStates() == 0 || f.Start() < 0) return out;

  int32 n = f.NumStates();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::deque<int32> queue;
  fwd[f.Start()] = true;
  queue.push_back(f.Start());
  while (!queue.empty()) {
    int32 s = queue.front();
    queue.pop_front();
    for (const Arc& a : f.Arcs(s))
      if (!fwd[a.next]) {
        fwd[a.next] = true;
        queue.push_back(a.next);
      }
  }
  std::vector<std::vector<int32>> rev(n);
  for (int32 s = 0; s < n; ++s)
    for (const Arc& a : f.Arcs(s)) rev[a.next].push_back(s);
  for (int32 s = 0; s < n; ++s)
    if (f.IsFinal(s)) {
      bwd[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int32 s = queue.front();
    queue.pop_front();
    for (int32 p : rev[s])
      if (!bwd[p]) {
        bwd[p] = true;
        queue.push_back(p);
      }
  }

  std::vector<int32> remap(n, -1);
  for (int32 s = 0; s < n; ++s)
    if (fwd[s] && bwd[s]) remap[s] = out.AddState();
  if (remap[f.Start()] < 0) return out;  // empty language
  out.SetStart(remap[f.Start()]);
  for (int32 s = 0; s < n; ++s) {
    if (remap[s] < 0) continue;
    for (const Arc& a : f.Arcs(s)) {
      if (remap[a.next] < 0) continue;
      Arc copy = a;
      copy.next = remap[a.next];
      out.AddArc(remap[s], copy);
    }
    if (f.IsFinal(s)) out.SetFinal(remap[s], f.Final(s));
  }
  return out;
}

Wfst Compose(const Wfst& a, const Wfst& b) {
  if (!a.OutputSymbols() || !b.InputSymbols())
    throw ConfigError("compose: operands need symbol tables");
  if (!(*a.OutputSymbols() == *b.InputSymbols()))
    throw ConfigError("compose: output symbols of left operand differ from input symbols of right operand");
  if (a.HasPhiArcs())
    throw ConfigError("compose: left operand must not contain phi arcs");
  for (int32 s = 0; s < b.NumStates(); ++s)
    for (const Arc& arc : b.Arcs(s))
      if (arc.ilabel == kEpsLabel)
        throw ConfigError("compose: epsilon input arcs in right operand unsupported");

  Wfst out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (a.NumStates() == 0 || b.NumStates() == 0 || a.Start() < 0 || b.Start() < 0)
    return out;

  std::map<std::pair<int32, int32>, int32> ids;
  std::deque<std::pair<int32, int32>> queue;
  auto state_of = [&](int32 qa, int32 qb) {
    auto key = std::make_pair(qa, qb);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int32 id = out.AddState();
    ids.emplace(key, id);
    queue.push_back(key);
    return id;
  };

  out.SetStart(state_of(a.Start(), b.Start()));
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    int32 src = ids.at({qa, qb});
    for (const Arc& arc : a.Arcs(qa)) {
      if (arc.olabel == kEpsLabel) {
        out.AddArc(src, Arc{arc.ilabel, kEpsLabel, arc.cost, state_of(arc.next, qb)});
        continue;
      }
      LabelResolution r = ResolveLabel(b, qb, arc.olabel);
      if (!r.ok) continue;
      out.AddArc(src, Arc{arc.ilabel, r.olabel, arc.cost + r.cost,
                          state_of(arc.next, r.next)});
    }
    double fa = a.Final(qa), fb = b.Final(qb);
    if (fa != kInfCost && fb != kInfCost) out.SetFinal(src, fa + fb);
  }
  return Trim(out);
}

namespace {

// Exact shortest distance from every state to acceptance (arc costs plus the
// final weight), Bellman-Ford since backoff arcs may carry negative cost.
std::vector<double> DistanceToFinal(const Wfst& f) {
  int32 n = f.NumStates();
  std::vector<double> h(n, kInfCost);
  for (int32 s = 0; s < n; ++s)
    if (f.IsFinal(s)) h[s] = f.Final(s);
  bool changed = true;
  for (int32 round = 0; round <= n && changed; ++round) {
    changed = false;
    for (int32 s = 0; s < n; ++s) {
      for (const Arc& a : f.Arcs(s)) {
        if (h[a.next] == kInfCost) continue;
        double cand = a.cost + h[a.next];
        if (cand < h[s] - 1e-15) {
          h[s] = std::min(h[s], cand);
          changed = true;
        }
      }
    }
  }
  if (changed) throw InternalError("negative-cost cycle detected in shortest path");
  return h;
}

struct SearchItem {
  double f = 0.0;  // g plus distance-to-final potential
  double g = 0.0;
  int32 state = -1;  // -1 marks a completed path
  std::vector<Arc> arcs;
  std::vector<int32> ilabels, olabels;

  bool operator>(const SearchItem& o) const {
    if (f != o.f) return f > o.f;
    if (olabels != o.olabels) return olabels > o.olabels;
    if (ilabels != o.ilabels) return ilabels > o.ilabels;
    return state > o.state;
  }
};

}  // namespace

std::vector<Path> ShortestPaths(const Wfst& fst, int n, int64 max_expansions) {
  std::vector<Path> result;
  if (n <= 0 || fst.NumStates() == 0 || fst.Start() < 0) return result;
  if (fst.HasPhiArcs())
    throw ConfigError("shortest path over failure arcs is undefined; expand phi first (compose)");
  std::vector<double> h = DistanceToFinal(fst);
  if (h[fst.Start()] == kInfCost) return result;  // no successful path

  std::priority_queue<SearchItem, std::vector<SearchItem>, std::greater<SearchItem>> heap;
  SearchItem start;
  start.state = fst.Start();
  start.f = h[fst.Start()];
  heap.push(std::move(start));

  std::set<std::vector<int32>> emitted;
  int64 pops = 0;
  while (!heap.empty() && static_cast<int>(result.size()) < n &&
         pops < max_expansions) {
    ++pops;
    SearchItem item = heap.top();
    heap.pop();
    if (item.state < 0) {
      if (emitted.insert(item.olabels).second) {
        Path p;
        p.arcs = std::move(item.arcs);
        p.cost = item.g;
        p.ilabels = std::move(item.ilabels);
        p.olabels = std::move(item.olabels);
        result.push_back(std::move(p));
      }
      continue;
    }
    if (fst.IsFinal(item.state)) {
      SearchItem done = item;
      done.g += fst.Final(item.state);
      done.f = done.g;
      done.state = -1;
      heap.push(std::move(done));
    }
    for (const Arc& a : fst.Arcs(item.state)) {
      if (h[a.next] == kInfCost) continue;
      SearchItem next = item;
      next.g += a.cost;
      next.f = next.g + h[a.next];
      next.state = a.next;
      next.arcs.push_back(a);
      if (a.ilabel != kEpsLabel && a.ilabel != fst.PhiLabel())
        next.ilabels.push_back(a.ilabel);
      if (a.olabel != kEpsLabel) next.olabels.push_back(a.olabel);
      heap.push(std::move(next));
    }
  }
  return result;
}

}  // namespace deltadec
