// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bipexp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bipexp/error.hpp"

namespace bipexp {
namespace {

void to_csr(std::size_t rows, const std::vector<std::pair<Index, Index>>& sorted_pairs,
            std::vector<std::size_t>& off, std::vector<Index>& idx) {
  off.assign(rows + 1, 0);
  idx.resize(sorted_pairs.size());
  for (const auto& [r, c] : sorted_pairs) ++off[r + 1];
  std::partial_sum(off.begin(), off.end(), off.begin());
  for (std::size_t e = 0; e < sorted_pairs.size(); ++e) idx[e] = sorted_pairs[e].second;
}

}  // namespace

BipartiteGraph BipartiteGraph::build(std::size_t m, std::size_t n, std::span<const Edge> edges) {
  std::vector<std::pair<Index, Index>> by_outcome;
  by_outcome.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.intervention >= m || e.outcome >= n) {
      std::ostringstream os;
      os << "edge (" << e.intervention << ", " << e.outcome << ") outside " << m << " x " << n;
      fail(ErrorCode::kIndexOutOfRange, os.str());
    }
    by_outcome.emplace_back(e.outcome, e.intervention);
  }
  std::sort(by_outcome.begin(), by_outcome.end());
  auto dup = std::adjacent_find(by_outcome.begin(), by_outcome.end());
  if (dup != by_outcome.end()) {
    std::ostringstream os;
    os << "edge (" << dup->second << ", " << dup->first << ") listed twice";
    fail(ErrorCode::kDuplicateEdge, os.str());
  }

  BipartiteGraph g;
  g.m_ = m;
  g.n_ = n;
  to_csr(n, by_outcome, g.out_off_, g.out_idx_);

  std::vector<Index> isolated;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.out_off_[i] == g.out_off_[i + 1]) isolated.push_back(static_cast<Index>(i));
  }
  if (!isolated.empty()) {
    std::ostringstream os;
    os << isolated.size() << " outcome unit(s) without neighbors:";
    for (std::size_t t = 0; t < isolated.size() && t < 20; ++t) os << ' ' << isolated[t];
    if (isolated.size() > 20) os << " ...";
    fail(ErrorCode::kIsolatedOutcomeUnit, os.str());
  }

  std::vector<std::pair<Index, Index>> by_intervention;
  by_intervention.reserve(edges.size());
  for (const auto& [i, k] : by_outcome) by_intervention.emplace_back(k, i);
  std::sort(by_intervention.begin(), by_intervention.end());
  to_csr(m, by_intervention, g.int_off_, g.int_idx_);
  return g;
}

void BipartiteGraph::check_outcome(Index i) const {
  if (i >= n_) {
    fail(ErrorCode::kIndexOutOfRange,
         "outcome unit " + std::to_string(i) + " >= n = " + std::to_string(n_));
  }
}

std::span<const Index> BipartiteGraph::outcome_neighbors(Index i) const {
  check_outcome(i);
  return {out_idx_.data() + out_off_[i], out_off_[i + 1] - out_off_[i]};
}

std::span<const Index> BipartiteGraph::intervention_neighbors(Index k) const {
  if (k >= m_) {
    fail(ErrorCode::kIndexOutOfRange,
         "intervention unit " + std::to_string(k) + " >= m = " + std::to_string(m_));
  }
  return {int_idx_.data() + int_off_[k], int_off_[k + 1] - int_off_[k]};
}

std::size_t BipartiteGraph::overlap_size(Index i, Index j) const {
  auto a = outcome_neighbors(i);
  auto b = outcome_neighbors(j);
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::size_t BipartiteGraph::union_size(Index i, Index j) const {
  return outcome_degree(i) + outcome_degree(j) - overlap_size(i, j);
}

std::vector<OverlapPair> BipartiteGraph::overlapping_pairs() const {
  std::vector<OverlapPair> pairs;
  std::vector<Index> count(n_, 0);
  std::vector<Index> touched;
  for (Index i = 0; i < n_; ++i) {
    touched.clear();
    for (std::size_t e = out_off_[i]; e < out_off_[i + 1]; ++e) {
      const Index k = out_idx_[e];
      for (std::size_t f = int_off_[k]; f < int_off_[k + 1]; ++f) {
        const Index j = int_idx_[f];
        if (j < i) continue;
        if (count[j]++ == 0) touched.push_back(j);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Index j : touched) {
      pairs.push_back({i, j, count[j]});
      count[j] = 0;
    }
  }
  return pairs;
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Index i = 0; i < n_; ++i) {
    for (std::size_t e = out_off_[i]; e < out_off_[i + 1]; ++e) out.push_back({out_idx_[e], i});
  }
  return out;
}

SparsityReport sparsity_report(const BipartiteGraph& g) {
  SparsityReport r;
  for (Index i = 0; i < g.n(); ++i) r.max_outcome_degree = std::max(r.max_outcome_degree, g.outcome_degree(i));

  std::vector<char> seen(g.m(), 0);
  std::vector<Index> touched;
  for (Index k = 0; k < g.m(); ++k) {
    const auto outcomes = g.intervention_neighbors(k);
    r.max_intervention_degree = std::max(r.max_intervention_degree, outcomes.size());
    if (outcomes.empty()) ++r.isolated_intervention_units;
    touched.clear();
    for (Index i : outcomes) {
      for (Index l : g.outcome_neighbors(i)) {
        if (l != k && !seen[l]) {
          seen[l] = 1;
          touched.push_back(l);
        }
      }
    }
    r.max_connectivity = std::max(r.max_connectivity, touched.size());
    for (Index l : touched) seen[l] = 0;
  }

  for (const auto& pr : g.overlapping_pairs()) {
    ++r.overlapping_pairs;
    if (pr.i != pr.j) ++r.offdiagonal_overlapping_pairs;
  }
  return r;
}

BipartiteGraph generate_random(std::size_t n, std::size_t m, std::size_t max_degree, Rng& rng) {
  if (max_degree < 1 || max_degree > m) {
    fail(ErrorCode::kInvalidDegreeBound,
         "max_degree " + std::to_string(max_degree) + " not in [1, m = " + std::to_string(m) + "]");
  }
  std::vector<Edge> edges;
  std::vector<Index> chosen;
  for (Index i = 0; i < n; ++i) {
    const std::size_t degree = 1 + rng.below(max_degree);
    // Floyd sampling of `degree` distinct values from [0, m).
    chosen.clear();
    for (std::size_t j = m - degree; j < m; ++j) {
      const auto t = static_cast<Index>(rng.below(j + 1));
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      } else {
        chosen.push_back(static_cast<Index>(j));
      }
    }
    for (Index k : chosen) edges.push_back({k, i});
  }
  return BipartiteGraph::build(m, n, edges);
}

BipartiteGraph generate_random(std::size_t n, std::size_t m, std::size_t max_degree,
                               std::uint64_t seed) {
  Rng rng(seed);
  return generate_random(n, m, max_degree, rng);
}

BipartiteGraph cluster_graph(std::span<const std::size_t> cluster_sizes) {
  std::vector<Edge> edges;
  Index next = 0;
  for (std::size_t k = 0; k < cluster_sizes.size(); ++k) {
    if (cluster_sizes[k] == 0) fail(ErrorCode::kEmptyCluster, "cluster " + std::to_string(k) + " is empty");
    for (std::size_t t = 0; t < cluster_sizes[k]; ++t) edges.push_back({static_cast<Index>(k), next++});
  }
  return BipartiteGraph::build(cluster_sizes.size(), next, edges);
}

BipartiteGraph identity_graph(std::size_t n) {
  std::vector<std::size_t> ones(n, 1);
  return cluster_graph(ones);
}

PrunedGraph prune_isolated(std::size_t m, std::size_t n, std::span<const Edge> edges) {
  std::vector<char> int_used(m, 0);
  std::vector<char> out_used(n, 0);
  for (const Edge& e : edges) {
    if (e.intervention >= m || e.outcome >= n) {
      fail(ErrorCode::kIndexOutOfRange, "edge (" + std::to_string(e.intervention) + ", " +
                                            std::to_string(e.outcome) + ") out of range");
    }
    int_used[e.intervention] = 1;
    out_used[e.outcome] = 1;
  }
  if (edges.empty()) fail(ErrorCode::kAllUnitsIsolated, "edge list is empty");

  constexpr Index kDropped = static_cast<Index>(-1);
  PrunedGraph result{BipartiteGraph::build(1, 1, std::vector<Edge>{{0, 0}}), {}, {}};
  std::vector<Index> int_new(m, kDropped), out_new(n, kDropped);
  for (Index k = 0; k < m; ++k) {
    if (int_used[k]) {
      int_new[k] = static_cast<Index>(result.kept_interventions.size());
      result.kept_interventions.push_back(k);
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (out_used[i]) {
      out_new[i] = static_cast<Index>(result.kept_outcomes.size());
      result.kept_outcomes.push_back(i);
    }
  }
  std::vector<Edge> relabeled;
  relabeled.reserve(edges.size());
  for (const Edge& e : edges) relabeled.push_back({int_new[e.intervention], out_new[e.outcome]});
  result.graph = BipartiteGraph::build(result.kept_interventions.size(),
                                       result.kept_outcomes.size(), relabeled);
  return result;
}

}  // namespace bipexp
