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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bipexp/rng.hpp"

namespace bipexp {

using Index = std::uint32_t;

/// One edge of the bipartite graph, 0-based on both sides.
struct Edge {
  Index intervention;
  Index outcome;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Outcome-unit pair (i <= j) sharing at least one intervention unit.
struct OverlapPair {
  Index i;
  Index j;
  Index overlap;
};

/// Immutable m x n bipartite graph stored as two sorted CSR adjacency views.
///
/// Every outcome unit has at least one neighbor; intervention units may be
/// isolated. Indices are 0-based; file formats translate from 1-based ids.
class BipartiteGraph {
 public:
  /// Throws IndexOutOfRange, DuplicateEdge, or IsolatedOutcomeUnit.
  static BipartiteGraph build(std::size_t m, std::size_t n, std::span<const Edge> edges);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return out_idx_.size(); }

  /// Sorted intervention units connected to outcome unit i.
  std::span<const Index> outcome_neighbors(Index i) const;
  /// Sorted outcome units connected to intervention unit k.
  std::span<const Index> intervention_neighbors(Index k) const;

  std::size_t outcome_degree(Index i) const { return outcome_neighbors(i).size(); }
  std::size_t intervention_degree(Index k) const { return intervention_neighbors(k).size(); }

  /// |N(i) ∩ N(j)| by sorted-list merge.
  std::size_t overlap_size(Index i, Index j) const;
  /// |N(i) ∪ N(j)|.
  std::size_t union_size(Index i, Index j) const;

  /// Every pair i <= j with a shared intervention unit, diagonal included,
  /// ordered by (i, j). Cost is O(sum_k deg(k)^2).
  std::vector<OverlapPair> overlapping_pairs() const;

  std::vector<Edge> edges() const;

 private:
  BipartiteGraph() = default;
  void check_outcome(Index i) const;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<std::size_t> out_off_;
  std::vector<Index> out_idx_;
  std::vector<std::size_t> int_off_;
  std::vector<Index> int_idx_;
};

struct SparsityReport {
  std::size_t max_outcome_degree = 0;
  std::size_t max_intervention_degree = 0;
  /// Largest number of other intervention units any unit shares an outcome with.
  std::size_t max_connectivity = 0;
  std::size_t isolated_intervention_units = 0;
  /// Overlapping pairs with i <= j, diagonal included.
  std::size_t overlapping_pairs = 0;
  std::size_t offdiagonal_overlapping_pairs = 0;
};

SparsityReport sparsity_report(const BipartiteGraph& g);

/// Random graph: each outcome unit draws a degree uniformly from
/// {1..max_degree} and that many distinct intervention units uniformly.
BipartiteGraph generate_random(std::size_t n, std::size_t m, std::size_t max_degree,
                               std::uint64_t seed);
BipartiteGraph generate_random(std::size_t n, std::size_t m, std::size_t max_degree, Rng& rng);

/// Intervention unit k covers the next sizes[k] outcome units.
BipartiteGraph cluster_graph(std::span<const std::size_t> cluster_sizes);

/// n units each linked to its own intervention unit.
BipartiteGraph identity_graph(std::size_t n);

struct PrunedGraph {
  BipartiteGraph graph;
  /// new index -> original index
  std::vector<Index> kept_interventions;
  std::vector<Index> kept_outcomes;
};

/// Drops degree-0 units on both sides and relabels the rest in order.
PrunedGraph prune_isolated(std::size_t m, std::size_t n, std::span<const Edge> edges);

/// Edge list read from an `intervention_id,outcome_id` CSV (1-based ids).
struct EdgeList {
  std::vector<Edge> edges;
  std::size_t max_intervention = 0;  // largest 1-based id seen
  std::size_t max_outcome = 0;
};

EdgeList read_edge_csv(const std::string& path);
EdgeList parse_edge_csv(const std::string& text, const std::string& source = "<memory>");
std::string format_edge_csv(const BipartiteGraph& g);

/// Graph over ids 1..max_intervention and 1..max_outcome. Isolated outcome
/// units are reported by their 1-based outcome_id.
BipartiteGraph graph_from_edge_list(const EdgeList& list);

}  // namespace bipexp
