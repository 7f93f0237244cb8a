// Copyright 2026 The Win-Exp Lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WINEXP_FEEDBACK_GRAPH_H_
#define WINEXP_FEEDBACK_GRAPH_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "winexp/outcome_model.h"

namespace winexp {

// Directed graph over outcomes. An edge o -> o' means that realizing o also
// reveals the reward function of o'. Nodes keep the index they had in the
// original outcome set so that subgraphs can be mapped back.
class FeedbackGraph {
 public:
  // Adds every self-loop on top of `edges`.
  static FeedbackGraph WithSelfLoops(
      const OutcomeSet& outcomes,
      std::span<const std::pair<std::size_t, std::size_t>> edges);
  // Uses `edges` verbatim; HasAllSelfLoops() may be false.
  static FeedbackGraph Raw(
      const OutcomeSet& outcomes,
      std::span<const std::pair<std::size_t, std::size_t>> edges);
  static FeedbackGraph SelfLoopsOnly(const OutcomeSet& outcomes) {
    return WithSelfLoops(outcomes, {});
  }

  std::size_t size() const { return source_index_.size(); }
  bool HasEdge(std::size_t from, std::size_t to) const {
    return adjacency_[from * size() + to];
  }
  bool HasAllSelfLoops() const;
  const std::string& label(std::size_t node) const { return labels_[node]; }
  // Index of `node` in the outcome set the root graph was built from.
  std::size_t SourceIndex(std::size_t node) const { return source_index_[node]; }
  // Node holding source outcome `source`, or size() when it was dropped.
  std::size_t NodeOf(std::size_t source) const;

  std::vector<std::size_t> InNeighbors(std::size_t node) const;
  std::vector<std::size_t> OutNeighbors(std::size_t node) const;

  // Subgraph induced by `nodes` (indices into this graph, increasing).
  FeedbackGraph Induced(std::span<const std::size_t> nodes) const;

 private:
  FeedbackGraph() = default;

  std::vector<std::string> labels_;
  std::vector<std::size_t> source_index_;
  std::vector<bool> adjacency_;
};

// G_eps: outcomes whose marginal is at least `threshold`. Marginals are
// indexed by node of `graph`.
FeedbackGraph EpsilonSubgraph(const FeedbackGraph& graph,
                              std::span<const double> marginals,
                              double threshold);

// Largest set of nodes with no edge in either direction between any two of
// them (self-loops ignored). Exact branch and bound; throws SizeLimit above
// kMaxExactIndependenceNodes nodes.
inline constexpr std::size_t kMaxExactIndependenceNodes = 24;
std::size_t IndependenceNumber(const FeedbackGraph& graph);

// 1 / (4 |O| T): the outcome threshold that balances bias against variance.
double GraphThreshold(std::size_t num_outcomes, std::size_t horizon);

// sum_{o in G} w(o) / sum_{o' in N_in(o)} w(o'), with w indexed by node.
double InNeighborhoodRatioSum(const FeedbackGraph& graph,
                              std::span<const double> weights);

// Parses "a:b,c; b:c; c:" (each entry lists the out-neighbours of a label).
// Labels missing from the literal have no extra edges. Self-loops are added.
FeedbackGraph ParseGraphLiteral(const OutcomeSet& outcomes,
                                std::string_view literal);

}  // namespace winexp

#endif  // WINEXP_FEEDBACK_GRAPH_H_
