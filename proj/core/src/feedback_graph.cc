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

#include "winexp/feedback_graph.h"

#include <bit>
#include <cstdint>
#include <string>

#include "winexp/errors.h"

namespace winexp {
namespace {

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Branch and bound over bitmasks. `adjacent[v]` holds the symmetrized
// neighbours of v without v itself.
void SearchIndependent(const std::vector<std::uint32_t>& adjacent,
                       std::uint32_t candidates, std::size_t chosen,
                       std::size_t& best) {
  if (candidates == 0) {
    if (chosen > best) best = chosen;
    return;
  }
  if (chosen + static_cast<std::size_t>(std::popcount(candidates)) <= best) {
    return;
  }
  const int v = std::countr_zero(candidates);
  const std::uint32_t bit = std::uint32_t{1} << v;
  SearchIndependent(adjacent, candidates & ~bit & ~adjacent[v], chosen + 1, best);
  // Excluding v only helps when v has a neighbour left among the candidates.
  if ((adjacent[v] & candidates) != 0) {
    SearchIndependent(adjacent, candidates & ~bit, chosen, best);
  }
}

}  // namespace

FeedbackGraph FeedbackGraph::Raw(
    const OutcomeSet& outcomes,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  FeedbackGraph graph;
  const std::size_t n = outcomes.size();
  graph.labels_ = outcomes.labels();
  graph.source_index_.resize(n);
  for (std::size_t i = 0; i < n; ++i) graph.source_index_[i] = i;
  graph.adjacency_.assign(n * n, false);
  for (const auto& [from, to] : edges) {
    if (from >= n || to >= n) throw InvalidGraph("edge endpoint out of range");
    graph.adjacency_[from * n + to] = true;
  }
  return graph;
}

FeedbackGraph FeedbackGraph::WithSelfLoops(
    const OutcomeSet& outcomes,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  FeedbackGraph graph = Raw(outcomes, edges);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    graph.adjacency_[i * graph.size() + i] = true;
  }
  return graph;
}

bool FeedbackGraph::HasAllSelfLoops() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!HasEdge(i, i)) return false;
  }
  return true;
}

std::size_t FeedbackGraph::NodeOf(std::size_t source) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (source_index_[i] == source) return i;
  }
  return size();
}

std::vector<std::size_t> FeedbackGraph::InNeighbors(std::size_t node) const {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < size(); ++i) {
    if (HasEdge(i, node)) result.push_back(i);
  }
  return result;
}

std::vector<std::size_t> FeedbackGraph::OutNeighbors(std::size_t node) const {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < size(); ++i) {
    if (HasEdge(node, i)) result.push_back(i);
  }
  return result;
}

FeedbackGraph FeedbackGraph::Induced(std::span<const std::size_t> nodes) const {
  FeedbackGraph sub;
  const std::size_t m = nodes.size();
  sub.labels_.reserve(m);
  sub.source_index_.reserve(m);
  sub.adjacency_.assign(m * m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (nodes[i] >= size()) throw InvalidArgument("subgraph node out of range");
    if (i > 0 && nodes[i] <= nodes[i - 1]) {
      throw InvalidArgument("subgraph nodes must be increasing");
    }
    sub.labels_.push_back(labels_[nodes[i]]);
    sub.source_index_.push_back(source_index_[nodes[i]]);
    for (std::size_t j = 0; j < m; ++j) {
      sub.adjacency_[i * m + j] = HasEdge(nodes[i], nodes[j]);
    }
  }
  return sub;
}

FeedbackGraph EpsilonSubgraph(const FeedbackGraph& graph,
                              std::span<const double> marginals,
                              double threshold) {
  if (marginals.size() != graph.size()) {
    throw InvalidArgument("one marginal per graph node expected");
  }
  std::vector<std::size_t> kept;
  for (std::size_t o = 0; o < graph.size(); ++o) {
    if (marginals[o] >= threshold) kept.push_back(o);
  }
  return graph.Induced(kept);
}

std::size_t IndependenceNumber(const FeedbackGraph& graph) {
  const std::size_t n = graph.size();
  if (n > kMaxExactIndependenceNodes) {
    throw SizeLimit("independence number search limited to " +
                    std::to_string(kMaxExactIndependenceNodes) + " outcomes");
  }
  if (n == 0) return 0;
  std::vector<std::uint32_t> adjacent(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (graph.HasEdge(i, j) || graph.HasEdge(j, i))) {
        adjacent[i] |= std::uint32_t{1} << j;
      }
    }
  }
  const std::uint32_t all =
      (n == 32) ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  std::size_t best = 0;
  SearchIndependent(adjacent, all, 0, best);
  return best;
}

double GraphThreshold(std::size_t num_outcomes, std::size_t horizon) {
  if (num_outcomes == 0 || horizon == 0) {
    throw InvalidArgument("graph threshold needs |O| >= 1 and T >= 1");
  }
  return 1.0 / (4.0 * static_cast<double>(num_outcomes) *
                static_cast<double>(horizon));
}

double InNeighborhoodRatioSum(const FeedbackGraph& graph,
                              std::span<const double> weights) {
  if (weights.size() != graph.size()) {
    throw InvalidArgument("one weight per graph node expected");
  }
  double total = 0.0;
  for (std::size_t o = 0; o < graph.size(); ++o) {
    double in_mass = 0.0;
    for (std::size_t src : graph.InNeighbors(o)) in_mass += weights[src];
    total += weights[o] / in_mass;
  }
  return total;
}

FeedbackGraph ParseGraphLiteral(const OutcomeSet& outcomes,
                                std::string_view literal) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::string_view entry : Split(literal, ';')) {
    const std::string trimmed = Trim(entry);
    if (trimmed.empty()) continue;
    const auto colon = trimmed.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("graph entry '" + trimmed + "' lacks ':'");
    }
    const std::size_t from = outcomes.IndexOf(Trim(trimmed.substr(0, colon)));
    for (std::string_view target :
         Split(std::string_view(trimmed).substr(colon + 1), ',')) {
      const std::string name = Trim(target);
      if (name.empty()) continue;
      edges.emplace_back(from, outcomes.IndexOf(name));
    }
  }
  return FeedbackGraph::WithSelfLoops(outcomes, edges);
}

}  // namespace winexp
