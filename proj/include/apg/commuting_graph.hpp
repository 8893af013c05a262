#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apg/bitset.hpp"
#include "apg/group.hpp"

namespace apg {

/// Commuting graph C(G, X): vertices are the elements of X, joined when they
/// commute. The noncommuting graph is exposed as a complement view.
class CommGraph {
 public:
  CommGraph(std::vector<Elem> vertex_map, std::vector<Bitset> rows);

  std::size_t size() const { return vertex_map_.size(); }
  Elem element(std::size_t v) const { return vertex_map_[v]; }
  const std::vector<Elem>& vertex_map() const { return vertex_map_; }

  bool adjacent(std::size_t v, std::size_t w) const { return v != w && rows_[v].test(w); }
  bool nc_adjacent(std::size_t v, std::size_t w) const { return v != w && !rows_[v].test(w); }
  /// Neighbours in the commuting graph (self excluded).
  const Bitset& row(std::size_t v) const { return rows_[v]; }
  /// Neighbours in the noncommuting graph.
  Bitset nc_row(std::size_t v) const;

 private:
  std::vector<Elem> vertex_map_;
  std::vector<Bitset> rows_;
};

CommGraph build_commuting_graph(const Group& g,
                                const std::optional<std::vector<Elem>>& vertices = std::nullopt);

struct CliqueOptions {
  std::size_t max_order = 5'000;
  std::uint64_t node_budget = 100'000'000;
};

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Elem> witness;  // group elements, sorted
  bool exact = false;         // false: budget cut, size is a lower bound
  std::uint64_t nodes = 0;
};

/// Maximum clique of the noncommuting graph, i.e. n(G) with a witness.
CliqueResult max_noncommuting_set(const Group& g, const CliqueOptions& opts = {});
/// Same on an arbitrary vertex subset (graph built over that subset).
CliqueResult max_noncommuting_set(const CommGraph& graph, const CliqueOptions& opts = {});

/// (m, n)-split claim over graph vertex indices.
struct SplitPartitionClaim {
  std::vector<std::vector<std::size_t>> independent_blocks;
  std::vector<std::vector<std::size_t>> complete_blocks;
};

/// True iff independent blocks are edge-free and complete blocks are cliques
/// in the commuting graph. Throws MalformedClaim on overlap, gaps or
/// out-of-range vertices.
bool verify_mn_split(const CommGraph& graph, const SplitPartitionClaim& claim);

/// DIMACS-style edge list ("p edge n m" then "e u v", 1-based).
std::string to_dimacs(const CommGraph& graph, bool noncommuting);

}  // namespace apg
