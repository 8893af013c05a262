#include "apg/commuting_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "apg/error.hpp"
#include "apg/kernels.hpp"

namespace apg {

CommGraph::CommGraph(std::vector<Elem> vertex_map, std::vector<Bitset> rows)
    : vertex_map_(std::move(vertex_map)), rows_(std::move(rows)) {
  for (std::size_t v = 0; v < rows_.size(); ++v) rows_[v].reset(v);
}

Bitset CommGraph::nc_row(std::size_t v) const {
  Bitset out = Bitset::full(size());
  out.subtract(rows_[v]);
  out.reset(v);
  return out;
}

CommGraph build_commuting_graph(const Group& g, const std::optional<std::vector<Elem>>& vertices) {
  std::vector<Elem> vs;
  if (vertices) {
    vs = *vertices;
  } else {
    vs.resize(g.order());
    std::iota(vs.begin(), vs.end(), Elem{0});
  }
  auto rows = kernels::commute_rows(g, vs);
  return CommGraph(std::move(vs), std::move(rows));
}

namespace {

// Branch and bound with greedy colouring bounds over bitsets, in the style
// of Tomita's MCQ. Vertices are renumbered by non-increasing noncommuting
// degree so that bit order is search order.
class CliqueSearch {
 public:
  CliqueSearch(const CommGraph& graph, const CliqueOptions& opts) : opts_(opts) {
    const std::size_t n = graph.size();
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = n - 1 - graph.row(v).count();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    adj_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (graph.nc_adjacent(order_[i], order_[j])) adj_[i].set(j);
    n_ = n;
  }

  CliqueResult run(const CommGraph& graph) {
    CliqueResult res;
    if (n_ == 0) return res;
    best_ = {0};
    std::vector<std::size_t> current;
    Bitset cand = Bitset::full(n_);
    bool complete = true;
    try {
      expand(current, cand);
    } catch (const BudgetCut&) {
      complete = false;
    }
    res.size = best_.size();
    for (auto v : best_) res.witness.push_back(graph.element(order_[v]));
    std::sort(res.witness.begin(), res.witness.end());
    res.exact = complete;
    res.nodes = nodes_;
    return res;
  }

 private:
  struct BudgetCut {};

  void color_sort(const Bitset& cand, std::vector<std::size_t>& verts,
                  std::vector<std::size_t>& colors) const {
    Bitset uncolored = cand;
    std::size_t color = 0;
    verts.clear();
    colors.clear();
    while (uncolored.any()) {
      ++color;
      Bitset q = uncolored;
      for (std::size_t v = q.find_first(); v < n_; v = q.find_next(v + 1)) {
        uncolored.reset(v);
        q.subtract(adj_[v]);
        verts.push_back(v);
        colors.push_back(color);
      }
    }
  }

  void expand(std::vector<std::size_t>& current, Bitset cand) {
    if (++nodes_ > opts_.node_budget) throw BudgetCut{};
    std::vector<std::size_t> verts, colors;
    color_sort(cand, verts, colors);
    for (std::size_t k = verts.size(); k-- > 0;) {
      if (current.size() + colors[k] <= best_.size()) return;
      const std::size_t v = verts[k];
      current.push_back(v);
      Bitset next = cand & adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, std::move(next));
      }
      current.pop_back();
      cand.reset(v);
    }
  }

  CliqueOptions opts_;
  std::size_t n_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

CliqueResult max_noncommuting_set(const CommGraph& graph, const CliqueOptions& opts) {
  return CliqueSearch(graph, opts).run(graph);
}

CliqueResult max_noncommuting_set(const Group& g, const CliqueOptions& opts) {
  if (g.order() > opts.max_order)
    throw Error(ErrorCode::SearchBudgetExceeded,
                "exact n(G) limited to order " + std::to_string(opts.max_order));
  return max_noncommuting_set(build_commuting_graph(g), opts);
}

bool verify_mn_split(const CommGraph& graph, const SplitPartitionClaim& claim) {
  const std::size_t n = graph.size();
  std::vector<char> seen(n, 0);
  auto mark = [&](const std::vector<std::size_t>& block) {
    for (auto v : block) {
      if (v >= n) throw Error(ErrorCode::MalformedClaim, "vertex " + std::to_string(v) + " out of range");
      if (seen[v]) throw Error(ErrorCode::MalformedClaim, "vertex " + std::to_string(v) + " in two blocks");
      seen[v] = 1;
    }
  };
  for (const auto& b : claim.independent_blocks) mark(b);
  for (const auto& b : claim.complete_blocks) mark(b);
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::MalformedClaim, "blocks do not cover the vertex set");

  for (const auto& b : claim.independent_blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (graph.adjacent(b[i], b[j])) return false;
  for (const auto& b : claim.complete_blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (!graph.adjacent(b[i], b[j])) return false;
  return true;
}

std::string to_dimacs(const CommGraph& graph, bool noncommuting) {
  std::ostringstream edges;
  std::size_t m = 0;
  for (std::size_t v = 0; v < graph.size(); ++v)
    for (std::size_t w = v + 1; w < graph.size(); ++w)
      if (noncommuting ? graph.nc_adjacent(v, w) : graph.adjacent(v, w)) {
        edges << "e " << v + 1 << ' ' << w + 1 << '\n';
        ++m;
      }
  std::ostringstream out;
  out << "c " << (noncommuting ? "noncommuting" : "commuting") << " graph\n";
  out << "p edge " << graph.size() << ' ' << m << '\n' << edges.str();
  return out.str();
}

}  // namespace apg
