#include "apg/partition.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "apg/analysis.hpp"
#include "apg/bitset.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/kernels.hpp"

namespace apg {

namespace {

struct BudgetCut {};

std::vector<Elem> sorted_copy(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Kuhn's augmenting paths on the bipartite double cover restricted to `live`:
// left copy of v may match right copy of u when u != v commute.
class DoubleCoverMatching {
 public:
  DoubleCoverMatching(const std::vector<Bitset>& rows, const Bitset& live)
      : rows_(rows), live_(live), match_left_(rows.size(), kNone), match_right_(rows.size(), kNone) {}

  // Starts from a matching computed on a superset of `live`; pairs that
  // touch a dead vertex are dropped.
  DoubleCoverMatching(const DoubleCoverMatching& parent, const Bitset& live)
      : rows_(parent.rows_), live_(live), match_left_(parent.match_left_),
        match_right_(parent.match_right_) {
    for (std::size_t v = 0; v < match_left_.size(); ++v) {
      const std::size_t u = match_left_[v];
      if (u == kNone) continue;
      if (!live_.test(v) || !live_.test(u)) {
        match_left_[v] = kNone;
        match_right_[u] = kNone;
      }
    }
  }

  // Returns the number of unmatched left vertices.
  std::size_t run() {
    // Cheap greedy pass first; augmenting paths only for what is left.
    live_.for_each([&](std::size_t v) {
      if (match_left_[v] != kNone) return;
      Bitset nb = rows_[v] & live_;
      nb.reset(v);
      nb.for_each([&](std::size_t u) {
        if (match_left_[v] == kNone && match_right_[u] == kNone) {
          match_left_[v] = u;
          match_right_[u] = v;
        }
      });
    });
    std::size_t deficit = 0;
    visited_ = Bitset(rows_.size());
    live_.for_each([&](std::size_t v) {
      if (match_left_[v] != kNone) return;
      visited_.clear();
      if (!augment(v)) ++deficit;
    });
    return deficit;
  }

  // Left vertices reachable by alternating paths from unmatched left
  // vertices, with their right neighbourhood; a Hall violator.
  std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> violator() const {
    Bitset left(rows_.size()), right(rows_.size());
    std::vector<std::size_t> queue;
    live_.for_each([&](std::size_t v) {
      if (match_left_[v] == kNone) {
        left.set(v);
        queue.push_back(v);
      }
    });
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t v = queue[qi];
      Bitset nb = rows_[v] & live_;
      nb.reset(v);
      nb.for_each([&](std::size_t u) {
        if (right.test(u)) return;
        right.set(u);
        std::size_t w = match_right_[u];
        if (w != kNone && !left.test(w)) {
          left.set(w);
          queue.push_back(w);
        }
      });
    }
    return {left.to_vector(), right.to_vector()};
  }

 private:
  static constexpr std::size_t kNone = ~std::size_t{0};

  bool augment(std::size_t v) {
    // Iterative DFS would be safer for huge inputs; depth is bounded by |live|.
    Bitset nb = rows_[v] & live_;
    nb.reset(v);
    for (std::size_t u = nb.find_first(); u < rows_.size(); u = nb.find_next(u + 1)) {
      if (visited_.test(u)) continue;
      visited_.set(u);
      if (match_right_[u] == kNone || augment(match_right_[u])) {
        match_right_[u] = v;
        match_left_[v] = u;
        return true;
      }
    }
    return false;
  }

  const std::vector<Bitset>& rows_;
  Bitset live_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  Bitset visited_;
};

std::vector<Elem> union_of_centralizers_minus_self(const std::vector<Bitset>& rows,
                                                   const std::vector<Elem>& set) {
  Bitset acc(rows.size());
  for (Elem x : set) {
    Bitset r = rows[x];
    r.reset(x);
    acc |= r;
  }
  std::vector<Elem> out;
  acc.for_each([&](std::size_t v) { out.push_back(static_cast<Elem>(v)); });
  return out;
}

// Pair/triple cover search for AP existence.
class PackingSearch {
 public:
  PackingSearch(const std::vector<Bitset>& rows, std::uint64_t budget, std::uint64_t& nodes)
      : rows_(rows), budget_(budget), nodes_(nodes) {}

  bool solve(const Bitset& uncovered) {
    DoubleCoverMatching root(rows_, uncovered);
    if (root.run() != 0) return false;
    return dfs(uncovered, root);
  }
  std::vector<std::vector<std::size_t>> blocks() const { return chosen_; }

 private:
  static constexpr std::size_t kMemoCap = 4'000'000;

  bool dfs(const Bitset& unc, const DoubleCoverMatching& parent) {
    if (unc.none()) return true;
    if (failed_.count(unc)) return false;
    if (++nodes_ > budget_) throw BudgetCut{};
    DoubleCoverMatching m(parent, unc);
    if (m.run() != 0) return remember(unc);

    std::size_t v = 0, best = ~std::size_t{0};
    unc.for_each([&](std::size_t x) {
      std::size_t d = rows_[x].and_count(unc) - 1;
      if (d < best) {
        best = d;
        v = x;
      }
    });
    Bitset nb = rows_[v] & unc;
    nb.reset(v);
    std::vector<std::uint32_t> cand = nb.to_vector();
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      return rows_[a].and_count(unc) < rows_[b].and_count(unc);
    });

    Bitset rest = unc;
    rest.reset(v);
    for (std::size_t u : cand) {
      Bitset next = rest;
      next.reset(u);
      chosen_.push_back({v, u});
      if (dfs(next, m)) return true;
      chosen_.pop_back();
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        std::size_t u = cand[i], w = cand[j];
        if (!rows_[u].test(w)) continue;
        Bitset next = rest;
        next.reset(u);
        next.reset(w);
        chosen_.push_back({v, u, w});
        if (dfs(next, m)) return true;
        chosen_.pop_back();
      }
    }
    return remember(unc);
  }

  bool remember(const Bitset& unc) {
    if (failed_.size() < kMemoCap) failed_.insert(unc);
    return false;
  }

  const std::vector<Bitset>& rows_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::unordered_set<Bitset, BitsetHash> failed_;
  std::vector<std::vector<std::size_t>> chosen_;
};

// Decides whether G splits into at most m commuting blocks of size >= 2.
// Vertices are assigned one at a time, most constrained first; a new block
// is only ever opened with the next free block index.
class BlockSearch {
 public:
  BlockSearch(const std::vector<Bitset>& rows, std::uint64_t budget, std::uint64_t& nodes)
      : rows_(rows), n_(rows.size()), budget_(budget), nodes_(nodes) {}

  std::optional<std::vector<std::vector<std::size_t>>> solve(std::size_t m) {
    m_ = m;
    compat_.clear();
    members_.clear();
    uncolored_ = Bitset(n_);
    for (std::size_t v = 0; v < n_; ++v) uncolored_.set(v);
    if (!dfs()) return std::nullopt;
    return members_;
  }

 private:
  bool dfs() {
    if (uncolored_.none()) {
      for (const auto& b : members_)
        if (b.size() < 2) return false;
      return true;
    }
    if (++nodes_ > budget_) throw BudgetCut{};

    const std::size_t used = members_.size();
    const bool can_open = used < m_;

    // Most constrained vertex; collect vertices with no existing block.
    std::size_t pick = n_, pick_opts = ~std::size_t{0}, pick_deg = 0;
    std::vector<std::size_t> forced;
    bool dead = false;
    uncolored_.for_each([&](std::size_t v) {
      if (dead) return;
      std::size_t opts = 0;
      for (std::size_t b = 0; b < used; ++b)
        if (compat_[b].test(v)) ++opts;
      if (opts == 0) forced.push_back(v);
      std::size_t total = opts + (can_open ? 1 : 0);
      if (total == 0) {
        dead = true;
        return;
      }
      std::size_t deg = uncolored_.count() - rows_[v].and_count(uncolored_);
      if (total < pick_opts || (total == pick_opts && deg > pick_deg)) {
        pick = v;
        pick_opts = total;
        pick_deg = deg;
      }
    });
    if (dead) return false;

    // Forced vertices that pairwise fail to commute each need their own block.
    std::size_t forced_clique = 0;
    {
      std::vector<std::size_t> clique;
      for (std::size_t v : forced) {
        bool ok = true;
        for (std::size_t u : clique)
          if (rows_[v].test(u)) {
            ok = false;
            break;
          }
        if (ok) clique.push_back(v);
      }
      forced_clique = clique.size();
    }
    if (used + forced_clique > m_) return false;

    // Every singleton block needs a distinct partner among uncolored vertices.
    std::vector<std::size_t> singles;
    for (std::size_t b = 0; b < used; ++b)
      if (members_[b].size() == 1) singles.push_back(b);
    if (uncolored_.count() < singles.size() + 2 * forced_clique) return false;
    if (!singles_matchable(singles)) return false;

    const std::size_t v = pick;
    uncolored_.reset(v);
    // Singleton blocks first: they most need a partner.
    std::vector<std::size_t> order;
    for (std::size_t b : singles)
      if (compat_[b].test(v)) order.push_back(b);
    for (std::size_t b = 0; b < used; ++b)
      if (members_[b].size() != 1 && compat_[b].test(v)) order.push_back(b);
    for (std::size_t b : order) {
      Bitset saved = compat_[b];
      compat_[b] &= rows_[v];
      members_[b].push_back(v);
      if (dfs()) return true;
      members_[b].pop_back();
      compat_[b] = saved;
    }
    if (can_open) {
      compat_.push_back(rows_[v]);
      members_.push_back({v});
      if (dfs()) return true;
      members_.pop_back();
      compat_.pop_back();
    }
    uncolored_.set(v);
    return false;
  }

  bool singles_matchable(const std::vector<std::size_t>& singles) {
    if (singles.empty()) return true;
    std::vector<std::size_t> owner(n_, ~std::size_t{0});
    for (std::size_t b : singles) {
      Bitset seen(n_);
      if (!augment(b, owner, seen)) return false;
    }
    return true;
  }

  bool augment(std::size_t b, std::vector<std::size_t>& owner, Bitset& seen) {
    Bitset cand = compat_[b] & uncolored_;
    for (std::size_t u = cand.find_first(); u < n_; u = cand.find_next(u + 1)) {
      if (seen.test(u)) continue;
      seen.set(u);
      if (owner[u] == ~std::size_t{0} || augment(owner[u], owner, seen)) {
        owner[u] = b;
        return true;
      }
    }
    return false;
  }

  const std::vector<Bitset>& rows_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::size_t m_ = 0;
  std::vector<Bitset> compat_;
  std::vector<std::vector<std::size_t>> members_;
  Bitset uncolored_;
};

AbelianPartition to_partition(const std::vector<std::vector<std::size_t>>& blocks) {
  AbelianPartition p;
  for (const auto& b : blocks) {
    std::vector<Elem> blk;
    for (std::size_t v : b) blk.push_back(static_cast<Elem>(v));
    p.blocks.push_back(std::move(blk));
  }
  canonicalize(p);
  return p;
}

// Merge blocks pairwise while the union still commutes.
AbelianPartition merge_greedily(const std::vector<Bitset>& rows, AbelianPartition p) {
  // Blocks are absorbed into the earliest block whose common centralizer
  // contains them; one pass suffices since common centralizers only shrink.
  const std::size_t n = rows.size();
  std::vector<Bitset> common;
  std::vector<std::vector<Elem>> out;
  for (auto& b : p.blocks) {
    Bitset inb(n), cb = Bitset::full(n);
    for (Elem x : b) {
      inb.set(x);
      cb &= rows[x];
    }
    bool placed = false;
    for (std::size_t i = 0; i < out.size() && !placed; ++i) {
      if (!inb.is_subset_of(common[i])) continue;
      out[i].insert(out[i].end(), b.begin(), b.end());
      common[i] &= cb;
      placed = true;
    }
    if (!placed) {
      out.push_back(std::move(b));
      common.push_back(std::move(cb));
    }
  }
  p.blocks = std::move(out);
  canonicalize(p);
  return p;
}

}  // namespace

void canonicalize(AbelianPartition& p) {
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.empty() ? !b.empty() : (!b.empty() && a < b); });
}

Check verify_partition(const Group& g, const AbelianPartition& p) {
  const std::size_t n = g.order();
  std::vector<int> owner(n, -1);
  for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& b = p.blocks[bi];
    if (b.size() < 2)
      return Check::fail("block " + std::to_string(bi) + " has size " + std::to_string(b.size()));
    for (Elem x : b) {
      if (x >= n) return Check::fail("element " + std::to_string(x) + " out of range");
      if (owner[x] != -1)
        return Check::fail("element " + std::to_string(x) + " appears twice", std::make_pair(x, x));
      owner[x] = static_cast<int>(bi);
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (owner[x] == -1) return Check::fail("element " + std::to_string(x) + " not covered");
  for (std::size_t bi = 0; bi < p.blocks.size(); ++bi) {
    const auto& b = p.blocks[bi];
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (!g.commute(b[i], b[j]))
          return Check::fail("block " + std::to_string(bi) + " is not commuting",
                             std::make_pair(b[i], b[j]));
  }
  return Check::pass();
}

Check check_counting_witness(const Group& g, const CountingWitness& w) {
  if (w.set.empty()) return Check::fail("empty counting set");
  std::vector<Elem> s = sorted_copy(w.set);
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return Check::fail("repeated element");
  if (s.back() >= g.order()) return Check::fail("element out of range");
  Bitset acc(g.order());
  for (Elem x : s)
    for (Elem y = 0; y < g.order(); ++y)
      if (y != x && g.commute(x, y)) acc.set(y);
  std::vector<Elem> mates;
  acc.for_each([&](std::size_t v) { mates.push_back(static_cast<Elem>(v)); });
  if (mates != sorted_copy(w.mates)) return Check::fail("mates do not match the centralizers");
  if (mates.size() >= s.size())
    return Check::fail("no deficiency: " + std::to_string(mates.size()) + " mates for " +
                       std::to_string(s.size()) + " elements");
  return Check::pass();
}

BoundsReport compute_bounds(const Group& g, const BoundsOptions& opts) {
  BoundsReport r;
  r.order = g.order();
  Subgroup z = center(g);
  r.center_order = z.order();
  r.class_count = class_count(g);
  if (is_abelian(g)) {
    r.abelian = true;
    r.lb_noncommuting = 1;
    r.lb_noncommuting_exact = true;
    r.lb_classcount = 1;
    r.lb_floor = 1;
    r.max_abelian_order = r.order;
    r.ub_thm_c = 1;
    r.ub_center_cosets = 1;
    r.best_lb = 1;
    r.best_ub = 1;
    r.upper_bounds_need_ap = false;
    return r;
  }
  r.lb_floor = 3;
  r.lb_classcount = ceil_div(r.order, r.class_count);
  try {
    CliqueResult c = max_noncommuting_set(g, {opts.clique_max_order, opts.clique_budget});
    r.lb_noncommuting = c.size;
    r.lb_noncommuting_exact = c.exact;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
    r.lb_noncommuting = 0;
  }
  try {
    Subgroup a = max_abelian_subgroup(g, {opts.abelian_max_order, 5'000'000});
    r.max_abelian_order = a.order();
    r.ub_thm_c = r.order / r.center_order - a.order() / r.center_order + 1;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
  }
  if (r.center_order >= 2) r.ub_center_cosets = r.order / r.center_order;
  r.best_lb = std::max({r.lb_floor, r.lb_classcount, r.lb_noncommuting});
  for (auto ub : {r.ub_thm_c, r.ub_center_cosets})
    if (ub && (!r.best_ub || *ub < *r.best_ub)) r.best_ub = ub;
  return r;
}

AbelianPartition center_coset_partition(const Group& g) {
  Subgroup z = center(g);
  if (z.order() < 2 && g.order() > 1) throw Error(ErrorCode::CenterTrivial, "Z(G) is trivial");
  std::vector<bool> seen(g.order(), false);
  AbelianPartition p;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> coset;
    for (Elem c : z.members) {
      Elem y = g.mul(c, x);
      seen[y] = true;
      coset.push_back(y);
    }
    p.blocks.push_back(std::move(coset));
  }
  canonicalize(p);
  return p;
}

AbelianPartition max_abelian_coset_partition(const Group& g) {
  Subgroup z = center(g);
  if (z.order() < 2) throw Error(ErrorCode::CenterTrivial, "Z(G) is trivial");
  Subgroup a = max_abelian_subgroup(g);
  std::vector<bool> seen(g.order(), false);
  AbelianPartition p;
  p.blocks.push_back(a.members);
  for (Elem x : a.members) seen[x] = true;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> coset;
    for (Elem c : z.members) {
      Elem y = g.mul(c, x);
      seen[y] = true;
      coset.push_back(y);
    }
    p.blocks.push_back(std::move(coset));
  }
  canonicalize(p);
  return p;
}

AbelianPartition odd_order_partition(const Group& g) {
  if (g.order() % 2 == 0) throw Error(ErrorCode::EvenOrder, "group order is even");
  if (g.order() < 3) throw Error(ErrorCode::InvalidParams, "trivial group has no abelian partition");
  AbelianPartition p;
  for (Elem x = 1; x < g.order(); ++x) {
    Elem y = g.inv(x);
    if (x < y) p.blocks.push_back({x, y});
  }
  p.blocks.front().push_back(Group::kIdentity);
  canonicalize(p);
  return p;
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Exhaustive: return "Exhaustive";
    case CertificateKind::CentralizerMinimal: return "CentralizerMinimal";
    case CertificateKind::FamilyFormula: return "FamilyFormula";
    case CertificateKind::SandwichedBounds: return "SandwichedBounds";
    case CertificateKind::NapExhaustive: return "NapExhaustive";
    case CertificateKind::NapCounting: return "NapCounting";
    case CertificateKind::NapSelfCentralizing: return "NapSelfCentralizing";
    case CertificateKind::BoundsOnly: return "BoundsOnly";
  }
  return "?";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  for (auto k : {CertificateKind::Exhaustive, CertificateKind::CentralizerMinimal,
                 CertificateKind::FamilyFormula, CertificateKind::SandwichedBounds,
                 CertificateKind::NapExhaustive, CertificateKind::NapCounting,
                 CertificateKind::NapSelfCentralizing, CertificateKind::BoundsOnly})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown certificate kind '" + s + "'");
}

std::optional<CountingWitness> hall_violation(const Group& g) {
  auto rows = kernels::commute_rows(g);
  Bitset all(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) all.set(v);
  DoubleCoverMatching m(rows, all);
  if (m.run() == 0) return std::nullopt;
  auto [left, right] = m.violator();
  CountingWitness w;
  for (Elem v : left) w.set.push_back(v);
  w.mates = union_of_centralizers_minus_self(rows, w.set);
  return w;
}

Feasibility find_abelian_partition(const Group& g, std::uint64_t node_budget) {
  Feasibility f;
  if (g.order() < 2) {
    f.status = Feasibility::Status::Infeasible;
    return f;
  }
  auto rows = kernels::commute_rows(g);
  Bitset all(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) all.set(v);
  {
    DoubleCoverMatching m(rows, all);
    if (m.run() != 0) {
      auto [left, right] = m.violator();
      CountingWitness w;
      for (Elem v : left) w.set.push_back(v);
      w.mates = union_of_centralizers_minus_self(rows, w.set);
      f.counting = std::move(w);
      f.status = Feasibility::Status::Infeasible;
      f.nodes = 1;
      return f;
    }
  }
  PackingSearch s(rows, node_budget, f.nodes);
  try {
    if (s.solve(all)) {
      f.status = Feasibility::Status::Feasible;
      f.partition = merge_greedily(rows, to_partition(s.blocks()));
    } else {
      f.status = Feasibility::Status::Infeasible;
    }
  } catch (const BudgetCut&) {
    f.status = Feasibility::Status::Unknown;
  }
  return f;
}

ThetaResult exact_theta(const Group& g, const ExactOptions& opts) {
  ThetaResult r;
  const std::uint64_t n = g.order();
  if (n == 1) {
    // A lone identity cannot fill a block of size 2.
    r.certified = true;
    r.certificate = CertificateKind::NapExhaustive;
    r.note = "trivial group";
    return r;
  }
  if (is_abelian(g)) {
    r.value = 1;
    r.certified = true;
    AbelianPartition p;
    p.blocks.push_back({});
    for (Elem x = 0; x < n; ++x) p.blocks[0].push_back(x);
    r.partition = p;
    r.certificate = CertificateKind::Exhaustive;
    r.lower_bound = 1;
    r.upper_bound = 1;
    return r;
  }

  auto rows = kernels::commute_rows(g);
  CliqueOptions co;
  co.max_order = std::max<std::size_t>(co.max_order, n);
  co.node_budget = opts.clique_budget;
  CliqueResult clique = max_noncommuting_set(g, co);
  std::uint64_t lb = std::max<std::uint64_t>({3, clique.size, ceil_div(n, class_count(g))});
  r.lower_bound = lb;

  std::uint64_t nodes = 0;
  Feasibility feas = find_abelian_partition(g, opts.node_budget);
  nodes += feas.nodes;
  if (feas.status == Feasibility::Status::Unknown) {
    r.note = "search budget exhausted before AP existence was settled";
    return r;
  }
  if (feas.status == Feasibility::Status::Infeasible) {
    r.value = 0;
    r.certified = true;
    r.certificate = CertificateKind::NapExhaustive;
    r.counting = feas.counting;
    r.lower_bound = 0;
    r.upper_bound = 0;
    return r;
  }

  AbelianPartition incumbent = *feas.partition;
  auto consider = [&](AbelianPartition p) {
    p = merge_greedily(rows, std::move(p));
    if (p.size() < incumbent.size()) incumbent = std::move(p);
  };
  if (center(g).order() >= 2) {
    try {
      consider(max_abelian_coset_partition(g));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
    }
  }
  if (n % 2 == 1) consider(odd_order_partition(g));
  r.upper_bound = incumbent.size();

  BlockSearch search(rows, opts.node_budget, nodes);
  try {
    for (std::uint64_t m = lb; m < incumbent.size(); ++m) {
      if (auto found = search.solve(m)) {
        incumbent = to_partition(*found);
        break;
      }
      r.lower_bound = m + 1;
    }
  } catch (const BudgetCut&) {
    r.note = "search budget exhausted";
    return r;
  }
  r.value = incumbent.size();
  r.lower_bound = r.value;
  r.upper_bound = r.value;
  r.partition = std::move(incumbent);
  r.certified = true;
  r.certificate = CertificateKind::Exhaustive;
  return r;
}

Check check_noncommuting_anchors(const Group& g, const AbelianPartition& p,
                                 const std::vector<Elem>& anchors) {
  if (anchors.size() != p.blocks.size())
    return Check::fail("need one anchor per block: " + std::to_string(anchors.size()) + " anchors, " +
                       std::to_string(p.blocks.size()) + " blocks");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!std::binary_search(p.blocks[i].begin(), p.blocks[i].end(), anchors[i]))
      return Check::fail("anchor " + std::to_string(i) + " is not in its block");
  }
  // The pairwise test is the data-parallel part for large anchor sets.
  if (auto hit = kernels::first_commuting_pair(g, anchors))
    return Check::fail("anchors commute", std::make_pair(anchors[hit->first], anchors[hit->second]));
  return Check::pass();
}

Check certify_minimal_via_centralizers(const Group& g, const AbelianPartition& p,
                                       const std::vector<Elem>& anchors) {
  if (anchors.size() != p.blocks.size())
    throw Error(ErrorCode::AnchorMismatch, "anchor count differs from block count");
  if (Check c = verify_partition(g, p); !c) return c;
  Subgroup z = center(g);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    Subgroup c = centralizer(g, anchors[i]);
    if (!is_abelian(subgroup_group(g, c, "C")))
      return Check::fail("centralizer of anchor " + std::to_string(i) + " is not abelian");
    std::vector<Elem> expect;
    if (i == 0) {
      expect = c.members;
    } else {
      std::set_difference(c.members.begin(), c.members.end(), z.members.begin(), z.members.end(),
                          std::back_inserter(expect));
    }
    if (sorted_copy(p.blocks[i]) != expect)
      return Check::fail(i == 0 ? "block 0 differs from the centralizer of its anchor"
                                : "block " + std::to_string(i) + " differs from C(a) minus Z(G)");
  }
  return Check::pass();
}

Check verify_certificate(const Group& g, const ThetaResult& r) {
  if (!r.certified) return Check::fail("result is not certified");
  if (r.value == 2) return Check::fail("no group has AP-degree 2");
  if (r.value == 0) {
    switch (r.certificate) {
      case CertificateKind::NapCounting:
        if (!r.counting) return Check::fail("counting certificate has no witness");
        return check_counting_witness(g, *r.counting);
      case CertificateKind::NapSelfCentralizing: {
        if (r.anchors.empty()) return Check::fail("no involution supplied");
        Elem x = r.anchors.front();
        if (x >= g.order() || g.element_order(x) != 2) return Check::fail("anchor is not an involution");
        if (centralizer(g, x).order() != 2) return Check::fail("involution is not self-centralizing");
        if (r.counting) return check_counting_witness(g, *r.counting);
        return Check::pass();
      }
      case CertificateKind::NapExhaustive: {
        if (r.counting) return check_counting_witness(g, *r.counting);
        Feasibility f = find_abelian_partition(g);
        if (f.status != Feasibility::Status::Infeasible) return Check::fail("re-run found a partition");
        return Check::pass();
      }
      default:
        return Check::fail("value 0 with a non-NAP certificate");
    }
  }
  if (!r.partition) return Check::fail("no partition supplied");
  if (Check c = verify_partition(g, *r.partition); !c) return c;
  if (r.partition->size() != r.value) return Check::fail("block count differs from value");
  switch (r.certificate) {
    case CertificateKind::CentralizerMinimal:
      return check_noncommuting_anchors(g, *r.partition, r.anchors);
    case CertificateKind::SandwichedBounds: {
      if (!r.anchors.empty()) {
        if (r.anchors.size() != r.value) return Check::fail("anchor count differs from value");
        if (auto hit = kernels::first_commuting_pair(g, r.anchors))
          return Check::fail("anchors commute",
                             std::make_pair(r.anchors[hit->first], r.anchors[hit->second]));
        return Check::pass();
      }
      if (ceil_div(g.order(), class_count(g)) != r.value && !(r.value == 1 && is_abelian(g)))
        return Check::fail("lower bound does not meet the value");
      return Check::pass();
    }
    case CertificateKind::Exhaustive: {
      ThetaResult again = exact_theta(g);
      if (!again.certified) return Check::fail("re-run exceeded its budget");
      if (again.value != r.value)
        return Check::fail("re-run gives " + std::to_string(again.value));
      return Check::pass();
    }
    case CertificateKind::FamilyFormula:
      if (!r.anchors.empty()) return check_noncommuting_anchors(g, *r.partition, r.anchors);
      return Check::pass();
    default:
      return Check::fail("certificate kind does not fit a positive value");
  }
}

AbelianPartition normalize_first_block(const Group& g, const AbelianPartition& p) {
  AbelianPartition out = p;
  canonicalize(out);
  Subgroup z = center(g);
  if (z.order() == 1) return out;
  for (Elem c : z.members) {
    if (std::binary_search(out.blocks[0].begin(), out.blocks[0].end(), c)) continue;
    for (std::size_t i = 1; i < out.blocks.size(); ++i) {
      auto& b = out.blocks[i];
      auto it = std::lower_bound(b.begin(), b.end(), c);
      if (it == b.end() || *it != c) continue;
      if (b.size() <= 2)
        throw Error(ErrorCode::InvariantBroken,
                    "moving central element " + std::to_string(c) + " empties block " + std::to_string(i) +
                        " below size 2; partition is not minimal");
      b.erase(it);
      auto& b0 = out.blocks[0];
      b0.insert(std::lower_bound(b0.begin(), b0.end(), c), c);
      break;
    }
  }
  if (out.blocks[0] == z.members && !is_abelian(g))
    throw Error(ErrorCode::InvariantBroken, "block 0 equals Z(G); partition is not minimal");
  return out;
}

bool check_union_lemma(const Group& g, const std::vector<Elem>& s, std::uint64_t theta) {
  if (!is_commuting_set(g, s)) throw Error(ErrorCode::NotCommuting, "set is not commuting");
  const std::vector<Elem> sorted = sorted_copy(s);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::InvalidParams, "set has repeated elements");
  if (s.size() <= theta) throw Error(ErrorCode::InvalidParams, "set must be larger than the AP-degree");
  Bitset covered(g.order());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Elem y = g.mul(g.inv(s[i]), s[j]);
      for (Elem x = 0; x < g.order(); ++x)
        if (!covered.test(x) && g.commute(x, y)) covered.set(x);
    }
  return covered.count() == g.order();
}

bool min_part_size_check(const Group& g, const AbelianPartition& p) {
  std::size_t s = ~std::size_t{0};
  for (const auto& b : p.blocks) s = std::min(s, b.size());
  return s <= class_count(g);
}

bool block_square_sum_check(const Group& g, const AbelianPartition& p) {
  std::uint64_t sum = 0;
  for (const auto& b : p.blocks) sum += static_cast<std::uint64_t>(b.size()) * b.size();
  return sum <= static_cast<std::uint64_t>(g.order()) * class_count(g);
}

std::string to_string(SmallTheta t) {
  switch (t) {
    case SmallTheta::One: return "1";
    case SmallTheta::Three: return "3";
    case SmallTheta::Four: return "4";
    case SmallTheta::Other: return "other";
    case SmallTheta::NapCandidate: return "NAP-candidate";
  }
  return "?";
}

SmallTheta classify_small_theta(const Group& g) {
  if (g.order() > 20'000)
    throw Error(ErrorCode::QuotientTooLarge, "group too large for the quotient oracle");
  if (g.order() < 2) return SmallTheta::NapCandidate;
  if (is_abelian(g)) return SmallTheta::One;
  Subgroup z = center(g);
  const std::size_t idx = g.order() / z.order();
  auto quotient_exponent_is = [&](std::uint32_t e) {
    Group q = quotient_group(g, z, "G/Z");
    for (Elem x = 1; x < q.order(); ++x)
      if (q.element_order(x) != e) return false;
    return true;
  };
  if (idx == 4 && quotient_exponent_is(2)) {
    // G = P x Q with P the Sylow 2-subgroup iff every odd-order element is central.
    auto orders = element_orders(g);
    for (Elem x = 0; x < g.order(); ++x)
      if (orders[x] % 2 == 1 && !z.contains(x)) return SmallTheta::Other;
    return SmallTheta::Three;
  }
  if (z.order() >= 2) {
    if (idx == 9 && quotient_exponent_is(3)) return SmallTheta::Four;
    if (idx == 6 && !is_abelian(quotient_group(g, z, "G/Z"))) return SmallTheta::Four;
  }
  if (z.order() == 1 && g.order() % 2 == 0) return SmallTheta::NapCandidate;
  return SmallTheta::Other;
}

}  // namespace apg
