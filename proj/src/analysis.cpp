#include "apg/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "apg/bitset.hpp"
#include "apg/error.hpp"
#include "apg/kernels.hpp"

namespace apg {

bool is_abelian(const Group& g) {
  const auto& gens = g.generators();
  if (!gens.empty()) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (!g.commute(gens[i], gens[j])) return false;
    return true;
  }
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a + 1; b < g.order(); ++b)
      if (!g.commute(a, b)) return false;
  return true;
}

bool is_commuting_set(const Group& g, const std::vector<Elem>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.commute(s[i], s[j])) return false;
  return true;
}

Subgroup centralizer(const Group& g, Elem x) {
  Subgroup c;
  for (Elem y = 0; y < g.order(); ++y)
    if (g.commute(x, y)) c.members.push_back(y);
  return c;
}

Subgroup center(const Group& g) {
  std::vector<Elem> gens = generating_set(g);
  Subgroup z;
  for (Elem y = 0; y < g.order(); ++y) {
    bool central = true;
    for (Elem s : gens)
      if (!g.commute(s, y)) {
        central = false;
        break;
      }
    if (central) z.members.push_back(y);
  }
  return z;
}

Subgroup generate(const Group& g, const std::vector<Elem>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> members{Group::kIdentity};
  in[0] = 1;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (Elem s : gens) {
      const Elem y = g.mul(members[head], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

std::vector<Elem> generating_set(const Group& g) {
  if (!g.generators().empty()) return g.generators();
  std::vector<Elem> gens;
  Subgroup current{{Group::kIdentity}};
  for (Elem x = 1; x < g.order() && current.order() < g.order(); ++x) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = generate(g, gens);
  }
  return gens;
}

std::vector<Elem> conjugate_set(const Group& g, const std::vector<Elem>& h, Elem by) {
  std::vector<Elem> out;
  out.reserve(h.size());
  for (Elem x : h) out.push_back(g.conj(x, by));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  Subgroup n;
  // H^x = H iff conjugates of a generating set of H stay in H.
  std::vector<Elem> hgens;
  Subgroup current{{Group::kIdentity}};
  for (Elem x : h.members) {
    if (current.contains(x)) continue;
    hgens.push_back(x);
    current = generate(g, hgens);
  }
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : hgens)
      if (!h.contains(g.conj(s, x))) {
        ok = false;
        break;
      }
    if (ok) n.members.push_back(x);
  }
  return n;
}

bool is_subgroup(const Group& g, const std::vector<Elem>& members) {
  if (members.empty()) return false;
  std::vector<char> in(g.order(), 0);
  for (Elem x : members) in[x] = 1;
  if (!in[Group::kIdentity]) return false;
  for (Elem a : members) {
    if (!in[g.inv(a)]) return false;
    for (Elem b : members)
      if (!in[g.mul(a, b)]) return false;
  }
  return true;
}

bool is_normal(const Group& g, const Subgroup& h) {
  for (Elem s : generating_set(g))
    for (Elem x : h.members)
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

std::vector<std::vector<Elem>> conjugacy_classes(const Group& g) {
  const std::vector<Elem> gens = generating_set(g);
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    std::vector<Elem> orbit{x};
    seen[x] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (Elem s : gens) {
        const Elem y = g.conj(orbit[head], s);
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

std::size_t class_count(const Group& g) { return conjugacy_classes(g).size(); }

std::vector<std::uint32_t> element_orders(const Group& g) {
  std::vector<std::uint32_t> ord(g.order(), 0);
  ord[0] = 1;
  for (Elem x = 1; x < g.order(); ++x) {
    if (ord[x]) continue;
    // Walk the cyclic subgroup once and fill orders of all its powers.
    std::vector<Elem> powers{Group::kIdentity, x};
    for (Elem y = g.mul(x, x); y != Group::kIdentity; y = g.mul(y, x)) powers.push_back(y);
    const std::uint32_t n = static_cast<std::uint32_t>(powers.size());
    for (std::uint32_t k = 1; k < n; ++k)
      if (!ord[powers[k]]) ord[powers[k]] = n / std::gcd(n, k);
  }
  return ord;
}

Spectrum spectrum(const Group& g) {
  Spectrum s;
  for (auto o : element_orders(g)) s.omega.insert(o);
  for (auto a : s.omega) {
    bool maximal = true;
    for (auto b : s.omega)
      if (b != a && b % a == 0) {
        maximal = false;
        break;
      }
    if (maximal) s.mu.insert(a);
  }
  return s;
}

std::uint64_t commuting_pairs_count(const Group& g) {
  const std::uint64_t pairs = kernels::count_commuting_pairs(g);
  const std::uint64_t expected = static_cast<std::uint64_t>(g.order()) * class_count(g);
  if (pairs != expected)
    throw Error(ErrorCode::InvariantBroken, "commuting pairs " + std::to_string(pairs) +
                                                " != |G| c(G) = " + std::to_string(expected));
  return pairs;
}

namespace {

class AbelianSearch {
 public:
  AbelianSearch(const Group& g, const AbelianSearchOptions& opts)
      : g_(g), opts_(opts), n_(g.order()), rows_(kernels::commute_rows(g)) {}

  Subgroup run() {
    best_ = Bitset(n_);
    best_.set(0);
    best_count_ = 1;
    Bitset excluded(n_);
    // Every abelian subgroup of maximal order is maximal abelian, hence
    // contains the center; seed the search with Z(G).
    Bitset zset(n_);
    for (Elem z : center(g_).members) zset.set(z);
    Bitset cand = Bitset::full(n_);
    for (Elem x = 0; x < n_; ++x)
      if (zset.test(x)) cand &= rows_[x];
    cand.subtract(zset);
    consider(zset);
    branch(zset, cand, excluded);
    return Subgroup{best_.to_vector()};
  }

 private:
  Bitset close(const Bitset& members, Elem y) const {
    std::vector<Elem> list = members.to_vector();
    Bitset out = members;
    std::vector<Elem> frontier;
    // members is a subgroup; <members, y> = union of members * y^k since
    // y commutes with every member.
    for (Elem p = y; p != Group::kIdentity; p = g_.mul(p, y))
      for (Elem m : list) {
        const Elem z = g_.mul(m, p);
        if (!out.test(z)) out.set(z);
      }
    return out;
  }

  void consider(const Bitset& s) {
    const std::size_t c = s.count();
    if (c > best_count_ || (c == best_count_ && s.to_vector() < best_.to_vector())) {
      best_ = s;
      best_count_ = c;
    }
  }

  void branch(const Bitset& current, Bitset cand, Bitset excluded) {
    if (++nodes_ > opts_.node_budget)
      throw Error(ErrorCode::SearchBudgetExceeded, "max abelian subgroup search budget");
    const std::size_t cur = current.count();
    for (std::size_t y = cand.find_first(); y < n_; y = cand.find_next(y + 1)) {
      if (cur + cand.count() < best_count_) return;
      Bitset next = close(current, static_cast<Elem>(y));
      cand.reset(y);
      if (next.intersects(excluded)) {
        excluded.set(y);
        continue;
      }
      Bitset next_cand = cand & rows_[y];
      next_cand.subtract(next);
      consider(next);
      if (next.count() + next_cand.count() >= best_count_) branch(next, next_cand, excluded);
      excluded.set(y);
    }
  }

  const Group& g_;
  AbelianSearchOptions opts_;
  std::size_t n_;
  std::vector<Bitset> rows_;
  Bitset best_;
  std::size_t best_count_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Subgroup max_abelian_subgroup(const Group& g, const AbelianSearchOptions& opts) {
  if (g.order() > opts.max_order)
    throw Error(ErrorCode::SearchBudgetExceeded, "group too large for abelian subgroup search");
  if (is_abelian(g)) {
    Subgroup all;
    all.members.resize(g.order());
    std::iota(all.members.begin(), all.members.end(), Elem{0});
    return all;
  }
  return AbelianSearch(g, opts).run();
}

std::vector<Elem> involutions(const Group& g) {
  std::vector<Elem> out;
  for (Elem x = 1; x < g.order(); ++x)
    if (g.mul(x, x) == Group::kIdentity) out.push_back(x);
  return out;
}

std::optional<Subgroup> odd_part_subgroup(const Group& g) {
  const auto ord = element_orders(g);
  Subgroup s;
  for (Elem x = 0; x < g.order(); ++x)
    if (ord[x] % 2 == 1) s.members.push_back(x);
  if (!is_subgroup(g, s.members)) return std::nullopt;
  return s;
}

}  // namespace apg
