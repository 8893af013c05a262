#include "apg/group.hpp"

#include <algorithm>
#include <bit>

#include "apg/error.hpp"

namespace apg {

PermAction::PermAction(std::uint32_t degree, std::vector<Perm> elements)
    : degree_(degree), elements_(std::move(elements)) {
  bits_ = degree_ <= 1 ? 1 : static_cast<std::uint32_t>(std::bit_width(degree_ - 1));

  // Greedy base: add a point whenever it separates elements that agree on the
  // current base; stop once every element has a distinct base image.
  std::vector<std::uint32_t> cls(elements_.size(), 0);
  std::size_t num_classes = elements_.empty() ? 0 : 1;
  for (std::uint32_t pt = 0; pt < degree_ && num_classes < elements_.size(); ++pt) {
    std::unordered_map<std::uint64_t, std::uint32_t> refined;
    std::vector<std::uint32_t> next(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const std::uint64_t k = (static_cast<std::uint64_t>(cls[i]) << 20) | elements_[i][pt];
      auto [it, fresh] = refined.try_emplace(k, static_cast<std::uint32_t>(refined.size()));
      next[i] = it->second;
    }
    if (refined.size() > num_classes) {
      base_.push_back(pt);
      num_classes = refined.size();
      cls = std::move(next);
    }
  }
  if (base_.size() * bits_ > 64)
    throw Error(ErrorCode::OrderCapExceeded, "permutation base too long for packed keys");
  index_.reserve(elements_.size() * 2);
  for (std::size_t i = 0; i < elements_.size(); ++i)
    index_.emplace(key_of(elements_[i]), static_cast<Elem>(i));
}

std::uint64_t PermAction::key_of(const Perm& p) const {
  std::uint64_t k = 0;
  for (auto b : base_) k = (k << bits_) | p[b];
  return k;
}

Elem PermAction::mul(Elem a, Elem b) const {
  const Perm& pa = elements_[a];
  const Perm& pb = elements_[b];
  std::uint64_t k = 0;
  for (auto pt : base_) k = (k << bits_) | pb[pa[pt]];
  return index_.find(k)->second;
}

bool PermAction::commute(Elem a, Elem b) const {
  const Perm& pa = elements_[a];
  const Perm& pb = elements_[b];
  for (auto pt : base_)
    if (pb[pa[pt]] != pa[pb[pt]]) return false;
  return true;
}

Elem PermAction::find(const Perm& p) const {
  auto it = index_.find(key_of(p));
  if (it == index_.end() || elements_[it->second] != p) return npos;
  return it->second;
}

Group Group::from_table(std::size_t n, std::vector<Elem> table, std::string tag) {
  if (table.size() != n * n) throw Error(ErrorCode::InvalidParams, "table size mismatch");
  Group g;
  g.n_ = n;
  g.table_ = std::move(table);
  g.tag_ = std::move(tag);
  for (std::size_t x = 0; x < n; ++x)
    if (g.table_[x] != x || g.table_[x * n] != x)
      throw Error(ErrorCode::InvalidParams, "element 0 is not the identity");
  g.inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const Elem* row = g.table_.data() + a * n;
    auto it = std::find(row, row + n, Elem{0});
    if (it == row + n) throw Error(ErrorCode::InvalidParams, "element without inverse");
    g.inv_[a] = static_cast<Elem>(it - row);
  }
  return g;
}

Group Group::from_action(std::shared_ptr<const PermAction> action, std::string tag,
                         bool make_dense) {
  Group g;
  g.n_ = action->order();
  g.tag_ = std::move(tag);
  const auto n = g.n_;
  g.inv_.assign(n, 0);
  const auto deg = action->degree();
  Perm inv(deg);
  for (std::size_t a = 0; a < n; ++a) {
    const Perm& p = action->perm(static_cast<Elem>(a));
    for (std::uint32_t i = 0; i < deg; ++i) inv[p[i]] = static_cast<std::uint16_t>(i);
    g.inv_[a] = action->find(inv);
  }
  if (make_dense) {
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        g.table_[a * n + b] = action->mul(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  g.action_ = std::move(action);
  return g;
}

Elem Group::pow(Elem a, std::uint64_t e) const {
  Elem r = kIdentity;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t Group::element_order(Elem a) const {
  std::uint32_t k = 1;
  for (Elem x = a; x != kIdentity; x = mul(x, a)) ++k;
  return k;
}

bool Subgroup::contains(Elem x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

}  // namespace apg
