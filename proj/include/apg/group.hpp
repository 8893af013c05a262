#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace apg {

/// Elements are positional indices; index 0 is always the identity.
using Elem = std::uint32_t;

/// Permutation generators on [0, degree). Products compose left to right:
/// in g*h, g is applied first.
struct PermSpec {
  std::uint32_t degree = 0;
  std::vector<std::vector<std::uint32_t>> generators;
};

using Perm = std::vector<std::uint16_t>;

/// Permutation backend: every element stored as its image array, with
/// multiplication resolved through images of a base (a point sequence whose
/// pointwise stabilizer is trivial).
class PermAction {
 public:
  PermAction(std::uint32_t degree, std::vector<Perm> elements);

  std::uint32_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const Perm& perm(Elem x) const { return elements_[x]; }
  const std::vector<std::uint32_t>& base() const { return base_; }

  Elem mul(Elem a, Elem b) const;
  bool commute(Elem a, Elem b) const;
  /// Index of an arbitrary permutation, or npos if not a group element.
  Elem find(const Perm& p) const;

  static constexpr Elem npos = ~Elem{0};

 private:
  std::uint64_t key_of(const Perm& p) const;

  std::uint32_t degree_;
  std::vector<Perm> elements_;
  std::vector<std::uint32_t> base_;
  std::uint32_t bits_ = 0;
  std::unordered_map<std::uint64_t, Elem> index_;
};

/// A finite group given by a full multiplication table, or (for large
/// permutation groups) by a PermAction. Immutable after construction.
class Group {
 public:
  static constexpr Elem kIdentity = 0;

  /// Dense table, row-major: table[a * n + b] = a*b.
  static Group from_table(std::size_t n, std::vector<Elem> table, std::string tag);
  static Group from_action(std::shared_ptr<const PermAction> action, std::string tag,
                           bool make_dense);

  std::size_t order() const { return n_; }
  bool is_dense() const { return !table_.empty(); }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
    return action_->mul(a, b);
  }
  Elem inv(Elem a) const { return inv_[a]; }
  bool commute(Elem a, Elem b) const {
    if (!table_.empty()) return mul(a, b) == mul(b, a);
    return action_->commute(a, b);
  }
  /// g^-1 x g
  Elem conj(Elem x, Elem g) const { return mul(mul(inv_[g], x), g); }
  Elem pow(Elem a, std::uint64_t e) const;
  std::uint32_t element_order(Elem a) const;

  const std::string& tag() const { return tag_; }
  std::span<const Elem> table() const { return table_; }
  const PermAction* action() const { return action_.get(); }

  /// Generating set (indices), possibly empty when unknown.
  const std::vector<Elem>& generators() const { return generators_; }
  /// Mixed-radix factor orders when built as an iterated direct product.
  const std::vector<std::size_t>& factor_orders() const { return factor_orders_; }

  void set_generators(std::vector<Elem> g) { generators_ = std::move(g); }
  void set_factor_orders(std::vector<std::size_t> f) { factor_orders_ = std::move(f); }
  void set_tag(std::string t) { tag_ = std::move(t); }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::shared_ptr<const PermAction> action_;
  std::string tag_;
  std::vector<Elem> generators_;
  std::vector<std::size_t> factor_orders_;
  std::vector<std::string> labels_;
};

/// Sorted member list of a subgroup of some parent group.
struct Subgroup {
  std::vector<Elem> members;

  std::size_t order() const { return members.size(); }
  bool contains(Elem x) const;
};

struct Spectrum {
  std::set<std::uint64_t> omega;  // element orders
  std::set<std::uint64_t> mu;     // divisibility-maximal orders
};

}  // namespace apg
