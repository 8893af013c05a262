#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "apg/group.hpp"

namespace apg {

bool is_abelian(const Group& g);
bool is_commuting_set(const Group& g, const std::vector<Elem>& s);

Subgroup centralizer(const Group& g, Elem x);
Subgroup center(const Group& g);
/// Smallest subgroup containing `gens`.
Subgroup generate(const Group& g, const std::vector<Elem>& gens);
/// Greedy generating set: least elements not yet in the running closure.
std::vector<Elem> generating_set(const Group& g);
Subgroup normalizer(const Group& g, const Subgroup& h);
bool is_subgroup(const Group& g, const std::vector<Elem>& members);
bool is_normal(const Group& g, const Subgroup& h);
/// g^-1 H g, sorted.
std::vector<Elem> conjugate_set(const Group& g, const std::vector<Elem>& h, Elem by);

/// Classes ordered by least member; each class sorted.
std::vector<std::vector<Elem>> conjugacy_classes(const Group& g);
std::size_t class_count(const Group& g);

std::vector<std::uint32_t> element_orders(const Group& g);
Spectrum spectrum(const Group& g);

/// |{(x, y) : xy = yx}|; throws InvariantBroken if it differs from |G| c(G).
std::uint64_t commuting_pairs_count(const Group& g);

struct AbelianSearchOptions {
  std::size_t max_order = 10'000;
  std::uint64_t node_budget = 5'000'000;
};

/// An abelian subgroup of maximal order; ties go to the lexicographically
/// smallest sorted member list.
Subgroup max_abelian_subgroup(const Group& g, const AbelianSearchOptions& opts = {});

std::vector<Elem> involutions(const Group& g);
/// The odd-order elements when they form a subgroup (the normal 2-complement).
std::optional<Subgroup> odd_part_subgroup(const Group& g);

}  // namespace apg
