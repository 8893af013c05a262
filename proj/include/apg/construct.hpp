#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "apg/group.hpp"

namespace apg {

struct BuildOptions {
  std::size_t order_cap = 200'000;
  /// Groups at most this large get a dense multiplication table.
  std::size_t dense_limit = 5'000;
};

/// Closure of the generators by breadth-first right multiplication from the
/// identity; element numbering is the discovery order.
Group group_from_generators(const PermSpec& spec, const BuildOptions& opts = {},
                            std::string tag = "generated");

/// (g, h) has index g * |H| + h.
Group direct_product(const Group& g, const Group& h, const BuildOptions& opts = {});

/// K wr H with H acting on coordinates of K^n. Element (k_0..k_{n-1}; s)
/// has index (sum k_i |K|^i) * |H| + s, where s is the BFS index of the top
/// element in the closure of `top`.
Group wreath_product(const Group& k, const PermSpec& top, const BuildOptions& opts = {});

/// Group induced on a subgroup's members (sorted, identity first).
Group subgroup_group(const Group& g, const Subgroup& h, std::string tag);

/// G/N for a normal subgroup N; cosets numbered by least representative.
Group quotient_group(const Group& g, const Subgroup& normal, std::string tag);

/// Regular (Cayley) permutation representation of a group: one generator per
/// element of the supplied generating set, acting by right multiplication.
PermSpec regular_representation(const Group& g);

Group cyclic_group(std::size_t n);

}  // namespace apg
