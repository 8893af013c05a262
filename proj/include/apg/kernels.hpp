#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "apg/bitset.hpp"
#include "apg/group.hpp"

// Data-parallel kernels over group elements. Each kernel has an OpenMP
// version (the default entry points) and a serial reference in
// kernels::serial that the tests compare against bit for bit.
namespace apg::kernels {

/// Worker count for the parallel kernels; 0 means the OpenMP default.
void set_threads(int n);
int threads();

/// row[i] has bit j iff vertices[i] and vertices[j] commute (i == j included).
std::vector<Bitset> commute_rows(const Group& g, const std::vector<Elem>& vertices);
/// Same over all elements.
std::vector<Bitset> commute_rows(const Group& g);

std::uint64_t count_commuting_pairs(const Group& g);

/// |C_G(x)| for every x.
std::vector<std::uint32_t> centralizer_orders(const Group& g);

/// First (i < j) in row-major order with elems[i], elems[j] commuting.
std::optional<std::pair<std::size_t, std::size_t>> first_commuting_pair(
    const Group& g, const std::vector<Elem>& elems);

namespace serial {
std::vector<Bitset> commute_rows(const Group& g, const std::vector<Elem>& vertices);
std::uint64_t count_commuting_pairs(const Group& g);
std::vector<std::uint32_t> centralizer_orders(const Group& g);
std::optional<std::pair<std::size_t, std::size_t>> first_commuting_pair(
    const Group& g, const std::vector<Elem>& elems);
}  // namespace serial

}  // namespace apg::kernels
