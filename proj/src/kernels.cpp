#include "apg/kernels.hpp"

#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace apg::kernels {

namespace {
int g_threads = 0;

int active_threads() {
#ifdef _OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Elem> all_elements(const Group& g) {
  std::vector<Elem> v(g.order());
  std::iota(v.begin(), v.end(), Elem{0});
  return v;
}
}  // namespace

void set_threads(int n) { g_threads = n; }
int threads() { return active_threads(); }

std::vector<Bitset> commute_rows(const Group& g, const std::vector<Elem>& vertices) {
  const auto n = static_cast<std::int64_t>(vertices.size());
  std::vector<Bitset> rows(vertices.size(), Bitset(vertices.size()));
  // Upper triangle per row, then mirror; rows are disjoint per thread.
#pragma omp parallel for schedule(dynamic, 16) num_threads(active_threads())
  for (std::int64_t i = 0; i < n; ++i) {
    rows[i].set(static_cast<std::size_t>(i));
    for (std::int64_t j = i + 1; j < n; ++j)
      if (g.commute(vertices[i], vertices[j])) rows[i].set(static_cast<std::size_t>(j));
  }
  for (std::int64_t i = 0; i < n; ++i)
    rows[i].for_each([&](std::size_t j) {
      if (static_cast<std::int64_t>(j) > i) rows[j].set(static_cast<std::size_t>(i));
    });
  return rows;
}

std::vector<Bitset> commute_rows(const Group& g) { return commute_rows(g, all_elements(g)); }

std::uint64_t count_commuting_pairs(const Group& g) {
  const auto n = static_cast<std::int64_t>(g.order());
  std::uint64_t off_diag = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : off_diag) num_threads(active_threads())
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = a + 1; b < n; ++b)
      if (g.commute(static_cast<Elem>(a), static_cast<Elem>(b))) ++off_diag;
  return 2 * off_diag + static_cast<std::uint64_t>(n);
}

std::vector<std::uint32_t> centralizer_orders(const Group& g) {
  const auto n = static_cast<std::int64_t>(g.order());
  std::vector<std::uint32_t> out(g.order(), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(active_threads())
  for (std::int64_t a = 0; a < n; ++a) {
    std::uint32_t c = 0;
    for (std::int64_t b = 0; b < n; ++b)
      if (g.commute(static_cast<Elem>(a), static_cast<Elem>(b))) ++c;
    out[a] = c;
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_commuting_pair(
    const Group& g, const std::vector<Elem>& elems) {
  const auto n = static_cast<std::int64_t>(elems.size());
  // Each row records its first hit; the least row with a hit wins, which is
  // the row-major first pair regardless of scheduling.
  std::vector<std::int64_t> hit(elems.size(), -1);
#pragma omp parallel for schedule(dynamic, 8) num_threads(active_threads())
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (g.commute(elems[i], elems[j])) {
        hit[i] = j;
        break;
      }
  for (std::int64_t i = 0; i < n; ++i)
    if (hit[i] >= 0)
      return std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(hit[i]));
  return std::nullopt;
}

namespace serial {

std::vector<Bitset> commute_rows(const Group& g, const std::vector<Elem>& vertices) {
  std::vector<Bitset> rows(vertices.size(), Bitset(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < vertices.size(); ++j)
      if (g.mul(vertices[i], vertices[j]) == g.mul(vertices[j], vertices[i])) rows[i].set(j);
  return rows;
}

std::uint64_t count_commuting_pairs(const Group& g) {
  std::uint64_t c = 0;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) ++c;
  return c;
}

std::vector<std::uint32_t> centralizer_orders(const Group& g) {
  std::vector<std::uint32_t> out(g.order(), 0);
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) ++out[a];
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> first_commuting_pair(
    const Group& g, const std::vector<Elem>& elems) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (g.mul(elems[i], elems[j]) == g.mul(elems[j], elems[i])) return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace serial

}  // namespace apg::kernels
