#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apg/group.hpp"
#include "apg/partition.hpp"

namespace apg {

enum class NapKind {
  SelfCentralizingInvolution,
  DihedralProductCount,
  WreathCount,
  FixedPointFreeCount,
  HallCount,
  Exhaustive,
};

std::string to_string(NapKind k);
NapKind nap_kind_from_string(const std::string& s);

/// Frobenius structure forced by a self-centralizing involution x: the
/// odd-order elements form an index-2 subgroup N that x inverts.
struct InvolutionStructure {
  Elem involution = 0;
  Subgroup kernel;
  bool kernel_is_subgroup_of_index_2 = false;
  bool kernel_abelian = false;
  bool inverted = false;
};

/// The claimed inequality is lhs < rhs, both exact integers in decimal.
struct NapCertificate {
  NapKind kind = NapKind::Exhaustive;
  std::vector<std::int64_t> params;
  std::string lhs, rhs;
  bool inequality_holds = false;
  /// The enumerated sets on a constructed group form a valid counting
  /// witness (fewer mates than noncommuting involutions).
  bool cross_validated = false;
  /// The enumerated counts equal the closed forms behind lhs and rhs.
  bool formula_counts_match = false;
  std::optional<std::uint64_t> enumerated_di, enumerated_dm;
  /// Wreath products only: the mates that lie in the base group.
  std::optional<std::uint64_t> enumerated_dm_base;
  std::optional<InvolutionStructure> involution;
  std::optional<CountingWitness> counting;
  std::string note;
};

std::optional<NapCertificate> self_centralizing_involution(const Group& g);

struct DiagonalSets {
  std::vector<Elem> di;
  std::vector<Elem> dm;
};

/// Diagonal involutions and their mates for a group built by direct_product
/// (factor boundaries from factor_orders(); a group without them is one factor).
DiagonalSets diagonal_sets(const Group& g);

/// Inequality prod(k_i + 1) < 2 prod(k_i); nullopt when it fails. With a
/// group of order at most 5000 the counts are cross-checked on it.
std::optional<NapCertificate> nap_dihedral_product(const std::vector<std::int64_t>& ks,
                                                   const Group* built = nullptr);

/// Inequality (k+1)^p + k < 2 k^p for D_2k wr Z_p; nullopt when it fails.
std::optional<NapCertificate> nap_wreath_check(std::int64_t k, std::int64_t p,
                                               const Group* built = nullptr);

/// Nonconstant diagonal involutions of D_2k wr <(1..p)> and their mates,
/// with the index layout of wreath_product.
DiagonalSets wreath_nonconstant_sets(const Group& g, std::size_t k, std::size_t p);

/// The Sylow 2-subgroup generated by one reflection per coordinate is
/// elementary abelian of full 2-power order.
bool wreath_sylow2_elementary_abelian(const Group& g, std::size_t k, std::size_t p);

struct GammaValue {
  std::uint64_t gamma = 0;      // smallest k > n with k!/n! > (1+k)^n - k^n
  std::uint64_t gamma_odd = 0;  // smallest odd such k
};

/// k!/n! > (1+k)^n - k^n in exact arithmetic (k >= n).
bool gamma_inequality(std::uint64_t n, std::uint64_t k);
GammaValue gamma(std::uint64_t n);
/// Decimal strings of both sides, for reporting.
std::pair<std::string, std::string> gamma_sides(std::uint64_t n, std::uint64_t k);

struct NapEmbedding {
  std::optional<Group> group;  // missing when the order exceeds the cap
  std::uint64_t k = 0;
  std::uint64_t order = 0;
  NapCertificate certificate;
  /// injection[h] is the image of h in the top group copy.
  std::vector<Elem> injection;
};

/// D_2k wr H with H regular and k the odd-adjusted gamma(|H|). The group is
/// built only up to the dense-table limit; past it the certificate is
/// arithmetic only and `group` stays empty.
NapEmbedding embed_in_nap(const Group& h, std::size_t order_cap = 200'000);

/// Fixed-point-free diagonal involutions of D_2k wr H (regular, h points)
/// and their mates.
DiagonalSets fixed_point_free_sets(const Group& g, std::size_t k, std::size_t h);

struct ApEmbedding {
  Group group;
  AbelianPartition partition;
};

/// H x Z_2 with the partition into cosets of 1 x Z_2.
ApEmbedding embed_in_ap(const Group& h, std::size_t order_cap = 200'000);

/// Re-check a certificate; counts and arithmetic are recomputed.
Check verify_nap_certificate(const Group* g, const NapCertificate& c);

/// Tries, in order: self-centralizing involution, a Hall violator of the
/// commuting graph, exhaustive search. nullopt means an abelian partition
/// exists (returned through `found` when given) or the budget ran out.
struct NapOutcome {
  std::optional<NapCertificate> certificate;
  std::optional<AbelianPartition> partition;
  bool budget_exhausted = false;
};
NapOutcome certify_nap(const Group& g, std::uint64_t node_budget = 20'000'000);

/// NAP certificate as a ThetaResult with value 0.
ThetaResult nap_theta_result(const NapCertificate& c);

}  // namespace apg
