#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apg/construct.hpp"
#include "apg/group.hpp"
#include "apg/partition.hpp"

namespace apg {

/// A named family with integer parameters, written "name:p1:p2" (commas
/// also separate parameters, so "dihedral_product:6,10" works).
///
///   cyclic:n  abelian:n1,n2,..  dihedral:order  quaternion:order
///   symmetric:n  alternating:n  psl2:q  suzuki:q  frobenius:q:r
///   heisenberg:p  dihedral_product:o1,o2,..  dihedral_wreath:order:p
struct FamilyId {
  std::string name;
  std::vector<std::int64_t> params;

  static FamilyId parse(const std::string& text);
  std::string str() const;
};

/// Validates parameters and builds the group. Element numbering is fixed
/// per family: dihedral b^i = i, a b^i = m + i; quaternion a^e b^i = 2n e + i;
/// the rest follow construction order.
Group build_family(const FamilyId& id, const BuildOptions& opts = {});

/// Closed-form AP-degree with a partition built as in the family's proof.
/// Throws UnsupportedFamily where no formula applies.
ThetaResult family_theta(const FamilyId& id, const Group& g);
ThetaResult family_theta(const FamilyId& id);

/// Closed form only (no construction); nullopt where none applies.
std::optional<std::uint64_t> family_formula(const FamilyId& id);

/// Every noncentral element has an abelian centralizer.
bool ac_group_check(const Group& g);
/// A_1 = C(x_1), A_i = C(x_i) \ Z(G) over a maximum noncommuting set.
ThetaResult ac_partition(const Group& g);

struct FrobeniusPair {
  Subgroup kernel;
  Subgroup complement;
};

/// Searches complement candidates C_G(x) and N_G(<x>) in element order.
std::optional<FrobeniusPair> frobenius_detect(const Group& g);
/// |N| theta(H) + theta(N), with the partition glued from conjugates of H's
/// partition and N's partition.
ThetaResult frobenius_theta(const Group& g);

/// Conjugates u^-1 H u over least-index right coset representatives u of
/// N_G(H), in representative order.
std::vector<std::vector<Elem>> conjugates_by_transversal(const Group& g, const Subgroup& h,
                                                         const Subgroup& normalizer);

/// Census of the L_2(q) partition: conjugates of P, A and B.
struct Psl2Census {
  std::size_t p_blocks = 0, a_blocks = 0, b_blocks = 0;
};
/// Census of the Sz(q) partition; sylow_split is the block count inside one
/// Sylow 2-subgroup.
struct SuzukiCensus {
  std::size_t sylow_blocks = 0, sylow_split = 0, a_blocks = 0, b_blocks = 0, c_blocks = 0;
};

ThetaResult psl2_theta(const Group& g, std::uint32_t q, Psl2Census* census = nullptr);
ThetaResult suzuki_theta(const Group& g, std::uint32_t q, SuzukiCensus* census = nullptr);

/// p^m decomposition of a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace apg
