#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apg/group.hpp"

namespace apg {

/// Blocks of element indices; after canonicalize() each block is sorted and
/// blocks are ordered by least element, so block 0 holds the identity.
struct AbelianPartition {
  std::vector<std::vector<Elem>> blocks;

  std::size_t size() const { return blocks.size(); }
};

void canonicalize(AbelianPartition& p);

/// Outcome of a check, with the first violated condition when it fails.
struct Check {
  bool ok = true;
  std::string reason;
  std::optional<std::pair<Elem, Elem>> witness;

  explicit operator bool() const { return ok; }
  static Check pass() { return {}; }
  static Check fail(std::string why, std::optional<std::pair<Elem, Elem>> w = std::nullopt) {
    return {false, std::move(why), w};
  }
};

Check verify_partition(const Group& g, const AbelianPartition& p);

/// A set X with |N(X)| < |X|, where N(X) is the union of C_G(x) \ {x}. Any
/// abelian partition pairs each x with a distinct commuting partner, so such
/// an X rules out every partition. With X noncommuting, N(X) is exactly the
/// set of mates of X.
struct CountingWitness {
  std::vector<Elem> set;
  std::vector<Elem> mates;
};

Check check_counting_witness(const Group& g, const CountingWitness& w);

struct BoundsReport {
  std::uint64_t order = 0;
  std::uint64_t center_order = 0;
  std::uint64_t class_count = 0;
  std::uint64_t lb_noncommuting = 0;
  bool lb_noncommuting_exact = false;
  std::uint64_t lb_classcount = 0;
  std::uint64_t lb_floor = 0;
  std::optional<std::uint64_t> max_abelian_order;
  std::optional<std::uint64_t> ub_thm_c;          // missing when the subgroup search gave up
  std::optional<std::uint64_t> ub_center_cosets;  // missing means infinity (trivial center)
  std::uint64_t best_lb = 0;
  std::optional<std::uint64_t> best_ub;
  /// Upper bounds bound the AP-degree only for AP-groups.
  bool upper_bounds_need_ap = true;
  bool abelian = false;
};

struct BoundsOptions {
  std::uint64_t clique_budget = 100'000'000;
  std::size_t clique_max_order = 5'000;
  std::size_t abelian_max_order = 10'000;
};

BoundsReport compute_bounds(const Group& g, const BoundsOptions& opts = {});

/// Cosets of Z(G), identity coset first, cosets ordered by least element.
AbelianPartition center_coset_partition(const Group& g);
/// A maximal abelian subgroup A plus the Z(G)-cosets outside it.
AbelianPartition max_abelian_coset_partition(const Group& g);
/// Pairs {x, x^-1} with the identity added to the first pair.
AbelianPartition odd_order_partition(const Group& g);

enum class CertificateKind {
  Exhaustive,
  CentralizerMinimal,
  FamilyFormula,
  SandwichedBounds,
  NapExhaustive,
  NapCounting,
  NapSelfCentralizing,
  BoundsOnly,
};

std::string to_string(CertificateKind k);
CertificateKind certificate_kind_from_string(const std::string& s);

struct ThetaResult {
  std::uint64_t value = 0;  // 0 means NAP
  bool certified = false;   // false: budget cut, only bounds are known
  std::optional<AbelianPartition> partition;
  CertificateKind certificate = CertificateKind::BoundsOnly;
  std::vector<Elem> anchors;
  std::string family;
  std::optional<CountingWitness> counting;
  std::uint64_t lower_bound = 0;
  std::optional<std::uint64_t> upper_bound;
  std::string note;
};

struct ExactOptions {
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t clique_budget = 100'000'000;
};

/// Outcome of the AP existence search.
struct Feasibility {
  enum class Status { Feasible, Infeasible, Unknown } status = Status::Unknown;
  std::optional<AbelianPartition> partition;
  std::optional<CountingWitness> counting;  // set when the root relaxation fails
  std::uint64_t nodes = 0;
};

/// Exhaustive search for any abelian partition: covers by commuting pairs and
/// triples (every block splits into those), pruned by a perfect-matching
/// relaxation on the bipartite double cover of the commuting graph.
Feasibility find_abelian_partition(const Group& g, std::uint64_t node_budget = 20'000'000);

/// Root relaxation only: a Hall violator if one exists.
std::optional<CountingWitness> hall_violation(const Group& g);

/// Exact AP-degree by branch and bound.
ThetaResult exact_theta(const Group& g, const ExactOptions& opts = {});

/// Strict form: each C(a_i) abelian, block 0 = C(a_1), block i = C(a_i) \ Z(G).
Check certify_minimal_via_centralizers(const Group& g, const AbelianPartition& p,
                                       const std::vector<Elem>& anchors);

/// Anchor i lies in block i and anchors are pairwise noncommuting, so any
/// abelian partition needs at least as many blocks.
Check check_noncommuting_anchors(const Group& g, const AbelianPartition& p,
                                 const std::vector<Elem>& anchors);

/// Re-check a result against the group it claims to describe.
Check verify_certificate(const Group& g, const ThetaResult& r);

/// Move central elements into block 0 until Z(G) < block 0.
AbelianPartition normalize_first_block(const Group& g, const AbelianPartition& p);

/// For a commuting set larger than the AP-degree, the centralizers of
/// a_i^-1 a_j (i < j) cover G.
bool check_union_lemma(const Group& g, const std::vector<Elem>& commuting, std::uint64_t theta);

/// Least block size is at most c(G).
bool min_part_size_check(const Group& g, const AbelianPartition& p);

/// Sum of squared block sizes is at most |G| c(G).
bool block_square_sum_check(const Group& g, const AbelianPartition& p);

enum class SmallTheta { One, Three, Four, Other, NapCandidate };
std::string to_string(SmallTheta t);

/// AP-degree 1, 3, 4 recognised structurally from G/Z(G).
SmallTheta classify_small_theta(const Group& g);

}  // namespace apg
