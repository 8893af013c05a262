#include <algorithm>

#include "doctest.h"

#include "apg/analysis.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/kernels.hpp"
#include "apg/partition.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace apg;

namespace {

Group fam(const std::string& s) { return build_family(FamilyId::parse(s)); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

// Q8 with i = 1, -1 = 2, -i = 3, j = 4, k = 5, -j = 6, -k = 7.
AbelianPartition q8_minimal() { return {{{0, 1, 2, 3}, {4, 6}, {5, 7}}}; }

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("verify_partition") {
    Group q8 = fam("quaternion:8");
    CHECK(verify_partition(q8, q8_minimal()));
    AbelianPartition whole{{{0, 1, 2, 3, 4, 5, 6, 7}}};
    Check c = verify_partition(q8, whole);
    CHECK_FALSE(c);
    REQUIRE(c.witness);
    CHECK_FALSE(q8.commute(c.witness->first, c.witness->second));
    CHECK_FALSE(verify_partition(q8, {{{0, 1, 2, 3}, {4, 6}, {5}, {7}}}));
    CHECK_FALSE(verify_partition(q8, {{{0, 1, 2, 3}, {4, 6}, {5, 5, 7}}}));
    CHECK_FALSE(verify_partition(q8, {{{0, 1, 2, 3}, {4, 6}}}));
    CHECK_FALSE(verify_partition(q8, {{{0, 1, 2, 3}, {4, 6}, {5, 7, 8}}}));
  }

  TEST_CASE("exact_theta agrees with the brute-force oracle up to order 24") {
    for (const auto& s : small_corpus()) {
      Group g = fam(s);
      ThetaResult r = exact_theta(g);
      INFO(s);
      REQUIRE(r.certified);
      CHECK(r.value == oracle::theta(g));
      CHECK(r.value != 2);
      if (r.value > 0) {
        REQUIRE(r.partition);
        CHECK(r.partition->size() == r.value);
        CHECK(verify_partition(g, *r.partition));
      }
      CHECK(verify_certificate(g, r));
    }
  }

  TEST_CASE("documented values") {
    CHECK(exact_theta(fam("dihedral:8")).value == 3);
    CHECK(exact_theta(fam("quaternion:8")).value == 3);
    ThetaResult s3 = exact_theta(fam("symmetric:3"));
    CHECK(s3.value == 0);
    CHECK(s3.certified);
    CHECK(s3.certificate == CertificateKind::NapExhaustive);
    CHECK(exact_theta(fam("alternating:4")).value == 5);
    CHECK(exact_theta(fam("symmetric:4")).value == 10);
    CHECK(exact_theta(fam("alternating:5")).value == 21);
    CHECK(exact_theta(fam("dihedral_product:6:6")).value == 0);
  }

  TEST_CASE("property suite over the corpus") {
    std::vector<std::string> groups = small_corpus();
    for (const char* s : {"heisenberg:3", "dihedral_product:6:6", "alternating:5", "dihedral:60", "quaternion:60",
                          "frobenius:8:7", "psl2:4"})
      groups.push_back(s);
    for (const auto& s : groups) {
      Group g = fam(s);
      INFO(s);
      ThetaResult r = exact_theta(g);
      REQUIRE(r.certified);
      CHECK(r.value != 2);
      if (r.value == 0) continue;
      const auto& p = *r.partition;
      const std::uint64_t n = g.order(), c = class_count(g);
      BoundsReport b = compute_bounds(g);
      CHECK(b.best_lb <= r.value);
      if (b.best_ub) CHECK(r.value <= *b.best_ub);
      CHECK(b.lb_noncommuting <= r.value);
      CHECK((n + c - 1) / c <= r.value);
      CHECK(block_square_sum_check(g, p));
      CHECK(min_part_size_check(g, p));
      std::uint64_t sq = 0;
      for (const auto& blk : p.blocks) sq += blk.size() * blk.size();
      CHECK(sq <= n * c);
      if (!is_abelian(g)) {
        // Every block of a minimal partition holds a noncentral element.
        Subgroup z = center(g);
        for (const auto& blk : p.blocks)
          CHECK(std::any_of(blk.begin(), blk.end(), [&](Elem x) { return !z.contains(x); }));
        AbelianPartition q = normalize_first_block(g, p);
        CHECK(q.size() == p.size());
        CHECK(verify_partition(g, q));
        for (Elem zc : z.members) CHECK(std::find(q.blocks[0].begin(), q.blocks[0].end(), zc) != q.blocks[0].end());
      }
      Subgroup a = max_abelian_subgroup(g);
      if (a.order() > r.value) CHECK(check_union_lemma(g, a.members, r.value));
    }
  }

  TEST_CASE("classify_small_theta matches exact values") {
    CHECK(classify_small_theta(fam("dihedral:8")) == SmallTheta::Three);
    CHECK(classify_small_theta(fam("quaternion:8")) == SmallTheta::Three);
    CHECK(classify_small_theta(fam("dihedral:12")) == SmallTheta::Four);
    CHECK(classify_small_theta(fam("heisenberg:3")) == SmallTheta::Four);
    CHECK(classify_small_theta(fam("abelian:4:2")) == SmallTheta::One);
    // D8 x Z3: a 2-group with the right quotient times an odd abelian group.
    CHECK(classify_small_theta(direct_product(fam("dihedral:8"), cyclic_group(3))) == SmallTheta::Three);
    std::vector<std::string> groups = small_corpus();
    groups.push_back("heisenberg:3");
    for (const auto& s : groups) {
      Group g = fam(s);
      INFO(s);
      const auto v = exact_theta(g).value;
      const SmallTheta t = classify_small_theta(g);
      CHECK((v == 1) == (t == SmallTheta::One));
      CHECK((v == 3) == (t == SmallTheta::Three));
      CHECK((v == 4) == (t == SmallTheta::Four));
    }
  }

  TEST_CASE("bounds") {
    BoundsReport d8 = compute_bounds(fam("dihedral:8"));
    CHECK(d8.lb_noncommuting == 3);
    REQUIRE(d8.ub_thm_c);
    CHECK(*d8.ub_thm_c == 3);
    CHECK(d8.best_lb == 3);
    CHECK(*d8.best_ub == 3);
    BoundsReport a5 = compute_bounds(fam("alternating:5"));
    CHECK(a5.lb_classcount == 12);
    CHECK(a5.lb_noncommuting == 21);
    CHECK_FALSE(a5.ub_center_cosets);
    BoundsReport ab = compute_bounds(fam("abelian:2:2"));
    CHECK(ab.abelian);
    CHECK(ab.best_lb == 1);
  }

  TEST_CASE("constructive partitions") {
    AbelianPartition q8 = center_coset_partition(fam("quaternion:8"));
    CHECK(q8.size() == 4);
    for (const auto& b : q8.blocks) CHECK(b.size() == 2);
    CHECK(center_coset_partition(fam("abelian:2:2")).size() == 1);
    CHECK(code_of([] { center_coset_partition(fam("symmetric:3")); }) == ErrorCode::CenterTrivial);

    AbelianPartition z7 = odd_order_partition(fam("cyclic:7"));
    CHECK(z7.size() == 3);
    CHECK(z7.blocks[0].size() == 3);
    Group f21 = fam("frobenius:7:3");
    AbelianPartition p21 = odd_order_partition(f21);
    CHECK(p21.size() == 10);
    CHECK(verify_partition(f21, p21));
    CHECK(odd_order_partition(fam("cyclic:3")).size() == 1);
    CHECK(code_of([] { odd_order_partition(fam("dihedral:8")); }) == ErrorCode::EvenOrder);
  }

  TEST_CASE("centralizer certificates") {
    for (int n = 2; n <= 8; ++n) {
      Group g = build_family({"dihedral", {4 * n}});
      const auto m = static_cast<Elem>(2 * n);
      AbelianPartition p;
      std::vector<Elem> anchors{1};
      p.blocks.push_back({});
      for (Elem i = 0; i < m; ++i) p.blocks[0].push_back(i);
      for (Elem i = 0; i < static_cast<Elem>(n); ++i) {
        p.blocks.push_back({m + i, m + i + static_cast<Elem>(n)});
        anchors.push_back(m + i);
      }
      CHECK(certify_minimal_via_centralizers(g, p, anchors));
      CHECK(check_noncommuting_anchors(g, p, anchors));
      auto bad = anchors;
      bad[0] = 0;  // C(1) = G is not abelian.
      CHECK_FALSE(certify_minimal_via_centralizers(g, p, bad));
      bad = anchors;
      bad[1] = 1;  // two anchors from block 0
      CHECK_FALSE(check_noncommuting_anchors(g, p, bad));
    }
    Group a5 = fam("alternating:5");
    ThetaResult r = ac_partition(a5);
    CHECK(certify_minimal_via_centralizers(a5, *r.partition, r.anchors));
  }

  TEST_CASE("verify_certificate rejects tampering") {
    Group d8 = fam("dihedral:8");
    ThetaResult r = family_theta(FamilyId::parse("dihedral:8"), d8);
    CHECK(verify_certificate(d8, r));
    ThetaResult wrong = r;
    wrong.value = 2;
    CHECK_FALSE(verify_certificate(d8, wrong));
    ThetaResult moved = r;
    std::swap(moved.partition->blocks[0][1], moved.partition->blocks[1][0]);
    CHECK_FALSE(verify_certificate(d8, moved));
    ThetaResult nap = exact_theta(fam("symmetric:3"));
    CHECK(verify_certificate(fam("symmetric:3"), nap));
    CHECK_FALSE(verify_certificate(d8, nap));
  }

  TEST_CASE("normalize and union lemma examples") {
    Group q8 = fam("quaternion:8");
    AbelianPartition p{{{0, 1, 3}, {2, 4, 6}, {5, 7}}};
    REQUIRE(verify_partition(q8, p));
    AbelianPartition q = normalize_first_block(q8, p);
    CHECK(q.blocks[0] == std::vector<Elem>{0, 1, 2, 3});
    CHECK(q.blocks[1] == std::vector<Elem>{4, 6});
    CHECK(normalize_first_block(q8, q8_minimal()).blocks == q8_minimal().blocks);
    Group s4 = fam("symmetric:4");
    ThetaResult r = exact_theta(s4);
    CHECK(normalize_first_block(s4, *r.partition).blocks == r.partition->blocks);

    CHECK(check_union_lemma(q8, {0, 1, 2, 3}, 3));
    CHECK(check_union_lemma(fam("dihedral:8"), {0, 1, 2, 3}, 3));
    CHECK(code_of([&] { check_union_lemma(q8, {1, 4}, 1); }) == ErrorCode::NotCommuting);
  }

  TEST_CASE("counting witnesses") {
    Group s3 = fam("symmetric:3");
    auto w = hall_violation(s3);
    REQUIRE(w);
    CHECK(w->mates.size() < w->set.size());
    CHECK(check_counting_witness(s3, *w));
    CHECK_FALSE(hall_violation(fam("dihedral:8")));
    CountingWitness forged = *w;
    forged.mates.pop_back();
    CHECK_FALSE(check_counting_witness(s3, forged));
  }

  TEST_CASE("results do not depend on the thread count") {
    Group g = fam("dihedral:24");
    kernels::set_threads(1);
    ThetaResult a = exact_theta(g);
    kernels::set_threads(4);
    ThetaResult b = exact_theta(g);
    kernels::set_threads(0);
    CHECK(a.value == b.value);
    CHECK(a.partition->blocks == b.partition->blocks);
  }

  TEST_CASE("budget cut leaves the result uncertified") {
    ExactOptions tiny;
    tiny.node_budget = 1;
    ThetaResult r = exact_theta(fam("dihedral:24"), tiny);
    CHECK_FALSE(r.certified);
    CHECK(r.lower_bound >= 3);
  }
}
