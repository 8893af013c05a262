#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"

#include "apg/analysis.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/io.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace apg;

namespace {

Group fam(const std::string& s) { return build_family(FamilyId::parse(s)); }

std::map<std::uint32_t, std::size_t> order_profile(const Group& g) {
  std::map<std::uint32_t, std::size_t> m;
  for (Elem x = 0; x < g.order(); ++x) ++m[g.element_order(x)];
  return m;
}

void check_group_axioms(const Group& g) {
  const auto n = static_cast<Elem>(g.order());
  const Elem step = n <= 512 ? 1 : n / 97 + 1;
  for (Elem x = 0; x < n; ++x) {
    REQUIRE(g.mul(0, x) == x);
    REQUIRE(g.mul(x, 0) == x);
    REQUIRE(g.mul(x, g.inv(x)) == 0);
  }
  for (Elem x = 0; x < n; x += step)
    for (Elem y = 0; y < n; y += step)
      for (Elem z = 0; z < n; z += step) REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("closure from generators") {
    Group z2 = group_from_generators({2, {{1, 0}}});
    CHECK(z2.order() == 2);
    Group s3 = group_from_generators({3, {{1, 2, 0}, {1, 0, 2}}});
    CHECK(s3.order() == 6);
    CHECK_FALSE(is_abelian(s3));
    CHECK(fam("psl2:7").order() == 168);
    CHECK_THROWS_AS(group_from_generators({2, {{0, 0}}}), Error);
    BuildOptions tiny;
    tiny.order_cap = 100;
    CHECK_THROWS_AS(group_from_generators({5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}}, tiny), Error);
  }

  TEST_CASE("group axioms across the corpus") {
    for (const auto& s : small_corpus()) check_group_axioms(fam(s));
    for (const auto& s : wide_corpus()) check_group_axioms(fam(s));
  }

  TEST_CASE("golden S3 table") {
    Group s3 = group_from_generators({3, {{1, 0, 2}, {1, 2, 0}}}, {}, "perm");
    std::ifstream in(std::string(APG_GOLDEN_DIR) + "/s3.table");
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(canonical_table(s3) == golden.str());
  }

  TEST_CASE("direct and wreath products") {
    Group v4 = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(v4.order() == 4);
    CHECK(is_abelian(v4));
    CHECK(order_profile(v4) == std::map<std::uint32_t, std::size_t>{{1, 1}, {2, 3}});

    Group d6d6 = fam("dihedral_product:6:6");
    CHECK(d6d6.order() == 36);
    CHECK(oracle::center(d6d6).size() == 1);

    Group z2wr = wreath_product(cyclic_group(2), {2, {{1, 0}}});
    CHECK(z2wr.order() == 8);
    CHECK(order_profile(z2wr) == std::map<std::uint32_t, std::size_t>{{1, 1}, {2, 5}, {4, 2}});
    check_group_axioms(z2wr);

    Group w = fam("dihedral_wreath:10:3");
    CHECK(w.order() == 3000);

    // Trivial top group: K itself.
    Group d8 = fam("dihedral:8");
    Group k1 = wreath_product(d8, {1, {{0}}});
    CHECK(k1.order() == 8);
    CHECK(order_profile(k1) == order_profile(d8));

    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
             {"dihedral:8", "quaternion:8"}, {"symmetric:3", "cyclic:7"}, {"alternating:4", "cyclic:2"}})
      CHECK(direct_product(fam(a), fam(b)).order() == fam(a).order() * fam(b).order());
  }

  TEST_CASE("center, centralizers and classes against brute force") {
    for (const auto& s : small_corpus()) {
      Group g = fam(s);
      CHECK(center(g).members == oracle::center(g));
      CHECK(class_count(g) == oracle::class_count(g));
      CHECK(centralizer(g, 0).order() == g.order());
      for (const auto& cls : conjugacy_classes(g))
        for (Elem x : cls) CHECK(cls.size() * centralizer(g, x).order() == g.order());
    }
    CHECK(center(fam("dihedral:8")).order() == 2);
  }

  TEST_CASE("A5 classes") {
    std::multiset<std::size_t> sizes;
    for (const auto& c : conjugacy_classes(fam("alternating:5"))) sizes.insert(c.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 12, 12, 15, 20});
  }

  TEST_CASE("commuting pairs equal |G| c(G)") {
    CHECK(commuting_pairs_count(fam("symmetric:3")) == 18);
    CHECK(commuting_pairs_count(fam("quaternion:8")) == 40);
    CHECK(commuting_pairs_count(fam("abelian:4:2")) == 64);
    for (const auto& s : small_corpus()) {
      Group g = fam(s);
      CHECK(oracle::commuting_pairs(g) == g.order() * oracle::class_count(g));
      CHECK(commuting_pairs_count(g) == oracle::commuting_pairs(g));
    }
    for (const auto& s : wide_corpus()) {
      Group g = fam(s);
      CHECK(commuting_pairs_count(g) == g.order() * class_count(g));
    }
  }

  TEST_CASE("maximal abelian subgroups") {
    for (int n = 2; n <= 6; ++n) {
      Subgroup a = max_abelian_subgroup(build_family({"dihedral", {4 * n}}));
      CHECK(a.order() == static_cast<std::size_t>(2 * n));
    }
    CHECK(max_abelian_subgroup(fam("alternating:5")).order() == 5);
    CHECK(max_abelian_subgroup(fam("abelian:4:2")).order() == 8);
    CHECK(max_abelian_subgroup(fam("symmetric:4")).order() == 4);
  }

  TEST_CASE("involutions and the odd part") {
    Group d6 = fam("dihedral:6");
    CHECK(involutions(d6).size() == 3);
    auto odd = odd_part_subgroup(d6);
    REQUIRE(odd);
    CHECK(odd->order() == 3);
    Group q8 = fam("quaternion:8");
    CHECK(involutions(q8).size() == 1);
    REQUIRE(odd_part_subgroup(q8));
    CHECK(odd_part_subgroup(q8)->order() == 1);
    Group f21 = fam("frobenius:7:3");
    CHECK(odd_part_subgroup(f21)->order() == 21);
    CHECK_FALSE(odd_part_subgroup(fam("alternating:4")));
  }

  TEST_CASE("spectra") {
    Spectrum s = spectrum(fam("symmetric:4"));
    CHECK(s.omega == std::set<std::uint64_t>{1, 2, 3, 4});
    CHECK(s.mu == std::set<std::uint64_t>{3, 4});
    // PSL(2,q): mu = {p, (q-1)/d, (q+1)/d}.
    for (auto [q, mu] : std::vector<std::pair<int, std::set<std::uint64_t>>>{
             {5, {5, 2, 3}}, {7, {7, 3, 4}}, {8, {2, 7, 9}}, {9, {3, 4, 5}}, {11, {11, 5, 6}}, {13, {13, 6, 7}}})
      CHECK(spectrum(build_family({"psl2", {q}})).mu == mu);
  }

  TEST_CASE("quotients and subgroups") {
    Group d8 = fam("dihedral:8");
    Group q = quotient_group(d8, center(d8), "d8/z");
    CHECK(q.order() == 4);
    CHECK(is_abelian(q));
    Group c = subgroup_group(d8, max_abelian_subgroup(d8), "c4");
    CHECK(c.order() == 4);
    CHECK(is_abelian(c));
  }

  TEST_CASE("permutation backend agrees with the dense table") {
    PermSpec spec = {5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}};  // A5
    BuildOptions dense, sparse;
    sparse.dense_limit = 10;
    Group a = group_from_generators(spec, dense), b = group_from_generators(spec, sparse);
    REQUIRE(a.is_dense());
    REQUIRE_FALSE(b.is_dense());
    for (Elem x = 0; x < 60; ++x)
      for (Elem y = 0; y < 60; ++y) {
        REQUIRE(a.mul(x, y) == b.mul(x, y));
        REQUIRE(a.commute(x, y) == b.commute(x, y));
      }
  }
}
