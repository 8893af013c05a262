#include "doctest.h"

#include "apg/analysis.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/partition.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace apg;

namespace {
Group fam(const std::string& s) { return build_family(FamilyId::parse(s)); }
}  // namespace

TEST_SUITE("commuting_graph") {
  TEST_CASE("adjacency is commutation, symmetric, complement exact") {
    for (const auto& s : small_corpus()) {
      Group g = fam(s);
      CommGraph cg = build_commuting_graph(g);
      for (std::size_t v = 0; v < cg.size(); ++v) {
        Bitset nc = cg.nc_row(v);
        for (std::size_t w = 0; w < cg.size(); ++w) {
          const bool c = oracle::commute(g, cg.element(v), cg.element(w));
          REQUIRE(cg.adjacent(v, w) == (c && v != w));
          REQUIRE(cg.adjacent(v, w) == cg.adjacent(w, v));
          REQUIRE(cg.nc_adjacent(v, w) == (!c && v != w));
          REQUIRE(nc.test(w) == cg.nc_adjacent(v, w));
        }
      }
      // The identity is adjacent to everything else.
      for (std::size_t w = 1; w < cg.size(); ++w) CHECK(cg.adjacent(0, w));
    }
  }

  TEST_CASE("subset graphs keep the vertex map") {
    Group q8 = fam("quaternion:8");
    CommGraph cg = build_commuting_graph(q8, std::vector<Elem>{1, 2, 4, 5});
    CHECK(cg.size() == 4);
    CHECK(cg.element(2) == 4);
    // Q8: every element commutes with the two central ones.
    Subgroup z = center(q8);
    CommGraph full = build_commuting_graph(q8);
    for (std::size_t v = 0; v < 8; ++v)
      for (Elem c : z.members)
        if (c != v) CHECK(full.adjacent(v, c));
  }

  TEST_CASE("n(G) against brute force and known values") {
    for (const auto& s : small_corpus()) {
      Group g = fam(s);
      if (g.order() > 16) continue;
      CliqueResult r = max_noncommuting_set(g);
      CHECK(r.exact);
      CHECK(r.size == oracle::max_noncommuting(g));
      CHECK(r.witness.size() == r.size);
      for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
          CHECK_FALSE(oracle::commute(g, r.witness[i], r.witness[j]));
    }
    CHECK(max_noncommuting_set(fam("alternating:5")).size == 21);
    CHECK(max_noncommuting_set(fam("abelian:4:2")).size == 1);
    for (int n = 2; n <= 15; ++n) {
      CHECK(max_noncommuting_set(build_family({"dihedral", {4 * n}})).size == static_cast<std::size_t>(n + 1));
      CHECK(max_noncommuting_set(build_family({"quaternion", {4 * n}})).size == static_cast<std::size_t>(n + 1));
    }
  }

  TEST_CASE("n(G) >= 3 for nonabelian groups, and {x, y, xy} is noncommuting") {
    std::vector<std::string> groups = small_corpus();
    groups.insert(groups.end(), wide_corpus().begin(), wide_corpus().end());
    for (const auto& s : groups) {
      Group g = fam(s);
      if (is_abelian(g)) continue;
      CHECK(max_noncommuting_set(g).size >= 3);
      for (Elem x = 0; x < g.order(); x += 3)
        for (Elem y = 0; y < g.order(); y += 5) {
          if (g.commute(x, y)) continue;
          Elem xy = g.mul(x, y);
          CHECK_FALSE(g.commute(x, xy));
          CHECK_FALSE(g.commute(y, xy));
        }
    }
  }

  TEST_CASE("(m,n)-split claims") {
    Group z6 = fam("cyclic:6");
    CommGraph cz = build_commuting_graph(z6);
    CHECK(verify_mn_split(cz, {{}, {{0, 1, 2, 3, 4, 5}}}));

    Group q8 = fam("quaternion:8");
    CommGraph cq = build_commuting_graph(q8);
    ThetaResult t = exact_theta(q8);
    REQUIRE(t.partition);
    SplitPartitionClaim complete, independent;
    for (const auto& b : t.partition->blocks) {
      complete.complete_blocks.emplace_back(b.begin(), b.end());
      independent.independent_blocks.emplace_back(b.begin(), b.end());
    }
    CHECK(verify_mn_split(cq, complete));
    CHECK_FALSE(verify_mn_split(cq, independent));

    CHECK_THROWS_AS(verify_mn_split(cq, {{{0, 1}}, {{1, 2, 3, 4, 5, 6, 7}}}), Error);
    CHECK_THROWS_AS(verify_mn_split(cq, {{}, {{0, 1, 2, 3, 4, 5, 6}}}), Error);
    CHECK_THROWS_AS(verify_mn_split(cq, {{}, {{0, 1, 2, 3, 4, 5, 6, 7, 8}}}), Error);
  }

  TEST_CASE("DIMACS export") {
    CommGraph cg = build_commuting_graph(fam("symmetric:3"));
    std::string nc = to_dimacs(cg, true);
    // S3 has 18 commuting ordered pairs, so 6 + 2e = 18 gives 6 commuting
    // edges and 15 - 6 = 9 noncommuting ones.
    CHECK(nc.find("\np edge 6 9\n") != std::string::npos);
    CHECK(to_dimacs(cg, false).find("\np edge 6 6\n") != std::string::npos);
  }
}
