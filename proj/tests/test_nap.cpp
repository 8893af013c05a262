#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"

#include "apg/analysis.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/nap.hpp"
#include "apg/partition.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace apg;
using boost::multiprecision::cpp_int;

namespace {

Group fam(const std::string& s) { return build_family(FamilyId::parse(s)); }

Group dihedral_product(std::int64_t a, std::int64_t b) {
  return build_family(FamilyId{"dihedral_product", {a, b}});
}

// k!/n! > (k+1)^n - k^n, written out independently of the library.
bool gamma_oracle(unsigned n, unsigned k) {
  cpp_int f = 1, a = 1, b = 1;
  for (unsigned i = n + 1; i <= k; ++i) f *= i;
  for (unsigned i = 0; i < n; ++i) {
    a *= k + 1;
    b *= k;
  }
  return f > a - b;
}

}  // namespace

TEST_SUITE("nap") {
  TEST_CASE("diagonal involutions and mates") {
    auto d = diagonal_sets(dihedral_product(6, 6));
    CHECK(d.di.size() == 9);
    CHECK(d.dm.size() == 7);
    d = diagonal_sets(fam("dihedral:6"));
    CHECK(d.di.size() == 3);
    CHECK(d.dm.size() == 1);
    d = diagonal_sets(dihedral_product(6, 10));
    CHECK(d.di.size() == 15);
    CHECK(d.dm.size() == 9);

    // Mates are exactly the elements commuting with some diagonal involution.
    Group g = dihedral_product(6, 6);
    d = diagonal_sets(g);
    std::vector<Elem> mates;
    for (Elem y = 0; y < g.order(); ++y) {
      if (std::binary_search(d.di.begin(), d.di.end(), y)) continue;
      for (Elem x : d.di)
        if (oracle::commute(g, x, y)) {
          mates.push_back(y);
          break;
        }
    }
    CHECK(mates == d.dm);
    bool odd = false;
    try {
      diagonal_sets(fam("cyclic:3"));
    } catch (const Error& e) {
      odd = e.code() == ErrorCode::FactorOddOrder;
    }
    CHECK(odd);
  }

  TEST_CASE("dihedral product inequality") {
    Group g33 = dihedral_product(6, 6);
    auto c = nap_dihedral_product({3, 3}, &g33);
    REQUIRE(c);
    CHECK(c->lhs == "16");
    CHECK(c->rhs == "18");
    CHECK(c->cross_validated);
    CHECK(c->formula_counts_match);
    CHECK(verify_nap_certificate(&g33, *c));

    Group g35 = dihedral_product(6, 10);
    c = nap_dihedral_product({3, 5}, &g35);
    REQUIRE(c);
    CHECK(c->lhs == "24");
    CHECK(c->rhs == "30");
    CHECK(c->cross_validated);
    CHECK(verify_nap_certificate(&g35, *c));

    // A single factor gives 4 < 6.
    CHECK(nap_dihedral_product({3}));
    CHECK(nap_dihedral_product({5, 5}));
    // 4^3 = 64 is not below 2 * 27.
    CHECK_FALSE(nap_dihedral_product({3, 3, 3}));

    NapCertificate bad = *nap_dihedral_product({3, 3}, &g33);
    bad.rhs = "17";
    CHECK_FALSE(verify_nap_certificate(&g33, bad));
  }

  TEST_CASE("NAP groups have no abelian partition") {
    for (auto id : {"dihedral_product:6:6", "dihedral_product:6:10"}) {
      Group g = fam(id);
      INFO(id);
      auto f = find_abelian_partition(g);
      CHECK(f.status == Feasibility::Status::Infeasible);
    }
  }

  TEST_CASE("wreath products") {
    CHECK_FALSE(nap_wreath_check(3, 3));
    Group g = fam("dihedral_wreath:10:3");
    REQUIRE(g.order() == 3000);
    auto c = nap_wreath_check(5, 3, &g);
    REQUIRE(c);
    CHECK(c->lhs == "221");
    CHECK(c->rhs == "250");
    CHECK(*c->enumerated_di == 120);
    CHECK(*c->enumerated_dm == 1249);
    CHECK(*c->enumerated_dm_base == 91);
    CHECK_FALSE(c->formula_counts_match);
    CHECK_FALSE(c->cross_validated);
    CHECK(wreath_sylow2_elementary_abelian(g, 5, 3));
    CHECK_FALSE(verify_nap_certificate(&g, *c));

    // The search settles it directly: this group has an abelian partition.
    auto f = find_abelian_partition(g);
    REQUIRE(f.status == Feasibility::Status::Feasible);
    CHECK(verify_partition(g, *f.partition));
  }

  TEST_CASE("gamma") {
    for (unsigned n = 1; n <= 8; ++n) {
      GammaValue v = apg::gamma(n);
      INFO("n = " << n);
      CHECK(gamma_oracle(n, static_cast<unsigned>(v.gamma)));
      for (unsigned k = n + 1; k < v.gamma; ++k) CHECK_FALSE(gamma_oracle(n, k));
      CHECK(v.gamma_odd % 2 == 1);
      CHECK(gamma_oracle(n, static_cast<unsigned>(v.gamma_odd)));
      for (unsigned k = n + 1; k < v.gamma_odd; k += 1)
        if (k % 2) CHECK_FALSE(gamma_oracle(n, k));
      CHECK(gamma_inequality(n, v.gamma));
    }
    const std::uint64_t want[] = {2, 4, 7, 9, 11, 13, 15, 17};
    for (unsigned n = 1; n <= 8; ++n) CHECK(apg::gamma(n).gamma == want[n - 1]);
    CHECK(apg::gamma(2).gamma_odd == 5);
    CHECK(apg::gamma(4).gamma_odd == 9);
    auto [l, r] = gamma_sides(2, 4);
    CHECK(l == "12");
    CHECK(r == "9");
  }

  TEST_CASE("self-centralizing involutions") {
    for (auto id : {"dihedral:6", "dihedral:10", "dihedral:14", "frobenius:5:2"}) {
      Group g = fam(id);
      INFO(id);
      auto c = self_centralizing_involution(g);
      REQUIRE(c);
      REQUIRE(c->involution);
      CHECK(c->involution->kernel_is_subgroup_of_index_2);
      CHECK(c->involution->kernel_abelian);
      CHECK(c->involution->inverted);
      CHECK(c->cross_validated);
      CHECK(verify_nap_certificate(&g, *c));
      // Sylow 2-subgroup of order 2 means |G| is twice an odd number.
      CHECK(g.order() % 4 == 2);
    }
    CHECK_FALSE(self_centralizing_involution(fam("quaternion:8")));
    CHECK_FALSE(self_centralizing_involution(fam("dihedral:8")));
    CHECK_FALSE(self_centralizing_involution(fam("cyclic:2")));
  }

  TEST_CASE("NAP certificates agree with exhaustive search") {
    for (const auto& id : small_corpus()) {
      Group g = fam(id);
      if (g.order() < 2 || g.order() > 60) continue;
      NapOutcome o = certify_nap(g);
      INFO(id);
      CHECK_FALSE(o.budget_exhausted);
      const std::uint64_t t = oracle::theta(g);
      if (o.certificate) {
        CHECK(verify_nap_certificate(&g, *o.certificate));
        CHECK(t == 0);
        CHECK(exact_theta(g).value == 0);
        ThetaResult r = nap_theta_result(*o.certificate);
        CHECK(r.value == 0);
      } else {
        REQUIRE(o.partition);
        CHECK(verify_partition(g, *o.partition));
        CHECK(t > 0);
      }
    }
  }

  TEST_CASE("embedding into a NAP wreath product") {
    Group z2 = cyclic_group(2);
    NapEmbedding e = embed_in_nap(z2);
    CHECK(e.k == 5);
    CHECK(e.order == 200);
    CHECK(e.certificate.lhs == "11");
    CHECK(e.certificate.rhs == "60");
    REQUIRE(e.group);
    CHECK(e.group->order() == 200);
    // The injection is a homomorphism onto a copy of H.
    REQUIRE(e.injection.size() == 2);
    CHECK(e.injection[0] == Group::kIdentity);
    for (Elem a = 0; a < 2; ++a)
      for (Elem b = 0; b < 2; ++b)
        CHECK(e.group->mul(e.injection[a], e.injection[b]) == e.injection[z2.mul(a, b)]);
    CHECK(e.injection[1] != Group::kIdentity);
    // The arithmetic holds, but the enumerated sets do not give a witness,
    // and the group does have an abelian partition.
    CHECK(e.certificate.inequality_holds);
    CHECK_FALSE(verify_nap_certificate(&*e.group, e.certificate));
    NapOutcome o = certify_nap(*e.group);
    CHECK(o.partition);

    NapEmbedding big = embed_in_nap(fam("symmetric:3"));
    CHECK(big.k == 13);
    CHECK_FALSE(big.group);
    CHECK(big.certificate.inequality_holds);
    CHECK(big.order == 6ull * 26 * 26 * 26 * 26 * 26 * 26);
  }

  TEST_CASE("embedding into an AP group") {
    ApEmbedding e = embed_in_ap(fam("symmetric:3"));
    CHECK(e.group.order() == 12);
    CHECK(e.partition.size() == 6);
    CHECK(verify_partition(e.group, e.partition));
    ApEmbedding t = embed_in_ap(cyclic_group(1));
    CHECK(t.group.order() == 2);
    CHECK(t.partition.size() == 1);
    // The NAP group D6 x D6 sits inside an AP group.
    ApEmbedding d = embed_in_ap(dihedral_product(6, 6));
    CHECK(verify_partition(d.group, d.partition));
    CHECK(d.partition.size() == 36);
  }
}
