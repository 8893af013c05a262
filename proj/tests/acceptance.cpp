// Acceptance run: one PASS/FAIL line per criterion. Each criterion checks its
// value by at least two routes that share no search code where the library
// offers more than one. Time limits are wall-clock and pinned below.
//
// usage: apg_acceptance <path to the apg executable>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "apg/analysis.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/kernels.hpp"
#include "apg/nap.hpp"
#include "apg/partition.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace apg;

namespace {

std::string g_cli;

Group fam(const std::string& s) { return build_family(FamilyId::parse(s)); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  // Records a failed expectation without stopping the criterion.
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
  void expect(const Check& c, const std::string& what) { expect(c.ok, c.ok ? what : what + " (" + c.reason + ")"); }
  void note(const std::string& s) { detail << (detail.tellp() > 0 ? "; " : "") << s; }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

int run_cli(const std::vector<std::string>& args) {
  std::string cmd = "'" + g_cli + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

void c1(Outcome& o) {
  for (const char* id : {"dihedral:8", "quaternion:8"}) {
    Group g = fam(id);
    const std::string s = id;
    ThetaResult ex = exact_theta(g);
    o.expect(ex.certified && ex.value == 3 && verify_certificate(g, ex), s + " exact gave " + num(ex.value));
    BoundsReport b = compute_bounds(g);
    o.expect(b.best_lb == 3 && b.best_ub && *b.best_ub == 3, s + " sandwich is not 3..3");
    o.expect(classify_small_theta(g) == SmallTheta::Three, s + " characterization is not Three");
    o.expect(oracle::theta(g) == 3, s + " brute force disagrees");
  }
}

void c2(Outcome& o) {
  for (int n = 2; n <= 15; ++n)
    for (const char* f : {"dihedral", "quaternion"}) {
      FamilyId id{f, {4 * n}};
      Group g = build_family(id);
      ThetaResult t = family_theta(id, g);
      const std::string s = id.str();
      o.expect(t.value == static_cast<std::uint64_t>(n + 1), s + " formula gave " + num(t.value));
      o.expect(t.certificate == CertificateKind::CentralizerMinimal &&
                   certify_minimal_via_centralizers(g, *t.partition, t.anchors),
               s + " centralizer certificate fails");
      o.expect(exact_theta(g).value == t.value, s + " exact search disagrees");
    }
}

void c3(Outcome& o) {
  Group g = fam("alternating:4");
  ThetaResult ex = exact_theta(g);
  o.expect(ex.value == 5, "exact gave " + num(ex.value));
  auto fp = frobenius_detect(g);
  o.expect(fp && fp->kernel.order() == 4 && fp->complement.order() == 3, "no V4 x| Z3 structure");
  if (fp) {
    Group h = subgroup_group(g, fp->complement, "H");
    Group n = subgroup_group(g, fp->kernel, "N");
    const std::uint64_t glued = fp->kernel.order() * exact_theta(h).value + exact_theta(n).value;
    o.expect(glued == 5, "|N| theta(H) + theta(N) = " + num(glued));
  }
  ThetaResult fr = frobenius_theta(g);
  o.expect(fr.value == 5 && verify_partition(g, *fr.partition), "Frobenius construction gave " + num(fr.value));
}

void c4(Outcome& o) {
  Group g = fam("alternating:5");
  CliqueResult c = max_noncommuting_set(g);
  o.expect(c.exact && c.size == 21, "n(G) = " + num(c.size));
  bool pairwise = c.witness.size() == c.size;
  for (std::size_t i = 0; i < c.witness.size(); ++i)
    for (std::size_t j = i + 1; j < c.witness.size(); ++j)
      pairwise = pairwise && !oracle::commute(g, c.witness[i], c.witness[j]);
  o.expect(pairwise, "clique witness has a commuting pair");
  o.expect(ac_group_check(g), "not recognised as AC");
  ThetaResult t = ac_partition(g);
  o.expect(t.value == 21 && verify_certificate(g, t), "AC partition gave " + num(t.value));
  o.expect(t.partition && verify_partition(g, *t.partition), "partition does not verify");
}

void c5(Outcome& o) {
  for (std::uint32_t q : {7u, 8u, 9u, 11u, 13u}) {
    Group g = build_family({"psl2", {q}});
    Psl2Census c;
    ThetaResult t = psl2_theta(g, q, &c);
    const std::string s = "q=" + num(q);
    o.expect(t.value == q * q + q + 1, s + " gave " + num(t.value));
    o.expect(verify_partition(g, *t.partition), s + " partition fails");
    o.expect(c.p_blocks == q + 1 && c.a_blocks == q * (q + 1) / 2 && c.b_blocks == q * (q - 1) / 2,
             s + " census " + num(c.p_blocks) + "/" + num(c.a_blocks) + "/" + num(c.b_blocks));
    o.expect(certify_minimal_via_centralizers(g, *t.partition, t.anchors), s + " certificate fails");
  }
}

void c6(Outcome& o) {
  Group g = fam("suzuki:8");
  o.expect(!g.is_dense(), "Sz(8) was not built on the permutation backend");
  SuzukiCensus c;
  ThetaResult t = suzuki_theta(g, 8, &c);
  o.expect(t.value == 4551, "constructed " + num(t.value));
  o.expect(verify_partition(g, *t.partition), "partition fails");
  o.expect(verify_certificate(g, t), "certificate fails");
  o.expect(c.sylow_split == 7, "Sylow split " + num(c.sylow_split));
  o.expect(*family_formula(FamilyId::parse("suzuki:8")) == 4551, "closed form differs");
}

void c7(Outcome& o) {
  auto path = std::filesystem::temp_directory_path() / "apg_acceptance_s3.json";
  std::ofstream(path) << R"({"perm": {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}})";
  int code = run_cli({"theta", "--mode", "exact", "--perm", path.string()});
  std::filesystem::remove(path);
  o.expect(code == 1, "CLI exit " + std::to_string(code));
  Group g = fam("symmetric:3");
  o.expect(find_abelian_partition(g).status == Feasibility::Status::Infeasible, "search found a partition");
  auto c = self_centralizing_involution(g);
  o.expect(c && verify_nap_certificate(&g, *c), "no self-centralizing involution certificate");
}

void c8(Outcome& o) {
  for (int k : {3, 5, 7, 9}) {
    Group g = build_family({"dihedral", {2 * k}});
    const std::string s = "D" + num(2 * k);
    auto c = self_centralizing_involution(g);
    o.expect(c && verify_nap_certificate(&g, *c), s + " involution certificate fails");
    o.expect(oracle::theta(g) == 0, s + " brute force found a partition");
    o.expect(exact_theta(g).value == 0, s + " exact search found a partition");
  }
}

void c9(Outcome& o) {
  Group g = fam("dihedral_product:6:6");
  o.expect(g.order() == 36, "order " + num(g.order()));
  auto c = nap_dihedral_product({3, 3}, &g);
  o.expect(c && c->lhs == "16" && c->rhs == "18", "inequality is not 16 < 18");
  o.expect(c && c->cross_validated && verify_nap_certificate(&g, *c), "counting certificate fails");
  Feasibility f = find_abelian_partition(g);
  o.expect(f.status == Feasibility::Status::Infeasible, "exhaustive search did not refute");
}

void c10(Outcome& o) {
  Group g = fam("dihedral_wreath:10:3");
  o.expect(g.order() == 3000, "order " + num(g.order()));
  auto c = nap_wreath_check(5, 3, &g);
  o.expect(c.has_value(), "inequality fails");
  if (!c) return;
  const auto di = c->enumerated_di.value_or(0), dm = c->enumerated_dm.value_or(0);
  o.expect(di == 120, "Di_nc = " + num(di));
  o.expect(dm == 91, "Dm_nc = " + num(dm) + " (" + num(c->enumerated_dm_base.value_or(0)) + " in the base)");
  o.expect(c->cross_validated && verify_nap_certificate(&g, *c), "counting certificate does not verify");
  Feasibility f = find_abelian_partition(g);
  if (f.status == Feasibility::Status::Feasible && verify_partition(g, *f.partition))
    o.note("verified abelian partition with " + num(f.partition->size()) + " blocks");
  o.expect(f.status != Feasibility::Status::Feasible, "group is AP");
}

std::vector<std::string> corpus() {
  auto all = small_corpus();
  for (const auto& s : wide_corpus()) all.push_back(s);
  return all;
}

void c11(Outcome& o) {
  auto ids = corpus();
  o.expect(ids.size() >= 25, "corpus has " + num(ids.size()) + " groups");
  for (const auto& id : ids) {
    Group g = fam(id);
    const std::uint64_t k = class_count(g), n = g.order();
    o.expect(kernels::count_commuting_pairs(g) == n * k, id + " kernel count");
    o.expect(oracle::commuting_pairs(g) == n * oracle::class_count(g), id + " brute-force count");
  }
}

// Certified AP-degree by the cheapest applicable route.
std::optional<ThetaResult> certified_theta(const std::string& id, const Group& g) {
  if (g.order() <= 60) {
    ThetaResult r = exact_theta(g);
    if (r.certified) return r;
  }
  try {
    return family_theta(FamilyId::parse(id), g);
  } catch (const Error&) {
  }
  ExactOptions opts;
  opts.node_budget = 2'000'000;
  ThetaResult r = exact_theta(g, opts);
  if (r.certified) return r;
  return std::nullopt;
}

void c12(Outcome& o) {
  int checked = 0;
  for (const auto& id : corpus()) {
    Group g = fam(id);
    auto t = certified_theta(id, g);
    if (!t || t->value == 0) continue;
    ++checked;
    BoundsReport b = compute_bounds(g);
    const std::uint64_t c = b.class_count, n = g.order();
    o.expect(b.lb_noncommuting <= t->value, id + " n(G) above theta");
    o.expect((n + c - 1) / c <= t->value, id + " class bound above theta");
    o.expect(!b.ub_thm_c || t->value <= *b.ub_thm_c, id + " theta above the abelian-subgroup bound");
    o.expect(t->partition && block_square_sum_check(g, *t->partition), id + " square sum too large");
    o.expect(t->partition && min_part_size_check(g, *t->partition), id + " least block too large");
  }
  o.expect(checked >= 20, "only " + num(checked) + " certified AP groups");
  o.note(num(checked) + " AP groups");
}

void c13(Outcome& o) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"dihedral:8", "cyclic:2"},    {"quaternion:8", "cyclic:2"},  {"dihedral:8", "cyclic:3"},
      {"quaternion:8", "cyclic:3"},  {"alternating:4", "cyclic:2"}, {"dihedral:12", "cyclic:2"},
      {"alternating:4", "cyclic:3"}, {"heisenberg:3", "cyclic:2"},  {"dihedral:16", "cyclic:2"},
      {"dihedral:8", "dihedral:8"},  {"dihedral:8", "quaternion:8"}, {"quaternion:8", "quaternion:8"},
  };
  int both = 0;
  std::vector<std::string> strict;
  for (const auto& [hs, ks] : pairs) {
    Group h = fam(hs), k = fam(ks);
    Group hk = direct_product(h, k);
    ThetaResult th = exact_theta(h), tk = exact_theta(k), thk = exact_theta(hk);
    if (!th.certified || !tk.certified || !thk.certified) continue;
    ++both;
    const std::string s = hs + " x " + ks;
    o.expect(verify_certificate(hk, thk), s + " product result does not verify");
    o.expect(thk.value <= th.value * tk.value, s + ": " + num(thk.value) + " > " + num(th.value * tk.value));
    if (thk.value < th.value * tk.value) strict.push_back(s);
  }
  o.expect(both >= 10, "only " + num(both) + " pairs certified");
  o.note(strict.empty() ? "no strict cases" : num(strict.size()) + " strict");
}

void c14(Outcome& o) {
  const std::uint64_t want[] = {2, 4, 7};
  for (std::uint64_t n = 1; n <= 3; ++n) {
    const auto k = apg::gamma(n).gamma;
    o.expect(k == want[n - 1], "gamma(" + num(n) + ") = " + num(k));
    o.expect(gamma_inequality(n, k), "inequality fails at gamma(" + num(n) + ")");
    for (std::uint64_t j = n + 1; j < k; ++j) o.expect(!gamma_inequality(n, j), "not minimal at " + num(j));
  }
  Group z2 = cyclic_group(2);
  NapEmbedding e = embed_in_nap(z2);
  o.expect(e.order == 200 && e.group, "embedding order " + num(e.order));
  if (!e.group) return;
  o.expect(e.injection.size() == 2 && e.injection[1] != Group::kIdentity &&
               e.group->mul(e.injection[1], e.injection[1]) == Group::kIdentity,
           "Z2 is not embedded");
  o.expect(verify_nap_certificate(&*e.group, e.certificate), "NAP certificate does not verify");
  NapOutcome out = certify_nap(*e.group);
  if (out.partition && verify_partition(*e.group, *out.partition))
    o.note("verified abelian partition with " + num(out.partition->size()) + " blocks");
  o.expect(!out.partition, "order-200 group is AP");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: apg_acceptance <apg executable>\n";
    return 2;
  }
  g_cli = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "D8, Q8 theta 3 by exact, sandwich and characterization", 1, c1},
      {2, "D4n, Q4n theta n+1 for n = 2..15", 10, c2},
      {3, "A4 theta 5 by exact and Frobenius gluing", 1, c3},
      {4, "A5 theta 21 = n(G) via AC partition", 30, c4},
      {5, "L2(q) theta q^2+q+1 with census, q = 7..13", 300, c5},
      {6, "Sz(8) theta 4551 on the permutation backend", 1200, c6},
      {7, "S3 NAP by search (CLI exit 1) and involution", 1, c7},
      {8, "D2k NAP for k = 3, 5, 7, 9", 5, c8},
      {9, "D6 x D6 NAP by counting and search", 120, c9},
      {10, "D10 wr Z3 NAP by wreath counting 120 > 91", 60, c10},
      {11, "commuting pairs = |G| c(G) over the corpus", 10, c11},
      {12, "bound sandwich and square sums over the corpus", 60, c12},
      {13, "theta(H x K) <= theta(H) theta(K) on 12 pairs", 60, c13},
      {14, "gamma(1..3) = 2, 4, 7 and NAP embedding of Z2", 1, c14},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note(std::string("threw: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) {
      o.ok = false;
      o.note("took " + std::to_string(s) + " s, limit " + std::to_string(c.limit_s) + " s");
    }
    failed += !o.ok;
    std::printf("%s %2d  %-56s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
