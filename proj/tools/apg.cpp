#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "apg/analysis.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/error.hpp"
#include "apg/io.hpp"
#include "apg/kernels.hpp"
#include "apg/nap.hpp"
#include "report.hpp"
#include "route.hpp"

namespace {

using namespace apg;

constexpr int kOk = 0, kRefuted = 1, kUsage = 2, kBudget = 3;

struct GroupArgs {
  std::string family;
  std::string perm;
  std::string spec;

  void add(CLI::App* app) {
    app->add_option("--family", family, "family id, e.g. dihedral:20 or psl2:7");
    app->add_option("--perm", perm, "JSON file with a permutation or family group spec");
    app->add_option("spec", spec, "group spec file (same as --perm)");
  }

  GroupSpec resolve() const {
    const int given = !family.empty() + !perm.empty() + !spec.empty();
    if (given != 1) throw Error(ErrorCode::ParseError, "give exactly one of --family, --perm or a spec file");
    if (!family.empty()) return GroupSpec{FamilyId::parse(family), std::nullopt};
    return load_group_spec(perm.empty() ? spec : perm);
  }
};

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_group(const GroupArgs& ga, bool table, const std::string& dimacs) {
  GroupSpec spec = ga.resolve();
  Group g = build_group(spec);
  if (table) {
    std::cout << canonical_table(g);
    return kOk;
  }
  Spectrum sp = spectrum(g);
  Json j;
  j["group"] = to_json(spec);
  j["tag"] = g.tag();
  j["order"] = g.order();
  j["backend"] = g.is_dense() ? "table" : "permutation";
  j["abelian"] = is_abelian(g);
  j["center_order"] = center(g).order();
  j["class_count"] = class_count(g);
  j["commuting_pairs"] = kernels::count_commuting_pairs(g);
  j["spectrum"] = sp.omega;
  j["maximal_orders"] = sp.mu;
  j["generators"] = g.generators();
  if (!dimacs.empty()) write_text_file(dimacs, to_dimacs(build_commuting_graph(g), true));
  print(j);
  return kOk;
}

int cmd_theta(const GroupArgs& ga, const std::string& mode, std::uint64_t budget, const std::string& out) {
  GroupSpec spec = ga.resolve();
  Group g = build_group(spec);
  ExactOptions opts;
  opts.node_budget = budget;
  ThetaResult r;
  std::string route = mode;
  if (mode == "auto") {
    auto routed = cli::theta_auto(g, spec.family, opts);
    r = std::move(routed.result);
    route = routed.route;
  } else if (mode == "exact") {
    r = exact_theta(g, opts);
  } else if (mode == "bounds") {
    r = cli::theta_bounds(g);
  } else if (mode == "family") {
    if (!spec.family) throw Error(ErrorCode::ParseError, "--mode family needs --family");
    r = family_theta(*spec.family, g);
  } else {
    throw Error(ErrorCode::ParseError, "unknown mode " + mode);
  }
  Json j = to_json(r);
  j["route"] = route;
  j["order"] = g.order();
  if (r.certified && r.partition) j["verified"] = static_cast<bool>(verify_certificate(g, r));
  if (!out.empty()) write_text_file(out, partition_file(spec, r).dump(2) + "\n");
  print(j);
  if (!r.certified) return mode == "bounds" ? kOk : kBudget;
  return r.value == 0 ? kRefuted : kOk;
}

int cmd_verify(const std::string& path) {
  Json file = read_json_file(path);
  if (!file.contains("group") || !file.contains("blocks"))
    throw Error(ErrorCode::ParseError, "partition file needs \"group\" and \"blocks\"");
  Group g = build_group(group_spec_from_json(file.at("group")));
  AbelianPartition p = partition_from_json(file.at("blocks"));
  Check c = verify_partition(g, p);
  Json j{{"partition", static_cast<bool>(c)}, {"blocks", p.size()}};
  if (c && file.contains("certificate")) {
    ThetaResult r = theta_result_from_json(file.at("certificate"));
    r.partition = p;
    c = verify_certificate(g, r);
    j["certificate"] = to_string(r.certificate);
    j["certificate_ok"] = static_cast<bool>(c);
  }
  j["ok"] = static_cast<bool>(c);
  j["reason"] = c.reason;
  print(j);
  return c ? kOk : kRefuted;
}

int cmd_nap(const GroupArgs& ga, std::uint64_t budget) {
  GroupSpec spec = ga.resolve();
  Group g = build_group(spec);
  Json j{{"order", g.order()}};
  Json certs = Json::array();
  bool certified = false;
  if (spec.family && spec.family->name == "dihedral_product") {
    std::vector<std::int64_t> ks;
    for (auto o : spec.family->params) ks.push_back(o / 2);
    if (auto c = nap_dihedral_product(ks, &g)) {
      certs.push_back(to_json(*c));
      certified |= static_cast<bool>(verify_nap_certificate(&g, *c));
    }
  }
  if (spec.family && spec.family->name == "dihedral_wreath" && spec.family->params.size() == 2) {
    if (auto c = nap_wreath_check(spec.family->params[0] / 2, spec.family->params[1], &g)) {
      certs.push_back(to_json(*c));
      certified |= static_cast<bool>(verify_nap_certificate(&g, *c));
    }
  }
  NapOutcome o = certify_nap(g, budget);
  if (o.certificate) {
    certs.push_back(to_json(*o.certificate));
    certified |= static_cast<bool>(verify_nap_certificate(&g, *o.certificate));
  }
  j["certificates"] = certs;
  j["abelian_partition_found"] = o.partition.has_value();
  if (o.partition) j["partition_blocks"] = o.partition->size();
  j["budget_exhausted"] = o.budget_exhausted;
  // A verified partition overrides any certificate that claims otherwise.
  const bool nap = certified && !o.partition;
  j["nap"] = nap;
  print(j);
  if (nap) return kOk;
  if (o.partition) return kRefuted;
  return o.budget_exhausted ? kBudget : kRefuted;
}

int cmd_embed(const GroupArgs& ga, bool nap, bool ap, const std::string& out) {
  if (nap == ap) throw Error(ErrorCode::ParseError, "give exactly one of --nap or --ap");
  GroupSpec spec = ga.resolve();
  Group h = build_group(spec);
  Json j{{"input_order", h.order()}};
  if (ap) {
    ApEmbedding e = embed_in_ap(h);
    Check c = verify_partition(e.group, e.partition);
    j["order"] = e.group.order();
    j["blocks"] = e.partition.size();
    j["verified"] = static_cast<bool>(c);
    if (!out.empty()) write_text_file(out, Json{{"blocks", to_json(e.partition)}}.dump(2) + "\n");
    print(j);
    return c ? kOk : kRefuted;
  }
  NapEmbedding e = embed_in_nap(h);
  j["k"] = e.k;
  j["order"] = e.order;
  j["certificate"] = to_json(e.certificate);
  j["injection"] = e.injection;
  bool verified = false, partition_found = false;
  if (e.group) {
    verified = static_cast<bool>(verify_nap_certificate(&*e.group, e.certificate));
    NapOutcome o = certify_nap(*e.group);
    partition_found = o.partition.has_value();
    if (partition_found) j["partition_blocks"] = o.partition->size();
  }
  j["certificate_verified"] = verified;
  j["abelian_partition_found"] = partition_found;
  j["nap"] = verified && !partition_found;
  print(j);
  return verified && !partition_found ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abelian partitions of finite groups"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for parallel kernels (0 = default)");

  GroupArgs group_args, theta_args, nap_args, embed_args;

  auto* group = app.add_subcommand("group", "build a group and print its invariants");
  group_args.add(group);
  bool table = false;
  std::string dimacs;
  group->add_flag("--table", table, "print the canonical multiplication table");
  group->add_option("--dimacs", dimacs, "write the noncommuting graph as a DIMACS edge list");

  auto* theta = app.add_subcommand("theta", "AP-degree with a certificate");
  theta_args.add(theta);
  std::string mode = "auto", theta_out;
  std::uint64_t budget = 20'000'000;
  theta->add_option("--mode", mode, "auto, exact, bounds or family")
      ->check(CLI::IsMember({"auto", "exact", "bounds", "family"}));
  theta->add_option("--budget", budget, "search node budget");
  theta->add_option("--out", theta_out, "write the partition file here");

  auto* verify = app.add_subcommand("verify", "re-check a partition or certificate file");
  std::string verify_path;
  verify->add_option("file", verify_path, "partition JSON")->required();

  auto* nap = app.add_subcommand("nap", "certify that a group has no abelian partition");
  nap_args.add(nap);
  std::uint64_t nap_budget = 20'000'000;
  nap->add_option("--budget", nap_budget, "search node budget");

  auto* embed = app.add_subcommand("embed", "embed a group into a NAP or an AP group");
  embed_args.add(embed);
  bool to_nap = false, to_ap = false;
  std::string embed_out;
  embed->add_flag("--nap", to_nap);
  embed->add_flag("--ap", to_ap);
  embed->add_option("--out", embed_out, "write the AP partition here");

  auto* report = app.add_subcommand("report", "recompute the reference value table");
  std::string csv, only;
  report->add_option("--csv", csv, "also write the table as CSV");
  report->add_option("--only", only, "row filter: a category (ap, nap, identity, gamma) or row ids like 1,5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  kernels::set_threads(threads);

  try {
    if (*group) return cmd_group(group_args, table, dimacs);
    if (*theta) return cmd_theta(theta_args, mode, budget, theta_out);
    if (*verify) return cmd_verify(verify_path);
    if (*nap) return cmd_nap(nap_args, nap_budget);
    if (*embed) return cmd_embed(embed_args, to_nap, to_ap, embed_out);
    if (*report) return cli::run_report(only, csv, std::cout) ? kOk : kRefuted;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SearchBudgetExceeded:
      case ErrorCode::OrderCapExceeded:
        return kBudget;
      default:
        return kUsage;
    }
  }
  return kUsage;
}
