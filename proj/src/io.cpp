#include "apg/io.hpp"

#include <fstream>
#include <sstream>

#include "apg/error.hpp"

namespace apg {

namespace {

Json optional_u64(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<std::uint64_t> u64_or_null(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::uint64_t>();
}

Json to_json(const CountingWitness& w) { return Json{{"set", w.set}, {"mates", w.mates}}; }

CountingWitness counting_from_json(const Json& j) {
  return {j.at("set").get<std::vector<Elem>>(), j.at("mates").get<std::vector<Elem>>()};
}

}  // namespace

GroupSpec group_spec_from_json(const Json& j) {
  try {
    GroupSpec s;
    if (j.contains("family")) {
      FamilyId id;
      id.name = j.at("family").get<std::string>();
      if (j.contains("params")) id.params = j.at("params").get<std::vector<std::int64_t>>();
      s.family = std::move(id);
    } else if (j.contains("perm")) {
      PermSpec p;
      p.degree = j.at("perm").at("degree").get<std::uint32_t>();
      p.generators = j.at("perm").at("generators").get<std::vector<std::vector<std::uint32_t>>>();
      s.perm = std::move(p);
    } else {
      throw Error(ErrorCode::ParseError, "group spec needs \"family\" or \"perm\"");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const GroupSpec& s) {
  if (s.family) return Json{{"family", s.family->name}, {"params", s.family->params}};
  if (s.perm) return Json{{"perm", {{"degree", s.perm->degree}, {"generators", s.perm->generators}}}};
  return Json(nullptr);
}

GroupSpec load_group_spec(const std::string& path) {
  Json j = read_json_file(path);
  // A partition file carries its group under "group".
  if (j.contains("group")) return group_spec_from_json(j.at("group"));
  return group_spec_from_json(j);
}

Group build_group(const GroupSpec& s, const BuildOptions& opts) {
  if (s.family) return build_family(*s.family, opts);
  if (s.perm) return group_from_generators(*s.perm, opts, "perm");
  throw Error(ErrorCode::ParseError, "empty group spec");
}

std::string canonical_table(const Group& g) {
  if (!g.is_dense()) throw Error(ErrorCode::OrderCapExceeded, "no dense table for " + g.tag());
  std::ostringstream out;
  const std::size_t n = g.order();
  out << "size " << n << "\n"
      << "tag " << g.tag() << "\n";
  auto t = g.table();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << t[a * n + b];
    out << "\n";
  }
  return out.str();
}

Json to_json(const AbelianPartition& p) { return Json(p.blocks); }

AbelianPartition partition_from_json(const Json& blocks) {
  try {
    AbelianPartition p;
    p.blocks = blocks.get<std::vector<std::vector<Elem>>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json partition_file(const GroupSpec& spec, const ThetaResult& r) {
  Json j{{"group", to_json(spec)}};
  j["blocks"] = r.partition ? to_json(*r.partition) : Json::array();
  j["certificate"] = to_json(r);
  return j;
}

Json to_json(const ThetaResult& r) {
  Json j;
  j["value"] = r.value;
  j["nap"] = r.certified && r.value == 0;
  j["certified"] = r.certified;
  j["certificate"] = to_string(r.certificate);
  j["family"] = r.family;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = optional_u64(r.upper_bound);
  j["anchors"] = r.anchors;
  j["blocks"] = r.partition ? to_json(*r.partition) : Json(nullptr);
  j["counting"] = r.counting ? to_json(*r.counting) : Json(nullptr);
  j["note"] = r.note;
  return j;
}

ThetaResult theta_result_from_json(const Json& j) {
  try {
    ThetaResult r;
    r.value = j.at("value").get<std::uint64_t>();
    r.certified = j.at("certified").get<bool>();
    r.certificate = certificate_kind_from_string(j.at("certificate").get<std::string>());
    r.family = j.value("family", "");
    r.lower_bound = j.value("lower_bound", std::uint64_t{0});
    r.upper_bound = u64_or_null(j, "upper_bound");
    if (j.contains("anchors")) r.anchors = j.at("anchors").get<std::vector<Elem>>();
    if (j.contains("blocks") && !j.at("blocks").is_null()) r.partition = partition_from_json(j.at("blocks"));
    if (j.contains("counting") && !j.at("counting").is_null()) r.counting = counting_from_json(j.at("counting"));
    r.note = j.value("note", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const BoundsReport& b) {
  Json j;
  j["order"] = b.order;
  j["abelian"] = b.abelian;
  j["center_order"] = b.center_order;
  j["class_count"] = b.class_count;
  j["lb_noncommuting"] = b.lb_noncommuting;
  j["lb_noncommuting_exact"] = b.lb_noncommuting_exact;
  j["lb_classcount"] = b.lb_classcount;
  j["lb_floor"] = b.lb_floor;
  j["max_abelian_order"] = optional_u64(b.max_abelian_order);
  j["ub_max_abelian"] = optional_u64(b.ub_thm_c);
  j["ub_center_cosets"] = optional_u64(b.ub_center_cosets);
  j["best_lb"] = b.best_lb;
  j["best_ub"] = optional_u64(b.best_ub);
  j["upper_bounds_need_ap"] = b.upper_bounds_need_ap;
  return j;
}

Json to_json(const NapCertificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["params"] = c.params;
  j["inequality"] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.inequality_holds}};
  j["cross_validated"] = c.cross_validated;
  j["formula_counts_match"] = c.formula_counts_match;
  j["enumerated_di"] = optional_u64(c.enumerated_di);
  j["enumerated_dm"] = optional_u64(c.enumerated_dm);
  j["enumerated_dm_base"] = optional_u64(c.enumerated_dm_base);
  j["counting"] = c.counting ? to_json(*c.counting) : Json(nullptr);
  j["note"] = c.note;
  return j;
}

NapCertificate nap_certificate_from_json(const Json& j) {
  try {
    NapCertificate c;
    c.kind = nap_kind_from_string(j.at("kind").get<std::string>());
    c.params = j.at("params").get<std::vector<std::int64_t>>();
    c.lhs = j.at("inequality").at("lhs").get<std::string>();
    c.rhs = j.at("inequality").at("rhs").get<std::string>();
    c.inequality_holds = j.at("inequality").value("holds", false);
    c.cross_validated = j.value("cross_validated", false);
    c.formula_counts_match = j.value("formula_counts_match", false);
    c.enumerated_di = u64_or_null(j, "enumerated_di");
    c.enumerated_dm = u64_or_null(j, "enumerated_dm");
    c.enumerated_dm_base = u64_or_null(j, "enumerated_dm_base");
    if (j.contains("counting") && !j.at("counting").is_null()) c.counting = counting_from_json(j.at("counting"));
    c.note = j.value("note", "");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace apg
