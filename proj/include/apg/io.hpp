#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "apg/construct.hpp"
#include "apg/families.hpp"
#include "apg/group.hpp"
#include "apg/nap.hpp"
#include "apg/partition.hpp"

namespace apg {

using Json = nlohmann::ordered_json;

/// Either {"family": name, "params": [...]} or
/// {"perm": {"degree": n, "generators": [[...], ...]}}.
struct GroupSpec {
  std::optional<FamilyId> family;
  std::optional<PermSpec> perm;
};

GroupSpec group_spec_from_json(const Json& j);
Json to_json(const GroupSpec& s);
GroupSpec load_group_spec(const std::string& path);
Group build_group(const GroupSpec& s, const BuildOptions& opts = {});

/// "size", "tag" and the table row-major, one row per line.
std::string canonical_table(const Group& g);

Json to_json(const AbelianPartition& p);
AbelianPartition partition_from_json(const Json& blocks);

/// Partition file: {"group": spec, "blocks": [[...], ...]} plus, when
/// written from a ThetaResult, the certificate fields.
Json partition_file(const GroupSpec& spec, const ThetaResult& r);

Json to_json(const ThetaResult& r);
/// Inverse of to_json(ThetaResult) over the fields it writes.
ThetaResult theta_result_from_json(const Json& j);

Json to_json(const BoundsReport& b);
Json to_json(const NapCertificate& c);
NapCertificate nap_certificate_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace apg
