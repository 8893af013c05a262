#pragma once

#include <optional>
#include <string>

#include "apg/families.hpp"
#include "apg/partition.hpp"

namespace apg::cli {

struct Routed {
  ThetaResult result;
  std::string route;
};

/// Auto routing, in this fixed order: abelian, named family with a closed
/// form, AC-group partition, Frobenius gluing, exact search up to
/// `exact_limit` elements, bounds only.
Routed theta_auto(const Group& g, const std::optional<FamilyId>& family,
                  const ExactOptions& opts = {}, std::size_t exact_limit = 60);

/// Bounds as a ThetaResult; certified only when the bounds meet.
ThetaResult theta_bounds(const Group& g);

}  // namespace apg::cli
