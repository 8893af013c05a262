#include "route.hpp"

#include "apg/analysis.hpp"
#include "apg/error.hpp"

namespace apg::cli {

namespace {

bool soft_failure(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::NotACGroup:
    case ErrorCode::CentralizerTooSmall:
    case ErrorCode::NotFrobenius:
    case ErrorCode::ComplementTooSmall:
    case ErrorCode::SearchBudgetExceeded:
      return true;
    default:
      return false;
  }
}

template <class F>
std::optional<ThetaResult> attempt(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (!soft_failure(e.code())) throw;
    return std::nullopt;
  }
}

}  // namespace

ThetaResult theta_bounds(const Group& g) {
  BoundsReport b = compute_bounds(g);
  ThetaResult r;
  r.lower_bound = b.best_lb;
  r.upper_bound = b.best_ub;
  r.certificate = CertificateKind::BoundsOnly;
  if (b.abelian) {
    r.value = 1;
    r.certified = true;
    r.certificate = CertificateKind::SandwichedBounds;
  } else if (b.best_ub && *b.best_ub == b.best_lb && b.lb_noncommuting_exact && b.ub_center_cosets) {
    // Center cosets exist, so the group is AP and the upper bound applies.
    r.value = b.best_lb;
    r.certified = true;
    r.certificate = CertificateKind::SandwichedBounds;
  }
  r.note = "upper bounds hold only when the group has an abelian partition";
  return r;
}

Routed theta_auto(const Group& g, const std::optional<FamilyId>& family, const ExactOptions& opts,
                  std::size_t exact_limit) {
  if (is_abelian(g)) return {exact_theta(g, opts), "abelian"};
  if (family && family_formula(*family)) {
    if (auto r = attempt([&] { return family_theta(*family, g); })) return {*r, "family"};
  }
  if (auto r = attempt([&] { return ac_partition(g); })) return {*r, "ac"};
  if (auto r = attempt([&] { return frobenius_theta(g); })) return {*r, "frobenius"};
  if (g.order() <= exact_limit) return {exact_theta(g, opts), "exact"};
  return {theta_bounds(g), "bounds"};
}

}  // namespace apg::cli
