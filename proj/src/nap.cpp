#include "apg/nap.hpp"

#include <algorithm>
#include <limits>
#include <boost/multiprecision/cpp_int.hpp>

#include "apg/analysis.hpp"
#include "apg/bitset.hpp"
#include "apg/construct.hpp"
#include "apg/error.hpp"
#include "apg/families.hpp"
#include "apg/field.hpp"
#include "apg/kernels.hpp"

namespace apg {

using boost::multiprecision::cpp_int;

namespace {

constexpr std::size_t kCrossCheckCap = 5'000;

cpp_int ipow(cpp_int b, std::uint64_t e) {
  cpp_int r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// k!/n! for k >= n.
cpp_int falling_ratio(std::uint64_t k, std::uint64_t n) {
  cpp_int r = 1;
  for (std::uint64_t i = n + 1; i <= k; ++i) r *= i;
  return r;
}

std::vector<Elem> mates_of(const Group& g, const std::vector<Elem>& set) {
  Bitset in_set(g.order()), acc(g.order());
  for (Elem x : set) in_set.set(x);
  for (Elem x : set)
    for (Elem y = 0; y < g.order(); ++y)
      if (!in_set.test(y) && g.commute(x, y)) acc.set(y);
  std::vector<Elem> out;
  acc.for_each([&](std::size_t v) { out.push_back(static_cast<Elem>(v)); });
  return out;
}

void validate_odd(std::int64_t k, const char* what) {
  if (k < 3 || k % 2 == 0)
    throw Error(ErrorCode::InvalidParams, std::string(what) + " must be odd and at least 3, got " + std::to_string(k));
}

// Attach enumerated sets; they witness NAP when noncommuting with fewer mates.
void attach_counts(const Group& g, NapCertificate& c, DiagonalSets sets, std::uint64_t di_formula,
                   std::uint64_t dm_formula) {
  c.enumerated_di = sets.di.size();
  c.enumerated_dm = sets.dm.size();
  c.formula_counts_match = sets.di.size() == di_formula && sets.dm.size() == dm_formula;
  CountingWitness w{std::move(sets.di), std::move(sets.dm)};
  bool noncommuting = !kernels::first_commuting_pair(g, w.set).has_value();
  if (noncommuting && check_counting_witness(g, w)) {
    c.cross_validated = true;
    c.counting = std::move(w);
  }
}

}  // namespace

std::string to_string(NapKind k) {
  switch (k) {
    case NapKind::SelfCentralizingInvolution: return "SelfCentralizingInvolution";
    case NapKind::DihedralProductCount: return "DihedralProductCount";
    case NapKind::WreathCount: return "WreathCount";
    case NapKind::FixedPointFreeCount: return "FixedPointFreeCount";
    case NapKind::HallCount: return "HallCount";
    case NapKind::Exhaustive: return "Exhaustive";
  }
  return "?";
}

NapKind nap_kind_from_string(const std::string& s) {
  for (auto k : {NapKind::SelfCentralizingInvolution, NapKind::DihedralProductCount, NapKind::WreathCount,
                 NapKind::FixedPointFreeCount, NapKind::HallCount, NapKind::Exhaustive})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown NAP certificate kind '" + s + "'");
}

std::optional<NapCertificate> self_centralizing_involution(const Group& g) {
  if (is_abelian(g)) return std::nullopt;
  auto corders = kernels::centralizer_orders(g);
  for (Elem x = 1; x < g.order(); ++x) {
    if (corders[x] != 2 || g.element_order(x) != 2) continue;
    InvolutionStructure s;
    s.involution = x;
    if (auto odd = odd_part_subgroup(g)) {
      s.kernel = *odd;
      s.kernel_is_subgroup_of_index_2 = 2 * odd->order() == g.order();
      s.kernel_abelian = is_commuting_set(g, odd->members);
      s.inverted = std::all_of(odd->members.begin(), odd->members.end(),
                               [&](Elem n) { return g.conj(n, x) == g.inv(n); });
    }
    NapCertificate c;
    c.kind = NapKind::SelfCentralizingInvolution;
    c.params = {static_cast<std::int64_t>(x)};
    // Every involution is conjugate to x and self-centralizing, so the
    // involutions share the single mate 1.
    std::vector<Elem> invs = involutions(g);
    c.lhs = "1";
    c.rhs = std::to_string(invs.size());
    c.inequality_holds = invs.size() > 1;
    CountingWitness w{invs, mates_of(g, invs)};
    c.enumerated_di = invs.size();
    c.enumerated_dm = w.mates.size();
    c.formula_counts_match = w.mates.size() == 1;
    if (check_counting_witness(g, w)) {
      c.cross_validated = true;
      c.counting = std::move(w);
    }
    c.involution = std::move(s);
    return c;
  }
  return std::nullopt;
}

DiagonalSets diagonal_sets(const Group& g) {
  std::vector<std::size_t> f = g.factor_orders();
  if (f.empty()) f = {g.order()};
  std::vector<std::size_t> stride(f.size(), 1);
  for (std::size_t i = f.size(); i-- > 1;) stride[i - 1] = stride[i] * f[i];
  std::vector<std::vector<std::size_t>> inv(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] % 2) throw Error(ErrorCode::FactorOddOrder, "factor " + std::to_string(i) + " has odd order");
    for (std::size_t c = 1; c < f[i]; ++c)
      if (g.element_order(static_cast<Elem>(c * stride[i])) == 2) inv[i].push_back(c);
  }
  DiagonalSets d;
  std::vector<std::size_t> pick(f.size(), 0);
  while (true) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < f.size(); ++i) idx += inv[i][pick[i]] * stride[i];
    d.di.push_back(static_cast<Elem>(idx));
    std::size_t i = f.size();
    while (i-- > 0) {
      if (++pick[i] < inv[i].size()) break;
      pick[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  std::sort(d.di.begin(), d.di.end());
  d.dm = mates_of(g, d.di);
  return d;
}

std::optional<NapCertificate> nap_dihedral_product(const std::vector<std::int64_t>& ks, const Group* built) {
  if (ks.empty()) throw Error(ErrorCode::InvalidParams, "empty factor list");
  cpp_int a = 1, b = 1;
  for (auto k : ks) {
    validate_odd(k, "k");
    a *= k + 1;
    b *= k;
  }
  if (!(a < 2 * b)) return std::nullopt;
  NapCertificate c;
  c.kind = NapKind::DihedralProductCount;
  c.params = ks;
  c.lhs = a.str();
  c.rhs = cpp_int(2 * b).str();
  c.inequality_holds = true;
  if (built && built->order() <= kCrossCheckCap)
    attach_counts(*built, c, diagonal_sets(*built), static_cast<std::uint64_t>(b),
                  static_cast<std::uint64_t>(a - b));
  else
    c.note = "arithmetic only";
  return c;
}

DiagonalSets wreath_nonconstant_sets(const Group& g, std::size_t k, std::size_t p) {
  const std::size_t nk = 2 * k;
  std::size_t nb = 1;
  for (std::size_t i = 0; i < p; ++i) nb *= nk;
  const std::size_t nh = g.order() / nb;
  DiagonalSets d;
  std::vector<std::size_t> digit(p, 0);  // reflection a b^digit in each coordinate
  while (true) {
    bool constant = std::all_of(digit.begin(), digit.end(), [&](std::size_t v) { return v == digit[0]; });
    if (!constant) {
      std::size_t code = 0;
      for (std::size_t i = p; i-- > 0;) code = code * nk + (k + digit[i]);
      d.di.push_back(static_cast<Elem>(code * nh));
    }
    std::size_t i = 0;
    while (i < p && ++digit[i] == k) digit[i++] = 0;
    if (i == p) break;
  }
  std::sort(d.di.begin(), d.di.end());
  d.dm = mates_of(g, d.di);
  return d;
}

bool wreath_sylow2_elementary_abelian(const Group& g, std::size_t k, std::size_t p) {
  const std::size_t nk = 2 * k;
  std::size_t nb = 1;
  for (std::size_t i = 0; i < p; ++i) nb *= nk;
  const std::size_t nh = g.order() / nb;
  std::vector<Elem> gens;
  std::size_t place = 1;
  for (std::size_t i = 0; i < p; ++i, place *= nk) gens.push_back(static_cast<Elem>(k * place * nh));
  Subgroup s = generate(g, gens);
  std::size_t two_part = 1, n = g.order();
  while (n % 2 == 0) {
    n /= 2;
    two_part *= 2;
  }
  if (s.order() != two_part) return false;
  for (Elem x : s.members)
    if (x != Group::kIdentity && g.element_order(x) != 2) return false;
  return is_commuting_set(g, s.members);
}

std::optional<NapCertificate> nap_wreath_check(std::int64_t k, std::int64_t p, const Group* built) {
  validate_odd(k, "k");
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(ErrorCode::InvalidParams, "p must be an odd prime");
  const auto up = static_cast<std::uint64_t>(p);
  cpp_int lhs = ipow(k + 1, up) + k, rhs = 2 * ipow(k, up);
  if (!(lhs < rhs)) return std::nullopt;
  NapCertificate c;
  c.kind = NapKind::WreathCount;
  c.params = {k, p};
  c.lhs = lhs.str();
  c.rhs = rhs.str();
  c.inequality_holds = true;
  if (built && built->order() <= kCrossCheckCap) {
    const auto uk = static_cast<std::size_t>(k);
    cpp_int di = ipow(k, up) - k, dm = ipow(k + 1, up) - ipow(k, up);
    DiagonalSets sets = wreath_nonconstant_sets(*built, uk, up);
    const std::size_t nh = built->order() / static_cast<std::size_t>(ipow(2 * k, up));
    const auto in_base = static_cast<std::uint64_t>(
        std::count_if(sets.dm.begin(), sets.dm.end(), [&](Elem x) { return x % nh == 0; }));
    c.enumerated_dm_base = in_base;
    const std::size_t total = sets.dm.size();
    attach_counts(*built, c, std::move(sets), static_cast<std::uint64_t>(di), static_cast<std::uint64_t>(dm));
    if (total != in_base)
      c.note = std::to_string(total - in_base) + " of " + std::to_string(total) +
               " mates lie outside the base group";
    if (!wreath_sylow2_elementary_abelian(*built, uk, up)) {
      c.cross_validated = false;
      c.note = "Sylow 2-subgroup is not elementary abelian";
    }
  } else {
    c.note = "arithmetic only";
  }
  return c;
}

bool gamma_inequality(std::uint64_t n, std::uint64_t k) {
  if (k < n) return false;
  return falling_ratio(k, n) > ipow(cpp_int(k) + 1, n) - ipow(cpp_int(k), n);
}

std::pair<std::string, std::string> gamma_sides(std::uint64_t n, std::uint64_t k) {
  return {falling_ratio(k, n).str(), cpp_int(ipow(cpp_int(k) + 1, n) - ipow(cpp_int(k), n)).str()};
}

GammaValue gamma(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidParams, "gamma needs n >= 1");
  GammaValue v;
  for (std::uint64_t k = n + 1; !v.gamma || !v.gamma_odd; ++k) {
    if (!gamma_inequality(n, k)) continue;
    if (!v.gamma) v.gamma = k;
    if (!v.gamma_odd && k % 2 == 1) v.gamma_odd = k;
  }
  return v;
}

DiagonalSets fixed_point_free_sets(const Group& g, std::size_t k, std::size_t h) {
  const std::size_t nk = 2 * k;
  std::size_t nb = 1;
  for (std::size_t i = 0; i < h; ++i) nb *= nk;
  const std::size_t nh = g.order() / nb;
  DiagonalSets d;
  std::vector<std::size_t> digit(h, 0);
  while (true) {
    std::vector<std::size_t> sorted = digit;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      std::size_t code = 0;
      for (std::size_t i = h; i-- > 0;) code = code * nk + (k + digit[i]);
      d.di.push_back(static_cast<Elem>(code * nh));
    }
    std::size_t i = 0;
    while (i < h && ++digit[i] == k) digit[i++] = 0;
    if (i == h) break;
  }
  std::sort(d.di.begin(), d.di.end());
  d.dm = mates_of(g, d.di);
  return d;
}

NapEmbedding embed_in_nap(const Group& hgrp, std::size_t order_cap) {
  const std::uint64_t h = hgrp.order();
  NapEmbedding e;
  GammaValue gv = gamma(h);
  e.k = gv.gamma_odd;
  cpp_int order = ipow(cpp_int(2 * e.k), h) * h;
  NapCertificate& c = e.certificate;
  c.kind = NapKind::FixedPointFreeCount;
  c.params = {static_cast<std::int64_t>(e.k), static_cast<std::int64_t>(h)};
  cpp_int lhs = ipow(cpp_int(e.k) + 1, h) - ipow(cpp_int(e.k), h);
  cpp_int rhs = falling_ratio(e.k, h);
  c.lhs = lhs.str();
  c.rhs = rhs.str();
  c.inequality_holds = lhs < rhs;
  // The wreath product needs a dense table, so the build stops at the
  // smaller of the cap and the dense limit.
  BuildOptions opts;
  opts.order_cap = order_cap;
  if (order > std::min<std::size_t>(order_cap, opts.dense_limit)) {
    c.note = "order " + order.str() + " is not built; certificate is arithmetic only";
    e.order = order <= std::numeric_limits<std::uint64_t>::max() ? static_cast<std::uint64_t>(order) : 0;
    return e;
  }
  e.order = static_cast<std::uint64_t>(order);
  Group base = build_family({"dihedral", {static_cast<std::int64_t>(2 * e.k)}}, opts);
  PermSpec top = regular_representation(hgrp);
  Group w = wreath_product(base, top, opts);

  // The top copy: right multiplication by x, located in the wreath's top closure.
  Group topg = group_from_generators(top, opts, "top");
  for (Elem x = 0; x < h; ++x) {
    Perm p(h);
    for (Elem y = 0; y < h; ++y) p[y] = static_cast<std::uint16_t>(hgrp.mul(y, x));
    Elem s = topg.action()->find(p);
    if (s == PermAction::npos) throw Error(ErrorCode::InvariantBroken, "top copy is missing an element");
    e.injection.push_back(s);
  }
  for (Elem a = 0; a < h; ++a)
    for (Elem b = 0; b < h; ++b)
      if (w.mul(e.injection[a], e.injection[b]) != e.injection[hgrp.mul(a, b)])
        throw Error(ErrorCode::InvariantBroken, "top copy is not a homomorphic image");

  if (e.order <= kCrossCheckCap) {
    cpp_int fp = falling_ratio(e.k, e.k - h);  // k!/(k-h)!
    attach_counts(w, c, fixed_point_free_sets(w, e.k, h), static_cast<std::uint64_t>(rhs),
                  static_cast<std::uint64_t>(lhs));
    c.note = "fixed-point-free diagonal involutions: " + std::to_string(*c.enumerated_di) +
             " enumerated (k!/(k-h)! = " + fp.str() + "), mates: " + std::to_string(*c.enumerated_dm);
  } else {
    c.note = "cross-check skipped above order 5000";
  }
  e.group = std::move(w);
  return e;
}

ApEmbedding embed_in_ap(const Group& hgrp, std::size_t order_cap) {
  BuildOptions opts;
  opts.order_cap = order_cap;
  opts.dense_limit = std::max(opts.dense_limit, 2 * hgrp.order());
  if (2 * hgrp.order() > order_cap) throw Error(ErrorCode::OrderCapExceeded, "H x Z_2 exceeds the cap");
  Group g = direct_product(hgrp, cyclic_group(2), opts);
  AbelianPartition p;
  for (Elem x = 0; x < hgrp.order(); ++x) p.blocks.push_back({2 * x, 2 * x + 1});
  canonicalize(p);
  if (Check c = verify_partition(g, p); !c) throw Error(ErrorCode::InvariantBroken, c.reason);
  return {std::move(g), std::move(p)};
}

Check verify_nap_certificate(const Group* g, const NapCertificate& c) {
  auto arithmetic = [&](const cpp_int& lhs, const cpp_int& rhs) -> Check {
    if (lhs.str() != c.lhs || rhs.str() != c.rhs) return Check::fail("inequality sides do not match the parameters");
    if (!(lhs < rhs)) return Check::fail("inequality does not hold");
    return Check::pass();
  };
  Check arith = Check::pass();
  switch (c.kind) {
    case NapKind::DihedralProductCount: {
      cpp_int a = 1, b = 1;
      for (auto k : c.params) {
        if (k < 3 || k % 2 == 0) return Check::fail("factor parameter is not odd >= 3");
        a *= k + 1;
        b *= k;
      }
      arith = arithmetic(a, 2 * b);
      break;
    }
    case NapKind::WreathCount: {
      if (c.params.size() != 2) return Check::fail("wreath certificate needs (k, p)");
      auto k = c.params[0];
      auto p = static_cast<std::uint64_t>(c.params[1]);
      arith = arithmetic(ipow(k + 1, p) + k, 2 * ipow(k, p));
      if (arith && !c.counting) return Check::fail("no enumerated counting witness");
      break;
    }
    case NapKind::FixedPointFreeCount: {
      if (c.params.size() != 2) return Check::fail("fixed-point-free certificate needs (k, h)");
      auto k = static_cast<std::uint64_t>(c.params[0]), h = static_cast<std::uint64_t>(c.params[1]);
      arith = arithmetic(ipow(cpp_int(k) + 1, h) - ipow(cpp_int(k), h), falling_ratio(k, h));
      // The arithmetic alone does not settle NAP for wreath products; the
      // enumerated witness must hold on the group.
      if (arith && !c.counting) return Check::fail("no enumerated counting witness");
      break;
    }
    case NapKind::SelfCentralizingInvolution: {
      if (!g) return Check::fail("group required");
      if (c.params.size() != 1) return Check::fail("needs the involution");
      Elem x = static_cast<Elem>(c.params[0]);
      if (x >= g->order() || g->element_order(x) != 2) return Check::fail("not an involution");
      if (centralizer(*g, x).order() != 2) return Check::fail("involution is not self-centralizing");
      if (is_abelian(*g)) return Check::fail("group is abelian");
      break;
    }
    case NapKind::HallCount:
      if (!c.counting) return Check::fail("no counting witness");
      break;
    case NapKind::Exhaustive: {
      if (!g) return Check::fail("group required");
      Feasibility f = find_abelian_partition(*g);
      if (f.status != Feasibility::Status::Infeasible) return Check::fail("exhaustive re-run did not refute");
      return Check::pass();
    }
  }
  if (!arith) return arith;
  if (g && c.counting) return check_counting_witness(*g, *c.counting);
  return Check::pass();
}

NapOutcome certify_nap(const Group& g, std::uint64_t node_budget) {
  NapOutcome out;
  if (is_abelian(g)) {
    out.partition = exact_theta(g).partition;
    return out;
  }
  if (auto c = self_centralizing_involution(g)) {
    out.certificate = std::move(c);
    return out;
  }
  Feasibility f = find_abelian_partition(g, node_budget);
  if (f.status == Feasibility::Status::Feasible) {
    out.partition = std::move(f.partition);
  } else if (f.status == Feasibility::Status::Unknown) {
    out.budget_exhausted = true;
  } else {
    NapCertificate c;
    c.inequality_holds = true;
    if (f.counting) {
      c.kind = NapKind::HallCount;
      c.lhs = std::to_string(f.counting->mates.size());
      c.rhs = std::to_string(f.counting->set.size());
      c.enumerated_di = f.counting->set.size();
      c.enumerated_dm = f.counting->mates.size();
      c.cross_validated = true;
      c.formula_counts_match = true;
      c.counting = std::move(f.counting);
    } else {
      c.kind = NapKind::Exhaustive;
      c.note = "search nodes: " + std::to_string(f.nodes);
    }
    out.certificate = std::move(c);
  }
  return out;
}

ThetaResult nap_theta_result(const NapCertificate& c) {
  ThetaResult r;
  r.value = 0;
  r.certified = true;
  r.lower_bound = 0;
  r.upper_bound = 0;
  r.counting = c.counting;
  switch (c.kind) {
    case NapKind::SelfCentralizingInvolution:
      r.certificate = CertificateKind::NapSelfCentralizing;
      r.anchors = {static_cast<Elem>(c.params.at(0))};
      break;
    case NapKind::Exhaustive:
      r.certificate = CertificateKind::NapExhaustive;
      break;
    default:
      r.certificate = CertificateKind::NapCounting;
      break;
  }
  r.note = to_string(c.kind);
  return r;
}

}  // namespace apg
