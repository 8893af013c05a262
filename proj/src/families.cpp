#include "apg/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "apg/analysis.hpp"
#include "apg/commuting_graph.hpp"
#include "apg/error.hpp"
#include "apg/field.hpp"
#include "apg/kernels.hpp"

namespace apg {

namespace {

std::int64_t param(const FamilyId& id, std::size_t i) {
  if (i >= id.params.size())
    throw Error(ErrorCode::InvalidParams, id.name + " needs " + std::to_string(i + 1) + " parameter(s)");
  return id.params[i];
}

void expect_params(const FamilyId& id, std::size_t n) {
  if (id.params.size() != n)
    throw Error(ErrorCode::InvalidParams,
                id.name + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(id.params.size()));
}

Group dihedral(std::size_t order) {
  const std::size_t m = order / 2;
  std::vector<Elem> t(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t e = x / m, i = x % m;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t f = y / m, j = y % m;
      // b^i a = a b^-i
      const std::size_t out = f == 0 ? e * m + (i + j) % m : (1 - e) * m + (j + m - i) % m;
      t[x * order + y] = static_cast<Elem>(out);
    }
  }
  Group g = Group::from_table(order, std::move(t), "dihedral:" + std::to_string(order));
  g.set_generators({static_cast<Elem>(m), m > 1 ? Elem{1} : Elem{0}});
  return g;
}

Group quaternion(std::size_t order) {
  const std::size_t m = order / 2, n = m / 2;  // b has order 2n = m, a^2 = b^n
  std::vector<Elem> t(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t e = x / m, i = x % m;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t f = y / m, j = y % m;
      std::size_t out;
      if (f == 0)
        out = e * m + (i + j) % m;
      else if (e == 0)
        out = m + (j + m - i) % m;
      else
        out = (n + j + m - i) % m;
      t[x * order + y] = static_cast<Elem>(out);
    }
  }
  Group g = Group::from_table(order, std::move(t), "quaternion:" + std::to_string(order));
  g.set_generators({static_cast<Elem>(m), 1});
  return g;
}

Group heisenberg(std::uint32_t p) {
  const std::size_t n = static_cast<std::size_t>(p) * p * p;
  auto idx = [p](std::size_t a, std::size_t b, std::size_t c) { return a + p * (b + p * c); };
  std::vector<Elem> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      t[x * n + y] = static_cast<Elem>(idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p));
    }
  }
  Group g = Group::from_table(n, std::move(t), "heisenberg:" + std::to_string(p));
  g.set_generators({static_cast<Elem>(idx(1, 0, 0)), static_cast<Elem>(idx(0, 1, 0))});
  return g;
}

std::vector<std::uint32_t> cycle_perm(std::uint32_t degree, const std::vector<std::uint32_t>& cycle) {
  std::vector<std::uint32_t> p(degree);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

PermSpec symmetric_spec(std::uint32_t n) {
  PermSpec s{n, {}};
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  s.generators.push_back(cycle_perm(n, {0, 1}));
  s.generators.push_back(cycle_perm(n, all));
  return s;
}

PermSpec alternating_spec(std::uint32_t n) {
  PermSpec s{n, {}};
  for (std::uint32_t i = 2; i < n; ++i) s.generators.push_back(cycle_perm(n, {0, 1, i}));
  return s;
}

// Mobius action of 2x2 matrices on the projective line, row-vector
// convention: (x, 1) [[a, b], [c, d]] = (ax + c, bx + d). Point q is infinity.
PermSpec psl2_spec(const Field& f) {
  const std::uint32_t q = f.size(), inf = q;
  auto mobius = [&](FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
    std::vector<std::uint32_t> img(q + 1);
    for (std::uint32_t x = 0; x <= q; ++x) {
      FieldElem num, den;
      if (x == inf) {
        num = a;
        den = b;
      } else {
        num = f.add(f.mul(a, x), c);
        den = f.add(f.mul(b, x), d);
      }
      img[x] = den == 0 ? inf : f.div(num, den);
    }
    return img;
  };
  const FieldElem w = f.primitive(), one = 1, zero = 0;
  PermSpec s{q + 1, {}};
  s.generators.push_back(mobius(one, zero, one, one));                  // x + 1
  if (f.degree() > 1) s.generators.push_back(mobius(one, zero, w, one));  // x + w
  s.generators.push_back(mobius(w, zero, zero, f.inv(w)));              // w^2 x
  s.generators.push_back(mobius(zero, one, f.neg(one), zero));          // -1/x
  return s;
}

// Sz(q) on the q^2 + 1 points of the ovoid, generated by T(1,0), T(0,1),
// M(primitive) and the antidiagonal W, acting on row vectors.
PermSpec suzuki_spec(const Field& f) {
  using Mat = std::array<std::array<FieldElem, 4>, 4>;
  const std::uint32_t q = f.size();
  const std::uint32_t n = (f.degree() - 1) / 2;
  auto th = [&](FieldElem x) { return f.suzuki_twist(x); };
  auto T = [&](FieldElem a, FieldElem b) {
    Mat m{};
    m[0] = {1, 0, 0, 0};
    m[1] = {a, 1, 0, 0};
    m[2] = {b, th(a), 1, 0};
    FieldElem r30 = f.add(f.add(f.mul(f.mul(a, a), th(a)), f.mul(a, b)), th(b));
    m[3] = {r30, f.add(f.mul(a, th(a)), b), a, 1};
    return m;
  };
  const std::int64_t e = std::int64_t{1} << n;
  const FieldElem k = f.primitive();
  Mat M{}, W{};
  M[0][0] = f.pow(k, 1 + e);
  M[1][1] = f.pow(k, e);
  M[2][2] = f.pow(k, -e);
  M[3][3] = f.pow(k, -1 - e);
  for (int i = 0; i < 4; ++i) W[i][3 - i] = 1;
  std::vector<Mat> gens{T(1, 0), T(0, 1), M, W};

  using Vec = std::array<FieldElem, 4>;
  auto normalize = [&](Vec v) {
    for (FieldElem c : v)
      if (c != 0) {
        FieldElem inv = f.inv(c);
        for (auto& x : v) x = f.mul(x, inv);
        break;
      }
    return v;
  };
  auto apply = [&](const Vec& v, const Mat& m) {
    Vec out{};
    for (int j = 0; j < 4; ++j) {
      FieldElem acc = 0;
      for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(v[i], m[i][j]));
      out[j] = acc;
    }
    return normalize(out);
  };
  auto key = [q](const Vec& v) {
    return static_cast<std::uint64_t>(v[0]) + q * (v[1] + static_cast<std::uint64_t>(q) * (v[2] + q * static_cast<std::uint64_t>(v[3])));
  };
  std::vector<Vec> pts{Vec{0, 0, 0, 1}};
  std::unordered_map<std::uint64_t, std::uint32_t> index{{key(pts[0]), 0}};
  for (std::size_t h = 0; h < pts.size(); ++h)
    for (const auto& m : gens) {
      Vec w = apply(pts[h], m);
      if (index.try_emplace(key(w), static_cast<std::uint32_t>(pts.size())).second) pts.push_back(w);
    }
  if (pts.size() != static_cast<std::size_t>(q) * q + 1)
    throw Error(ErrorCode::InvariantBroken, "Suzuki ovoid has " + std::to_string(pts.size()) + " points");
  PermSpec s{static_cast<std::uint32_t>(pts.size()), {}};
  for (const auto& m : gens) {
    std::vector<std::uint32_t> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) img[i] = index.at(key(apply(pts[i], m)));
    s.generators.push_back(std::move(img));
  }
  return s;
}

PermSpec affine_spec(const Field& f, std::uint32_t r) {
  const std::uint32_t q = f.size();
  PermSpec s{q, {}};
  std::uint32_t basis = 1;
  for (std::uint32_t i = 0; i < f.degree(); ++i, basis *= f.characteristic()) {
    std::vector<std::uint32_t> img(q);
    for (std::uint32_t x = 0; x < q; ++x) img[x] = f.add(x, basis);
    s.generators.push_back(std::move(img));
  }
  const FieldElem z = f.exp((q - 1) / r);
  std::vector<std::uint32_t> img(q);
  for (std::uint32_t x = 0; x < q; ++x) img[x] = f.mul(z, x);
  s.generators.push_back(std::move(img));
  return s;
}

// Construction cache for permutation-backed groups: raw element images plus
// generator indices, keyed by tag under $APG_CACHE_DIR.
std::optional<std::filesystem::path> cache_path(const std::string& tag) {
  const char* dir = std::getenv("APG_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::string name = tag;
  for (auto& c : name)
    if (c == ':' || c == '/' || c == ',') c = '_';
  return std::filesystem::path(dir) / (name + ".perm");
}

std::optional<Group> cache_load(const std::string& tag, std::size_t expect_order) {
  auto path = cache_path(tag);
  if (!path || !std::filesystem::exists(*path)) return std::nullopt;
  std::ifstream in(*path, std::ios::binary);
  char magic[8];
  std::uint32_t deg = 0, count = 0, ngen = 0;
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != "APGPERM1") return std::nullopt;
  in.read(reinterpret_cast<char*>(&deg), 4);
  in.read(reinterpret_cast<char*>(&count), 4);
  in.read(reinterpret_cast<char*>(&ngen), 4);
  if (!in || count != expect_order) return std::nullopt;
  std::vector<Elem> gens(ngen);
  in.read(reinterpret_cast<char*>(gens.data()), static_cast<std::streamsize>(ngen * sizeof(Elem)));
  std::vector<Perm> elems(count, Perm(deg));
  for (auto& p : elems) in.read(reinterpret_cast<char*>(p.data()), static_cast<std::streamsize>(deg * 2));
  if (!in) return std::nullopt;
  auto action = std::make_shared<PermAction>(deg, std::move(elems));
  Group g = Group::from_action(std::move(action), tag, false);
  g.set_generators(std::move(gens));
  return g;
}

void cache_store(const Group& g) {
  auto path = cache_path(g.tag());
  if (!path || !g.action()) return;
  std::error_code ec;
  std::filesystem::create_directories(path->parent_path(), ec);
  auto tmp = *path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    const std::uint32_t deg = g.action()->degree(), count = static_cast<std::uint32_t>(g.order()),
                        ngen = static_cast<std::uint32_t>(g.generators().size());
    out.write("APGPERM1", 8);
    out.write(reinterpret_cast<const char*>(&deg), 4);
    out.write(reinterpret_cast<const char*>(&count), 4);
    out.write(reinterpret_cast<const char*>(&ngen), 4);
    out.write(reinterpret_cast<const char*>(g.generators().data()),
              static_cast<std::streamsize>(ngen * sizeof(Elem)));
    for (Elem x = 0; x < count; ++x)
      out.write(reinterpret_cast<const char*>(g.action()->perm(x).data()), static_cast<std::streamsize>(deg * 2));
  }
  std::filesystem::rename(tmp, *path, ec);
}

Group from_spec_checked(const PermSpec& spec, const BuildOptions& opts, const std::string& tag,
                        std::uint64_t expect) {
  if (expect > opts.order_cap)
    throw Error(ErrorCode::OrderCapExceeded,
                tag + " has order " + std::to_string(expect) + " above cap " + std::to_string(opts.order_cap));
  const bool cacheable = expect > opts.dense_limit;
  if (cacheable)
    if (auto hit = cache_load(tag, expect)) return std::move(*hit);
  Group g = group_from_generators(spec, opts, tag);
  if (g.order() != expect)
    throw Error(ErrorCode::InvariantBroken,
                tag + ": built order " + std::to_string(g.order()) + ", expected " + std::to_string(expect));
  if (cacheable) cache_store(g);
  return g;
}

Group product_of(const std::vector<Group>& parts, const BuildOptions& opts) {
  Group acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, parts[i], opts);
  return acc;
}

std::uint32_t checked_prime_power(std::int64_t q, const std::string& what) {
  if (q < 2 || q > static_cast<std::int64_t>(Field::kMaxSize) || !prime_power(static_cast<std::uint64_t>(q)))
    throw Error(ErrorCode::InvalidParams, what + " needs a prime power q, got " + std::to_string(q));
  return static_cast<std::uint32_t>(q);
}

struct BlockWithAnchor {
  std::vector<Elem> block;
  Elem anchor;
};

ThetaResult finish(const Group& g, std::vector<BlockWithAnchor> parts, CertificateKind kind,
                   const std::string& family, bool strict) {
  for (auto& p : parts) std::sort(p.block.begin(), p.block.end());
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.block < b.block; });
  ThetaResult r;
  AbelianPartition p;
  for (auto& x : parts) {
    p.blocks.push_back(std::move(x.block));
    r.anchors.push_back(x.anchor);
  }
  if (Check c = verify_partition(g, p); !c)
    throw Error(ErrorCode::InvariantBroken, family + " partition fails: " + c.reason);
  if (Check c = check_noncommuting_anchors(g, p, r.anchors); !c)
    throw Error(ErrorCode::InvariantBroken, family + " anchors fail: " + c.reason);
  if (strict)
    if (Check c = certify_minimal_via_centralizers(g, p, r.anchors); !c)
      throw Error(ErrorCode::AnchorMismatch, family + ": " + c.reason);
  r.value = p.size();
  r.partition = std::move(p);
  r.certified = true;
  r.certificate = kind;
  r.family = family;
  r.lower_bound = r.value;
  r.upper_bound = r.value;
  return r;
}

ThetaResult abelian_result(const Group& g, const std::string& family) {
  if (g.order() == 1) {
    ThetaResult r = exact_theta(g);
    r.family = family;
    return r;
  }
  ThetaResult r;
  AbelianPartition p;
  p.blocks.emplace_back(g.order());
  std::iota(p.blocks[0].begin(), p.blocks[0].end(), Elem{0});
  r.value = 1;
  r.partition = std::move(p);
  r.certified = true;
  r.certificate = CertificateKind::FamilyFormula;
  r.family = family;
  r.lower_bound = 1;
  r.upper_bound = 1;
  return r;
}

// D_4n and Q_4n: A_1 = <b>, A_i = {ab^(i-2), ab^(n+i-2)}.
ThetaResult dq_theta(const Group& g, std::size_t order, const std::string& family) {
  const std::size_t m = order / 2, n = order / 4;
  std::vector<BlockWithAnchor> parts;
  BlockWithAnchor first{{}, 1};
  for (std::size_t i = 0; i < m; ++i) first.block.push_back(static_cast<Elem>(i));
  parts.push_back(std::move(first));
  for (std::size_t i = 2; i <= n + 1; ++i) {
    const Elem x = static_cast<Elem>(m + i - 2), y = static_cast<Elem>(m + n + i - 2);
    parts.push_back({{x, y}, x});
  }
  return finish(g, std::move(parts), CertificateKind::CentralizerMinimal, family, true);
}

Elem first_of_order(const Group& g, const std::vector<std::uint32_t>& orders, std::uint32_t k) {
  for (Elem x = 0; x < g.order(); ++x)
    if (orders[x] == k) return x;
  throw Error(ErrorCode::InvariantBroken, "no element of order " + std::to_string(k));
}

// Conjugates of a cyclic TI subgroup <a>, identity removed, anchored at the
// conjugated generator.
void add_cyclic_conjugates(const Group& g, Elem a, std::vector<BlockWithAnchor>& parts,
                           std::size_t* count, std::size_t expect_normalizer) {
  Subgroup h = generate(g, {a});
  Subgroup nh = normalizer(g, h);
  if (expect_normalizer && nh.order() != expect_normalizer)
    throw Error(ErrorCode::InvariantBroken, "normalizer of a cyclic torus has order " + std::to_string(nh.order()) +
                                                ", expected " + std::to_string(expect_normalizer));
  std::vector<char> covered(g.order(), 0);
  for (Elem u = 0; u < g.order(); ++u) {
    if (covered[u]) continue;
    for (Elem y : nh.members) covered[g.mul(y, u)] = 1;
    BlockWithAnchor b{{}, g.conj(a, u)};
    for (Elem x : h.members)
      if (x != Group::kIdentity) b.block.push_back(g.conj(x, u));
    parts.push_back(std::move(b));
    if (count) ++*count;
  }
}

}  // namespace

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t m = 0;
    while (q % p == 0) {
      q /= p;
      ++m;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), m);
  }
  return std::make_pair(static_cast<std::uint32_t>(q), 1u);
}

FamilyId FamilyId::parse(const std::string& text) {
  FamilyId id;
  std::string cur;
  std::vector<std::string> tokens;
  for (char c : text) {
    if (c == ':' || c == ',') {
      tokens.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  tokens.push_back(cur);
  if (tokens.empty() || tokens[0].empty()) throw Error(ErrorCode::ParseError, "empty family name");
  id.name = tokens[0];
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    try {
      std::size_t used = 0;
      id.params.push_back(std::stoll(tokens[i], &used));
      if (used != tokens[i].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad family parameter '" + tokens[i] + "' in '" + text + "'");
    }
  }
  return id;
}

std::string FamilyId::str() const {
  std::string s = name;
  for (auto p : params) s += ":" + std::to_string(p);
  return s;
}

Group build_family(const FamilyId& id, const BuildOptions& opts) {
  const std::string& nm = id.name;
  Group g = [&]() -> Group {
    if (nm == "cyclic") {
      expect_params(id, 1);
      if (param(id, 0) < 1) throw Error(ErrorCode::InvalidParams, "cyclic order must be positive");
      return cyclic_group(static_cast<std::size_t>(param(id, 0)));
    }
    if (nm == "abelian") {
      if (id.params.empty()) throw Error(ErrorCode::InvalidParams, "abelian needs cyclic factor orders");
      std::vector<Group> parts;
      for (auto k : id.params) {
        if (k < 1) throw Error(ErrorCode::InvalidParams, "factor orders must be positive");
        parts.push_back(cyclic_group(static_cast<std::size_t>(k)));
      }
      return product_of(parts, opts);
    }
    if (nm == "dihedral") {
      expect_params(id, 1);
      auto o = param(id, 0);
      if (o < 4 || o % 2) throw Error(ErrorCode::InvalidParams, "dihedral order must be even and at least 4");
      if (static_cast<std::uint64_t>(o) > opts.dense_limit) throw Error(ErrorCode::OrderCapExceeded, "dihedral order too large");
      return dihedral(static_cast<std::size_t>(o));
    }
    if (nm == "quaternion") {
      expect_params(id, 1);
      auto o = param(id, 0);
      if (o < 8 || o % 4) throw Error(ErrorCode::InvalidParams, "quaternion order must be divisible by 4 and at least 8");
      if (static_cast<std::uint64_t>(o) > opts.dense_limit) throw Error(ErrorCode::OrderCapExceeded, "quaternion order too large");
      return quaternion(static_cast<std::size_t>(o));
    }
    if (nm == "heisenberg") {
      expect_params(id, 1);
      auto p = param(id, 0);
      if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)) || p > 17)
        throw Error(ErrorCode::InvalidParams, "heisenberg needs a prime p <= 17");
      return heisenberg(static_cast<std::uint32_t>(p));
    }
    if (nm == "symmetric" || nm == "alternating") {
      expect_params(id, 1);
      auto n = param(id, 0);
      if (n < 2 || n > 9) throw Error(ErrorCode::InvalidParams, nm + " degree must be in [2, 9]");
      std::uint64_t order = 1;
      for (std::int64_t i = 2; i <= n; ++i) order *= static_cast<std::uint64_t>(i);
      if (nm == "alternating") {
        if (n < 3) throw Error(ErrorCode::InvalidParams, "alternating degree must be at least 3");
        order /= 2;
      }
      auto spec = nm == "symmetric" ? symmetric_spec(static_cast<std::uint32_t>(n))
                                    : alternating_spec(static_cast<std::uint32_t>(n));
      return from_spec_checked(spec, opts, id.str(), order);
    }
    if (nm == "psl2") {
      expect_params(id, 1);
      const std::uint32_t q = checked_prime_power(param(id, 0), "psl2");
      auto [p, m] = *prime_power(q);
      const std::uint64_t d = q % 2 ? 2 : 1;
      const std::uint64_t order = static_cast<std::uint64_t>(q) * (static_cast<std::uint64_t>(q) * q - 1) / d;
      return from_spec_checked(psl2_spec(Field::build(p, m)), opts, id.str(), order);
    }
    if (nm == "suzuki") {
      expect_params(id, 1);
      auto q = param(id, 0);
      auto pp = q >= 8 ? prime_power(static_cast<std::uint64_t>(q)) : std::nullopt;
      if (!pp || pp->first != 2 || pp->second % 2 == 0)
        throw Error(ErrorCode::InvalidParams, "suzuki needs q = 2^(2n+1) >= 8");
      const std::uint64_t uq = static_cast<std::uint64_t>(q);
      const std::uint64_t order = uq * uq * (uq - 1) * (uq * uq + 1);
      if (order > opts.order_cap)
        throw Error(ErrorCode::OrderCapExceeded, "Sz(" + std::to_string(q) + ") has order " + std::to_string(order));
      return from_spec_checked(suzuki_spec(Field::build(2, pp->second)), opts, id.str(), order);
    }
    if (nm == "frobenius") {
      expect_params(id, 2);
      const std::uint32_t q = checked_prime_power(param(id, 0), "frobenius");
      auto r = param(id, 1);
      if (r < 2 || (q - 1) % r != 0)
        throw Error(ErrorCode::InvalidParams, "frobenius:q:r needs r >= 2 dividing q - 1");
      auto [p, m] = *prime_power(q);
      return from_spec_checked(affine_spec(Field::build(p, m), static_cast<std::uint32_t>(r)), opts, id.str(),
                               static_cast<std::uint64_t>(q) * r);
    }
    if (nm == "dihedral_product") {
      if (id.params.empty()) throw Error(ErrorCode::InvalidParams, "dihedral_product needs factor orders");
      std::vector<Group> parts;
      for (auto o : id.params) parts.push_back(build_family({"dihedral", {o}}, opts));
      return product_of(parts, opts);
    }
    if (nm == "dihedral_wreath") {
      expect_params(id, 2);
      auto p = param(id, 1);
      if (p < 1 || p > 16) throw Error(ErrorCode::InvalidParams, "wreath degree must be in [1, 16]");
      Group base = build_family({"dihedral", {param(id, 0)}}, opts);
      std::vector<std::uint32_t> all(static_cast<std::size_t>(p));
      std::iota(all.begin(), all.end(), 0u);
      PermSpec top{static_cast<std::uint32_t>(p), {cycle_perm(static_cast<std::uint32_t>(p), all)}};
      return wreath_product(base, top, opts);
    }
    throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + nm + "'");
  }();
  g.set_tag(id.str());
  return g;
}

std::optional<std::uint64_t> family_formula(const FamilyId& id) {
  const auto& nm = id.name;
  auto p0 = [&] { return static_cast<std::uint64_t>(param(id, 0)); };
  if (nm == "cyclic" || nm == "abelian") return p0() == 1 && id.params.size() == 1 ? 0 : 1;
  if (nm == "dihedral") {
    auto o = p0();
    if (o == 4) return 1;
    if (o % 4 == 0) return o / 4 + 1;
    return 0;
  }
  if (nm == "quaternion") return p0() / 4 + 1;
  if (nm == "heisenberg") return p0() + 1;
  if (nm == "psl2") {
    auto q = p0();
    if (q == 2) return 0;
    if (q == 3) return 5;
    if (q == 4 || q == 5) return 21;
    return q * q + q + 1;
  }
  if (nm == "suzuki") {
    auto q = p0();
    return q * q * q * q + q * q * q - q * q + q - 1;
  }
  if (nm == "frobenius") {
    if (param(id, 1) < 3) return 0;
    return p0() + 1;
  }
  if (nm == "alternating") {
    auto n = p0();
    if (n == 3) return 1;
    if (n == 4) return 5;
    if (n == 5) return 21;
  }
  if (nm == "symmetric") {
    auto n = p0();
    if (n == 2) return 1;
    if (n == 3) return 0;
  }
  if (nm == "dihedral_product") {
    // Products of D_2k with k odd: NAP when prod(k+1) < 2 prod(k).
    std::uint64_t a = 1, b = 1;
    for (auto o : id.params) {
      if (o % 4 != 2 || o < 6) return std::nullopt;
      a *= static_cast<std::uint64_t>(o / 2 + 1);
      b *= static_cast<std::uint64_t>(o / 2);
    }
    if (a < 2 * b) return 0;
  }
  return std::nullopt;
}

ThetaResult family_theta(const FamilyId& id) { return family_theta(id, build_family(id)); }

ThetaResult family_theta(const FamilyId& id, const Group& g) {
  const auto& nm = id.name;
  const std::string fam = id.str();
  auto unsupported = [&](const std::string& why) {
    return Error(ErrorCode::UnsupportedFamily, fam + ": " + why);
  };
  if (nm == "cyclic" || nm == "abelian") return abelian_result(g, fam);
  if (nm == "dihedral" || nm == "quaternion") {
    const auto o = static_cast<std::size_t>(param(id, 0));
    if (o == 4) return abelian_result(g, fam);
    if (o % 4 != 0) throw unsupported("dihedral groups of order 2k with k odd are NAP; use the NAP certifier");
    return dq_theta(g, o, fam);
  }
  if (nm == "heisenberg") {
    auto r = ac_partition(g);
    r.family = fam;
    return r;
  }
  if (nm == "psl2") {
    auto q = static_cast<std::uint32_t>(param(id, 0));
    if (q <= 3) throw unsupported("no closed-form partition for q <= 3; use exact search");
    if (q <= 5) {
      auto r = ac_partition(g);
      r.family = fam;
      return r;
    }
    return psl2_theta(g, q);
  }
  if (nm == "suzuki") return suzuki_theta(g, static_cast<std::uint32_t>(param(id, 0)));
  if (nm == "frobenius") {
    auto r = frobenius_theta(g);
    r.family = fam;
    return r;
  }
  if (nm == "alternating") {
    auto n = param(id, 0);
    if (n == 3) return abelian_result(g, fam);
    if (n == 4) {
      auto r = frobenius_theta(g);
      r.family = fam;
      return r;
    }
    if (n == 5) {
      auto r = ac_partition(g);
      r.family = fam;
      return r;
    }
  }
  if (nm == "symmetric" && param(id, 0) == 2) return abelian_result(g, fam);
  throw unsupported("no closed form");
}

bool ac_group_check(const Group& g) {
  Subgroup z = center(g);
  for (const auto& cls : conjugacy_classes(g)) {
    Elem x = cls.front();
    if (z.contains(x)) continue;
    if (!is_commuting_set(g, centralizer(g, x).members)) return false;
  }
  return true;
}

ThetaResult ac_partition(const Group& g) {
  if (!ac_group_check(g)) throw Error(ErrorCode::NotACGroup, "some noncentral centralizer is nonabelian");
  if (is_abelian(g)) throw Error(ErrorCode::NotACGroup, "group is abelian");
  auto orders = kernels::centralizer_orders(g);
  for (Elem x = 0; x < g.order(); ++x)
    if (orders[x] < 3)
      throw Error(ErrorCode::CentralizerTooSmall,
                  "element " + std::to_string(x) + " has a centralizer of order " + std::to_string(orders[x]));
  CliqueOptions co;
  co.max_order = std::max<std::size_t>(co.max_order, g.order());
  CliqueResult clique = max_noncommuting_set(g, co);
  if (!clique.exact) throw Error(ErrorCode::SearchBudgetExceeded, "n(G) search did not finish");
  Subgroup z = center(g);
  std::vector<BlockWithAnchor> parts;
  bool first = true;
  // The anchor whose centralizer holds the identity block goes first.
  for (Elem x : clique.witness) {
    Subgroup c = centralizer(g, x);
    BlockWithAnchor b{{}, x};
    if (first)
      b.block = c.members;
    else
      std::set_difference(c.members.begin(), c.members.end(), z.members.begin(), z.members.end(),
                          std::back_inserter(b.block));
    first = false;
    parts.push_back(std::move(b));
  }
  auto r = finish(g, std::move(parts), CertificateKind::CentralizerMinimal, "ac", true);
  return r;
}

std::vector<std::vector<Elem>> conjugates_by_transversal(const Group& g, const Subgroup& h,
                                                         const Subgroup& nh) {
  std::vector<std::vector<Elem>> out;
  std::vector<char> covered(g.order(), 0);
  for (Elem u = 0; u < g.order(); ++u) {
    if (covered[u]) continue;
    for (Elem y : nh.members) covered[g.mul(y, u)] = 1;
    std::vector<Elem> c;
    for (Elem x : h.members) c.push_back(g.conj(x, u));
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<FrobeniusPair> frobenius_detect(const Group& g) {
  const std::size_t n = g.order();
  if (n > 20'000) throw Error(ErrorCode::SearchBudgetExceeded, "Frobenius detection limited to order 20000");
  std::set<std::vector<Elem>> tried;
  for (Elem x = 1; x < n; ++x) {
    Subgroup cx = centralizer(g, x);
    std::vector<Subgroup> cands{cx};
    Subgroup cyc = generate(g, {x});
    cands.push_back(normalizer(g, cyc));
    for (const Subgroup& h : cands) {
      const std::size_t k = h.order();
      if (k <= 1 || k >= n || n % k) continue;
      if ((n / k - 1) % k) continue;  // |H| divides |N| - 1
      if (!tried.insert(h.members).second) continue;
      std::vector<char> in_h(n, 0);
      for (Elem y : h.members) in_h[y] = 1;
      std::vector<char> covered(n, 0), in_union(n, 0);
      bool ti = true;
      for (Elem u = 0; u < n && ti; ++u) {
        if (covered[u]) continue;
        for (Elem y : h.members) covered[g.mul(y, u)] = 1;
        for (Elem y : h.members) {
          Elem c = g.conj(y, u);
          if (c != Group::kIdentity && in_h[c] && !in_h[u]) {
            ti = false;
            break;
          }
          in_union[c] = 1;
        }
      }
      if (!ti) continue;
      std::vector<Elem> kernel{Group::kIdentity};
      for (Elem y = 1; y < n; ++y)
        if (!in_union[y]) kernel.push_back(y);
      if (kernel.size() != n / k || !is_subgroup(g, kernel)) continue;
      return FrobeniusPair{Subgroup{kernel}, h};
    }
  }
  return std::nullopt;
}

ThetaResult frobenius_theta(const Group& g) {
  auto fp = frobenius_detect(g);
  if (!fp) throw Error(ErrorCode::NotFrobenius, "no Frobenius complement found");
  const auto& H = fp->complement;
  const auto& N = fp->kernel;
  if (H.order() < 3)
    throw Error(ErrorCode::ComplementTooSmall, "complement has order 2; the group is NAP by a self-centralizing involution");

  // Minimal partition of a subgroup, mapped back to G's element indices.
  auto sub_partition = [&](const Subgroup& s, bool normalize) -> AbelianPartition {
    Group sg = subgroup_group(g, s, "sub");
    AbelianPartition p;
    if (is_abelian(sg)) {
      p.blocks.emplace_back(sg.order());
      std::iota(p.blocks[0].begin(), p.blocks[0].end(), Elem{0});
    } else {
      ThetaResult r = exact_theta(sg);
      if (!r.certified) throw Error(ErrorCode::SearchBudgetExceeded, "subgroup AP-degree search did not finish");
      if (r.value == 0) throw Error(ErrorCode::InvariantBroken, "Frobenius factor is NAP");
      p = *r.partition;
      if (normalize) p = normalize_first_block(sg, p);
    }
    for (auto& b : p.blocks)
      for (auto& x : b) x = s.members[x];
    canonicalize(p);
    return p;
  };
  AbelianPartition ph = sub_partition(H, true);
  AbelianPartition pn = sub_partition(N, false);

  ThetaResult r;
  AbelianPartition out;
  for (Elem u : N.members) {
    for (std::size_t i = 0; i < ph.blocks.size(); ++i) {
      std::vector<Elem> b;
      for (Elem x : ph.blocks[i])
        if (!(i == 0 && x == Group::kIdentity)) b.push_back(g.conj(x, u));
      out.blocks.push_back(std::move(b));
    }
  }
  for (auto& b : pn.blocks) out.blocks.push_back(b);
  canonicalize(out);
  if (Check c = verify_partition(g, out); !c)
    throw Error(ErrorCode::InvariantBroken, "glued Frobenius partition fails: " + c.reason);
  const std::uint64_t expect = N.order() * ph.size() + pn.size();
  if (out.size() != expect) throw Error(ErrorCode::InvariantBroken, "glued partition has the wrong size");
  r.value = expect;
  r.partition = std::move(out);
  r.certified = true;
  r.certificate = CertificateKind::FamilyFormula;
  r.family = "frobenius";
  r.lower_bound = expect;
  r.upper_bound = expect;
  r.note = "kernel order " + std::to_string(N.order()) + ", complement order " + std::to_string(H.order());
  return r;
}

ThetaResult psl2_theta(const Group& g, std::uint32_t q, Psl2Census* census) {
  auto pp = prime_power(q);
  if (!pp || q <= 5) throw Error(ErrorCode::InvalidParams, "psl2 partition needs a prime power q > 5");
  const std::uint32_t p = pp->first, d = q % 2 ? 2 : 1;
  const std::uint64_t order = static_cast<std::uint64_t>(q) * (static_cast<std::uint64_t>(q) * q - 1) / d;
  if (g.order() != order) throw Error(ErrorCode::InvalidParams, "group order does not match L_2(q)");
  auto orders = element_orders(g);
  Psl2Census local;
  Psl2Census& cs = census ? *census : local;
  cs = {};

  std::vector<BlockWithAnchor> parts;
  const Elem x = first_of_order(g, orders, p);
  Subgroup P = centralizer(g, x);
  if (P.order() != q || !is_commuting_set(g, P.members))
    throw Error(ErrorCode::InvariantBroken, "Sylow p-subgroup is not abelian of order q");
  Subgroup NP = normalizer(g, P);
  if (NP.order() != static_cast<std::uint64_t>(q) * (q - 1) / d)
    throw Error(ErrorCode::InvariantBroken, "N_G(P) has order " + std::to_string(NP.order()));
  for (auto& c : conjugates_by_transversal(g, P, NP)) {
    BlockWithAnchor b;
    for (Elem y : c)
      if (y != Group::kIdentity) b.block.push_back(y);
    b.anchor = b.block.front();
    parts.push_back(std::move(b));
    ++cs.p_blocks;
  }
  add_cyclic_conjugates(g, first_of_order(g, orders, (q - 1) / d), parts, &cs.a_blocks, 2 * (q - 1) / d);
  add_cyclic_conjugates(g, first_of_order(g, orders, (q + 1) / d), parts, &cs.b_blocks, 2 * (q + 1) / d);
  parts.front().block.push_back(Group::kIdentity);
  return finish(g, std::move(parts), CertificateKind::CentralizerMinimal, "psl2:" + std::to_string(q), true);
}

ThetaResult suzuki_theta(const Group& g, std::uint32_t q, SuzukiCensus* census) {
  if (q != 8) throw Error(ErrorCode::UnsupportedFamily, "Suzuki partition construction is limited to q = 8");
  const std::uint32_t r = 4;
  const std::uint64_t order = 64ull * 7 * 65;
  if (g.order() != order || !g.action()) throw Error(ErrorCode::InvalidParams, "expected Sz(8) on 65 points");
  SuzukiCensus local;
  SuzukiCensus& cs = census ? *census : local;
  cs = {};
  auto orders = element_orders(g);

  // N_G(P) is the stabilizer of a point; P its 2-elements.
  Subgroup NP, P;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.action()->perm(x)[0] == 0) {
      NP.members.push_back(x);
      if (orders[x] == 1 || orders[x] == 2 || orders[x] == 4) P.members.push_back(x);
    }
  if (NP.order() != 64 * 7 || P.order() != 64)
    throw Error(ErrorCode::InvariantBroken, "point stabilizer is not P:A of order 448");
  std::vector<Elem> zp;
  for (Elem x : P.members)
    if (std::all_of(P.members.begin(), P.members.end(), [&](Elem y) { return g.commute(x, y); })) zp.push_back(x);
  if (zp.size() != q) throw Error(ErrorCode::InvariantBroken, "Z(P) does not have order q");

  // Split P: C(x) \ Z(P) for x outside Z(P), with Z(P) \ 1 merged into the first.
  std::vector<BlockWithAnchor> sylow;
  std::vector<char> used(g.order(), 0);
  for (Elem z : zp) used[z] = 1;
  for (Elem x : P.members) {
    if (used[x]) continue;
    BlockWithAnchor b{{}, x};
    for (Elem y : P.members)
      if (!used[y] && g.commute(x, y)) b.block.push_back(y);
    for (Elem y : b.block) used[y] = 1;
    if (b.block.size() != q) throw Error(ErrorCode::InvariantBroken, "C(x) \\ Z(P) does not have order q");
    sylow.push_back(std::move(b));
  }
  for (Elem z : zp)
    if (z != Group::kIdentity) sylow.front().block.push_back(z);
  cs.sylow_split = sylow.size();

  std::vector<BlockWithAnchor> parts;
  std::vector<char> covered(g.order(), 0);
  for (Elem u = 0; u < g.order(); ++u) {
    if (covered[u]) continue;
    for (Elem y : NP.members) covered[g.mul(y, u)] = 1;
    for (const auto& b : sylow) {
      BlockWithAnchor c{{}, g.conj(b.anchor, u)};
      for (Elem y : b.block) c.block.push_back(g.conj(y, u));
      parts.push_back(std::move(c));
    }
    ++cs.sylow_blocks;
  }
  cs.sylow_blocks *= sylow.size();
  add_cyclic_conjugates(g, first_of_order(g, orders, q - 1), parts, &cs.a_blocks, 2 * (q - 1));
  add_cyclic_conjugates(g, first_of_order(g, orders, q - r + 1), parts, &cs.b_blocks, 4 * (q - r + 1));
  add_cyclic_conjugates(g, first_of_order(g, orders, q + r + 1), parts, &cs.c_blocks, 4 * (q + r + 1));
  parts.front().block.push_back(Group::kIdentity);
  return finish(g, std::move(parts), CertificateKind::CentralizerMinimal, "suzuki:" + std::to_string(q), false);
}

}  // namespace apg
