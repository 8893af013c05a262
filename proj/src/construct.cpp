#include "apg/construct.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "apg/analysis.hpp"
#include "apg/error.hpp"

namespace apg {

namespace {

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

void check_dense(std::size_t order, const BuildOptions& opts) {
  if (order > opts.order_cap)
    throw Error(ErrorCode::OrderCapExceeded,
                "order " + std::to_string(order) + " exceeds cap " + std::to_string(opts.order_cap));
  if (order > opts.dense_limit)
    throw Error(ErrorCode::OrderCapExceeded, "order " + std::to_string(order) +
                                                 " needs a dense table above the limit " +
                                                 std::to_string(opts.dense_limit));
}

}  // namespace

Group group_from_generators(const PermSpec& spec, const BuildOptions& opts, std::string tag) {
  const auto deg = spec.degree;
  if (deg == 0 || deg > 65535) throw Error(ErrorCode::InvalidPermutation, "bad degree");
  std::vector<Perm> gens;
  for (const auto& g : spec.generators) {
    if (g.size() != deg) throw Error(ErrorCode::InvalidPermutation, "generator length != degree");
    std::vector<char> hit(deg, 0);
    Perm p(deg);
    for (std::uint32_t i = 0; i < deg; ++i) {
      if (g[i] >= deg || hit[g[i]]) throw Error(ErrorCode::InvalidPermutation, "not a bijection");
      hit[g[i]] = 1;
      p[i] = static_cast<std::uint16_t>(g[i]);
    }
    gens.push_back(std::move(p));
  }

  Perm id(deg);
  for (std::uint32_t i = 0; i < deg; ++i) id[i] = static_cast<std::uint16_t>(i);
  std::vector<Perm> elems{id};
  std::unordered_map<Perm, Elem, PermHash> seen{{id, 0}};
  std::vector<Elem> gen_index;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      Perm h(deg);
      const Perm& g = elems[head];
      for (std::uint32_t i = 0; i < deg; ++i) h[i] = s[g[i]];
      auto [it, fresh] = seen.try_emplace(h, static_cast<Elem>(elems.size()));
      if (fresh) {
        elems.push_back(std::move(h));
        if (elems.size() > opts.order_cap)
          throw Error(ErrorCode::OrderCapExceeded,
                      "closure exceeds cap " + std::to_string(opts.order_cap));
      }
    }
  }
  for (const auto& s : gens) gen_index.push_back(seen.at(s));

  auto action = std::make_shared<PermAction>(deg, std::move(elems));
  const bool dense = action->order() <= opts.dense_limit;
  Group g = Group::from_action(std::move(action), std::move(tag), dense);
  g.set_generators(std::move(gen_index));
  return g;
}

Group direct_product(const Group& g, const Group& h, const BuildOptions& opts) {
  const std::size_t ng = g.order(), nh = h.order(), n = ng * nh;
  check_dense(n, opts);
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const Elem ag = static_cast<Elem>(a / nh), ah = static_cast<Elem>(a % nh);
    for (std::size_t b = 0; b < n; ++b) {
      const Elem bg = static_cast<Elem>(b / nh), bh = static_cast<Elem>(b % nh);
      table[a * n + b] = static_cast<Elem>(g.mul(ag, bg) * nh + h.mul(ah, bh));
    }
  }
  Group out = Group::from_table(n, std::move(table), "direct(" + g.tag() + "," + h.tag() + ")");
  std::vector<std::size_t> factors =
      g.factor_orders().empty() ? std::vector<std::size_t>{ng} : g.factor_orders();
  if (h.factor_orders().empty())
    factors.push_back(nh);
  else
    factors.insert(factors.end(), h.factor_orders().begin(), h.factor_orders().end());
  out.set_factor_orders(std::move(factors));
  std::vector<Elem> gens;
  for (Elem x : generating_set(g)) gens.push_back(static_cast<Elem>(x * nh));
  for (Elem y : generating_set(h)) gens.push_back(y);
  out.set_generators(std::move(gens));
  return out;
}

Group wreath_product(const Group& k, const PermSpec& top, const BuildOptions& opts) {
  Group h = group_from_generators(top, opts, "top");
  const std::size_t deg = top.degree, nk = k.order(), nh = h.order();
  std::size_t nb = 1;
  for (std::size_t i = 0; i < deg; ++i) {
    nb *= nk;
    if (nb > opts.order_cap) throw Error(ErrorCode::OrderCapExceeded, "wreath base too large");
  }
  const std::size_t n = nb * nh;
  check_dense(n, opts);

  // Top-group point images by BFS index.
  std::vector<std::vector<std::uint32_t>> img(nh, std::vector<std::uint32_t>(deg));
  for (std::size_t s = 0; s < nh; ++s) {
    const Perm& p = h.action()->perm(static_cast<Elem>(s));
    for (std::size_t i = 0; i < deg; ++i) img[s][i] = p[i];
  }
  auto decode = [&](std::size_t x, std::vector<Elem>& base) {
    for (std::size_t i = 0; i < deg; ++i) {
      base[i] = static_cast<Elem>(x % nk);
      x /= nk;
    }
  };
  // (b, s)(c, t) = (b * phi_s(c), s t) with phi_s(c)_i = c_{s(i)}: a left
  // action for left-to-right composition in the top group.
  std::vector<Elem> table(n * n);
  std::vector<Elem> b(deg), c(deg);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t s = x % nh;
    decode(x / nh, b);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t t = y % nh;
      decode(y / nh, c);
      std::size_t code = 0;
      for (std::size_t i = deg; i-- > 0;) code = code * nk + k.mul(b[i], c[img[s][i]]);
      table[x * n + y] = static_cast<Elem>(code * nh + h.mul(static_cast<Elem>(s), static_cast<Elem>(t)));
    }
  }
  std::string tag = "wreath(" + k.tag() + ",deg" + std::to_string(deg) + ",order" + std::to_string(nh) + ")";
  Group out = Group::from_table(n, std::move(table), std::move(tag));
  std::vector<Elem> gens;
  for (Elem kg : generating_set(k)) gens.push_back(static_cast<Elem>(kg * nh));  // coordinate 0
  for (Elem tg : h.generators()) gens.push_back(tg);
  out.set_generators(std::move(gens));
  return out;
}

Group subgroup_group(const Group& g, const Subgroup& h, std::string tag) {
  const auto& m = h.members;
  const std::size_t n = m.size();
  std::unordered_map<Elem, Elem> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(m[i], static_cast<Elem>(i));
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = pos.find(g.mul(m[a], m[b]));
      if (it == pos.end()) throw Error(ErrorCode::InvalidParams, "members not closed");
      table[a * n + b] = it->second;
    }
  return Group::from_table(n, std::move(table), std::move(tag));
}

Group quotient_group(const Group& g, const Subgroup& normal, std::string tag) {
  const std::size_t n = g.order();
  std::vector<Elem> coset(n, ~Elem{0});
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (coset[x] != ~Elem{0}) continue;
    const Elem id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem z : normal.members) coset[g.mul(z, x)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = coset[g.mul(reps[a], reps[b])];
  return Group::from_table(m, std::move(table), std::move(tag));
}

PermSpec regular_representation(const Group& g) {
  PermSpec spec;
  spec.degree = static_cast<std::uint32_t>(g.order());
  for (Elem s : generating_set(g)) {
    std::vector<std::uint32_t> p(g.order());
    for (Elem x = 0; x < g.order(); ++x) p[x] = g.mul(x, s);
    spec.generators.push_back(std::move(p));
  }
  if (spec.generators.empty()) {
    std::vector<std::uint32_t> id(g.order());
    for (Elem x = 0; x < g.order(); ++x) id[x] = x;
    spec.generators.push_back(std::move(id));
  }
  return spec;
}

Group cyclic_group(std::size_t n) {
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  Group g = Group::from_table(n, std::move(table), "cyclic(" + std::to_string(n) + ")");
  if (n > 1) g.set_generators({1});
  return g;
}

}  // namespace apg
