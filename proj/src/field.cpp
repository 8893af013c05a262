#include "apg/field.hpp"

#include "apg/error.hpp"

namespace apg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  for (std::uint32_t x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  return 0;
}

// Remainder of a modulo b over GF(p); b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint32_t c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  // Trial division by every monic polynomial of degree 1..m/2.
  for (std::size_t d = 1; d * 2 <= m; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field Field::build(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorCode::SizeExceeded, "degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxSize) throw Error(ErrorCode::SizeExceeded, "field larger than 2^16");
  }
  Field f;
  f.p_ = p;
  f.m_ = m;
  f.q_ = static_cast<std::uint32_t>(q);

  // Lexicographically smallest monic irreducible: the low coefficients read as
  // a base-p number with c_{m-1} most significant, so increasing code order is
  // lexicographic order from the top coefficient down.
  for (std::uint64_t code = 0; code < q; ++code) {
    Poly g(m + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      g[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    g[m] = 1;
    if (m == 1 || (g[0] != 0 && irreducible(g, p))) {
      f.poly_ = g;
      break;
    }
  }

  const std::uint32_t order = f.q_ - 1;
  if (order == 0) {
    f.exp_ = {1, 1};
    f.log_ = {0, 0};
    return f;
  }
  std::vector<std::uint32_t> primes;
  for (std::uint32_t d = 2, r = order; r > 1; ++d) {
    if (r % d == 0) {
      primes.push_back(d);
      while (r % d == 0) r /= d;
    }
  }
  auto slow_pow = [&](FieldElem a, std::uint64_t e) {
    FieldElem r = 1;
    while (e) {
      if (e & 1) r = f.mul_poly(r, a);
      a = f.mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  for (FieldElem g = 1; g < f.q_; ++g) {
    bool ok = true;
    for (auto pr : primes)
      if (slow_pow(g, order / pr) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      f.primitive_ = g;
      break;
    }
  }
  f.exp_.assign(2 * static_cast<std::size_t>(order), 0);
  f.log_.assign(f.q_, 0);
  FieldElem x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    f.exp_[i] = x;
    f.exp_[i + order] = x;
    f.log_[x] = i;
    x = f.mul_poly(x, f.primitive_);
  }
  return f;
}

FieldElem Field::mul_poly(FieldElem a, FieldElem b) const {
  std::vector<std::uint32_t> da(m_), db(m_), prod(2 * m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  for (std::size_t d = 2 * m_ - 1; d >= m_; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < m_; ++i)
      prod[d - m_ + i] = (prod[d - m_ + i] + p_ - (c * poly_[i]) % p_) % p_;
  }
  FieldElem r = 0;
  for (std::uint32_t i = m_; i-- > 0;) r = r * p_ + prod[i];
  return r;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  if (p_ == 2) return a ^ b;
  FieldElem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FieldElem Field::neg(FieldElem a) const {
  if (p_ == 2) return a;
  FieldElem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

FieldElem Field::inv(FieldElem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldElem Field::pow(FieldElem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t ord = q_ - 1;
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % ord)) % ord;
  if (k < 0) k += ord;
  return exp_[static_cast<std::size_t>(k)];
}

FieldElem Field::suzuki_twist(FieldElem a) const {
  if (p_ != 2 || m_ % 2 == 0)
    throw Error(ErrorCode::WrongCharacteristic, "Suzuki twist needs GF(2^(2n+1))");
  const std::uint32_t n = (m_ - 1) / 2;
  return pow(a, std::int64_t{1} << (n + 1));
}

FieldElem Field::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<FieldElem>(r);
}

}  // namespace apg
