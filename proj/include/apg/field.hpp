#pragma once

#include <cstdint>
#include <vector>

namespace apg {

using FieldElem = std::uint32_t;

/// Finite field GF(p^m) with p^m <= 2^16.
///
/// Elements are dense indices in [0, p^m): the index of a residue
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} is sum c_i p^i. Multiplication goes
/// through log/antilog tables built from the least primitive element. The
/// reduction polynomial is the lexicographically smallest monic irreducible
/// of degree m (comparing coefficients from x^{m-1} down), so every build of
/// the same field is bit-identical.
class Field {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 16;

  static Field build(std::uint32_t p, std::uint32_t m);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t size() const { return q_; }
  /// Coefficients c_0..c_m of the monic reduction polynomial (c_m = 1).
  const std::vector<std::uint32_t>& reduction_poly() const { return poly_; }
  FieldElem primitive() const { return primitive_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::int64_t e) const;

  /// x -> x^p.
  FieldElem frobenius(FieldElem a) const { return pow(a, p_); }

  /// Suzuki field automorphism x -> x^(2^(n+1)) on GF(2^(2n+1)).
  /// Applying it twice gives x -> x^2.
  FieldElem suzuki_twist(FieldElem a) const;

  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(FieldElem a) const { return log_[a]; }
  FieldElem exp(std::uint32_t e) const { return exp_[e % (q_ - 1)]; }

  /// Element corresponding to the integer k (k mod p) in the prime subfield.
  FieldElem from_int(std::int64_t k) const;

 private:
  Field() = default;
  FieldElem mul_poly(FieldElem a, FieldElem b) const;

  std::uint32_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<std::uint32_t> poly_;
  FieldElem primitive_ = 1;
  std::vector<FieldElem> exp_;       // length 2(q-1)
  std::vector<std::uint32_t> log_;   // log_[0] unused
};

bool is_prime(std::uint64_t n);

}  // namespace apg
