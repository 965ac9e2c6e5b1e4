#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace finite_hgf {

/// An element of GF(p^f), stored as its coefficient vector over GF(p) packed
/// into a single integer: code = c_0 + c_1 p + ... + c_{f-1} p^{f-1}.
/// The zero element has code 0. Elements carry no field handle; every
/// operation goes through the owning FiniteField.
struct FieldElem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// GF(p^f) with dense exp/log/trace tables.
///
/// Construction picks the lexicographically smallest monic irreducible
/// modulus (constant coefficient compared first) unless one is supplied,
/// and the generator is the element with the smallest code whose
/// multiplicative order is q-1. Both choices are deterministic, so two
/// constructions with the same arguments give identical tables.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// `modulus` lists f+1 coefficients, lowest degree first, leading 1 last.
  static std::shared_ptr<const FiniteField> construct(
      std::uint32_t p, unsigned f,
      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Resolves q into p^f; throws InvalidField when q is not a prime power.
  static std::shared_ptr<const FiniteField> from_order(std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  unsigned f() const noexcept { return f_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Order of the multiplicative group.
  std::uint32_t units_order() const noexcept { return q_ - 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  FieldElem generator() const noexcept { return generator_; }

  FieldElem zero() const noexcept { return FieldElem{0}; }
  FieldElem one() const noexcept { return FieldElem{1}; }
  /// Image of an integer in the prime subfield.
  FieldElem from_int(std::int64_t n) const noexcept;
  FieldElem from_coefficients(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coefficients(FieldElem x) const;
  /// Throws InvalidArgument when code >= q.
  FieldElem element(std::uint32_t code) const;

  FieldElem add(FieldElem x, FieldElem y) const noexcept;
  FieldElem sub(FieldElem x, FieldElem y) const noexcept;
  FieldElem neg(FieldElem x) const noexcept;
  FieldElem mul(FieldElem x, FieldElem y) const noexcept;
  FieldElem inv(FieldElem x) const;
  FieldElem div(FieldElem x, FieldElem y) const;
  FieldElem pow(FieldElem x, std::uint64_t e) const noexcept;

  /// Index t with exp(t) = x; throws LogOfZero for x = 0.
  std::uint32_t discrete_log(FieldElem x) const;
  /// generator^t for any t (reduced mod q-1).
  FieldElem exp(std::uint64_t t) const noexcept { return FieldElem{exp_[t % (q_ - 1)]}; }
  /// Absolute trace to GF(p), returned as an integer in [0, p).
  std::uint32_t trace(FieldElem x) const noexcept { return trace_[x.code]; }

  /// 0 first, then generator powers in exp-table order.
  std::vector<FieldElem> elements() const;
  /// Generator powers in exp-table order, starting from 1.
  std::vector<FieldElem> units() const;

  std::span<const std::uint32_t> exp_table() const noexcept { return exp_; }
  std::span<const std::uint32_t> log_table() const noexcept { return log_; }
  std::span<const std::uint32_t> trace_table() const noexcept { return trace_; }

  /// {p, f, modulus, generator} as used by `field-info`; `q` is included too.
  nlohmann::json descriptor() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
    return a.p_ == b.p_ && a.f_ == b.f_ && a.modulus_ == b.modulus_;
  }

 private:
  FiniteField() = default;

  std::uint32_t p_ = 0;
  unsigned f_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= f
  FieldElem generator_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;  // log_[0] is unused
  std::vector<std::uint32_t> trace_;
};

using FieldHandle = std::shared_ptr<const FiniteField>;

bool is_prime(std::uint64_t n) noexcept;

/// Monic polynomials over GF(p), coefficients lowest degree first.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// Smallest monic irreducible of degree f, constant coefficient compared first.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned f);

}  // namespace finite_hgf
