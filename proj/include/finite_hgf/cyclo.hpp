#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace finite_hgf {

using Integer = mpz_class;
using Rational = mpq_class;

std::uint32_t euler_phi(std::uint32_t m) noexcept;

/// Per-conductor data: the m-th cyclotomic polynomial and the reduction
/// table x^e mod Phi_m for 0 <= e < m. Built once per conductor and shared
/// process-wide; lookups are safe from concurrent threads.
class CyclotomicTables {
 public:
  /// Largest m * phi(m) for which dense tables are built.
  static constexpr std::uint64_t kMaxTableEntries = std::uint64_t(1) << 24;

  static const CyclotomicTables& get(std::uint32_t m);

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t phi() const noexcept { return phi_; }
  /// Coefficients of Phi_m, lowest degree first (phi + 1 entries).
  std::span<const long> cyclotomic_polynomial() const noexcept { return poly_; }
  /// Coefficients of x^e mod Phi_m in the power basis (phi entries).
  std::span<const long> reduction_row(std::uint32_t e) const noexcept {
    return {reduction_.data() + std::size_t(e) * phi_, phi_};
  }
  /// Residues c in [1, m) coprime to m, ascending.
  std::span<const std::uint32_t> units() const noexcept { return units_; }

 private:
  explicit CyclotomicTables(std::uint32_t m);

  std::uint32_t m_;
  std::uint32_t phi_;
  std::vector<long> poly_;
  std::vector<long> reduction_;
  std::vector<std::uint32_t> units_;
};

/// Exact element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
/// modulo Phi_m. Stored as integer numerators over one positive common
/// denominator with gcd(numerators, denominator) = 1, so two values at the
/// same conductor are equal iff their stored data is identical. Values at
/// different conductors are compared after lifting to the lcm.
class CycloNum {
 public:
  CycloNum() : CycloNum(ZeroTag{}, 1) {}
  CycloNum(long value) : CycloNum(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  CycloNum(const Rational& value, std::uint32_t m = 1);

  static CycloNum zero(std::uint32_t m) { return CycloNum(ZeroTag{}, m); }

  /// zeta_m^k, reduced.
  static CycloNum root_of_unity(std::uint32_t m, std::int64_t k);
  static CycloNum from_coefficients(std::uint32_t m, std::span<const Rational> coeffs);
  /// Builds from numerators over a common denominator and normalises.
  static CycloNum from_parts(std::uint32_t m, std::vector<Integer> numerators, Integer denominator);

  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t phi() const noexcept { return std::uint32_t(num_.size()); }
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }
  Rational coefficient(std::size_t i) const;
  std::vector<Rational> coefficients() const;

  bool is_zero() const noexcept;
  bool is_rational() const noexcept;
  /// True when the value lies in Z[zeta_m] (the power basis is integral).
  bool is_algebraic_integer() const noexcept { return den_ == 1; }
  /// The rational value; throws InvalidArgument unless is_rational().
  Rational to_rational() const;

  /// Re-expresses the value in Q(zeta_M); requires m | M.
  CycloNum lift(std::uint32_t M) const;
  /// Re-expresses the value in Q(zeta_d) when it lies there; requires d | m.
  std::optional<CycloNum> lower(std::uint32_t d) const;
  /// The same value at the smallest conductor that holds it.
  CycloNum minimal() const;

  /// The automorphism zeta_m -> zeta_m^c; throws NotCoprime.
  CycloNum galois_apply(std::int64_t c) const;
  /// Complex conjugation (c = -1).
  CycloNum conj() const { return galois_apply(-1); }
  /// True iff fixed by every sigma_c with c = 1 mod d; throws NotDivisor.
  bool lies_in_subfield(std::uint32_t d) const;

  /// Product of all Galois conjugates (a rational number).
  Rational norm() const;
  /// Inverse via the conjugate product over the norm; throws DivisionByZero.
  CycloNum inverse() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& other);
  CycloNum& operator-=(const CycloNum& other);
  CycloNum& operator*=(const CycloNum& other);
  CycloNum& operator*=(const Rational& r);
  CycloNum& operator/=(const CycloNum& other) { return *this *= other.inverse(); }

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator*(CycloNum a, const Rational& r) { return a *= r; }
  friend CycloNum operator*(const Rational& r, CycloNum a) { return a *= r; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// Multiplication by zeta_m^k (k taken mod m).
  CycloNum rotate(std::int64_t k) const;

  /// Approximate image under zeta_m -> exp(2 pi i / m). Display only.
  std::complex<double> approx() const;

  nlohmann::json to_json() const;
  static CycloNum from_json(const nlohmann::json& j);
  std::string to_string() const;

 private:
  struct ZeroTag {};
  CycloNum(ZeroTag, std::uint32_t m);

  void normalize();
  static CycloNum multiply_same(const CycloNum& a, const CycloNum& b);

  std::uint32_t m_;
  std::vector<Integer> num_;
  Integer den_;
};

/// Group-ring accumulator for Q[x]/(x^m - 1): adding c * zeta^k only shifts
/// indices, and the single reduction modulo Phi_m happens in finish().
class CycloAccumulator {
 public:
  explicit CycloAccumulator(std::uint32_t m);

  std::uint32_t m() const noexcept { return m_; }
  /// += value * zeta_m^k. `value` is lifted when its conductor divides m.
  void add_rotated(const CycloNum& value, std::uint64_t k);
  /// += coeff * zeta_m^k.
  void add_root(std::uint64_t k, long coeff = 1);
  CycloNum finish() const;
  void clear();

 private:
  void rescale_to(const Integer& den);

  std::uint32_t m_;
  std::vector<Integer> slots_;
  Integer den_;
};

std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b);

}  // namespace finite_hgf
