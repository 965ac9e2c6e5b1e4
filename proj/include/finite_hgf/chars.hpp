#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finite_hgf/cyclo.hpp"
#include "finite_hgf/gf.hpp"

namespace finite_hgf {

/// Multiplicative character chi_j with chi_j(g^t) = zeta_{q-1}^{j t} for the
/// field's fixed generator g, and chi_j(0) = 0 for every j (including the
/// trivial character). Holds a non-owning pointer to its field.
class MultChar {
 public:
  MultChar(const FiniteField& field, std::int64_t index);

  static MultChar trivial(const FiniteField& field) { return MultChar(field, 0); }

  const FiniteField& field() const noexcept { return *field_; }
  std::uint32_t index() const noexcept { return index_; }
  /// Order of this character in the cyclic group of all characters.
  std::uint32_t order() const noexcept;
  bool is_trivial() const noexcept { return index_ == 0; }

  MultChar operator*(const MultChar& other) const;
  MultChar pow(std::int64_t n) const;
  MultChar conj() const;

  friend bool operator==(const MultChar& a, const MultChar& b) noexcept {
    return a.index_ == b.index_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
  }

 private:
  const FiniteField* field_;
  std::uint32_t index_;
};

/// Additive character psi_a(x) = zeta_p^{Tr(a x)} with a != 0.
class AddChar {
 public:
  AddChar(const FiniteField& field, FieldElem shift);
  static AddChar standard(const FiniteField& field) { return AddChar(field, field.one()); }

  const FiniteField& field() const noexcept { return *field_; }
  FieldElem shift() const noexcept { return shift_; }

 private:
  const FiniteField* field_;
  FieldElem shift_;
};

/// chi(x) as an element of Q(zeta_{q-1}); 0 when x = 0.
CycloNum eval_mult(const MultChar& chi, FieldElem x);
/// Exponent e with chi(x) = zeta_{q-1}^e, or nullopt when x = 0.
std::optional<std::uint32_t> mult_exponent(const MultChar& chi, FieldElem x);
/// psi(x) as an element of Q(zeta_p).
CycloNum eval_add(const AddChar& psi, FieldElem x);
/// 1 iff chi is the trivial character.
int delta_char(const MultChar& chi) noexcept;

/// The unique character of order 2; throws NoSuchCharacter when p = 2.
MultChar quadratic_char(const FiniteField& field);
/// Both characters of order 3; throws NoSuchCharacter unless 3 | q-1.
std::vector<MultChar> cubic_chars(const FiniteField& field);
/// Every chi with chi^n trivial (gcd(n, q-1) of them), by ascending index.
std::vector<MultChar> nth_root_chars(const FiniteField& field, std::int64_t n);

/// Finite multiset of characters of one field, kept as index -> multiplicity.
class ParamSet {
 public:
  explicit ParamSet(const FiniteField& field) : field_(&field) {}
  ParamSet(const FiniteField& field, const std::vector<MultChar>& members);
  ParamSet(const FiniteField& field, const std::vector<std::uint32_t>& indices);

  const FiniteField& field() const noexcept { return *field_; }
  const std::map<std::uint32_t, std::uint32_t>& counts() const noexcept { return counts_; }
  /// Members with repetition, by ascending index.
  std::vector<std::uint32_t> indices() const;

  void insert(const MultChar& chi, std::uint32_t multiplicity = 1);
  std::uint32_t degree() const noexcept;
  std::uint32_t multiplicity(const MultChar& chi) const;

  /// Multiplies every member by chi.
  ParamSet shift(const MultChar& chi) const;
  /// Inverts every member.
  ParamSet conj() const;
  /// Raises every member to the n-th power.
  ParamSet pow(std::int64_t n) const;

  friend ParamSet operator+(const ParamSet& a, const ParamSet& b);
  friend bool operator==(const ParamSet& a, const ParamSet& b);

  /// Canonical comma list, e.g. "chi:0,chi:2,chi:2".
  std::string to_string() const;

 private:
  const FiniteField* field_;
  std::map<std::uint32_t, std::uint32_t> counts_;
};

/// Multiplicity-counted coincidences: sum over member pairs of delta(a b^-1).
std::uint32_t pairing(const ParamSet& a, const ParamSet& b);
std::uint32_t pairing(const ParamSet& a, const MultChar& chi);

/// Parses `chi:j`, `eps`, `phi`, `rho` or a bare index.
MultChar parse_char(const FiniteField& field, std::string_view token);
/// Parses a comma list of characters; the empty string is the empty set.
ParamSet parse_paramset(const FiniteField& field, std::string_view text);
std::string to_string(const MultChar& chi);

}  // namespace finite_hgf
