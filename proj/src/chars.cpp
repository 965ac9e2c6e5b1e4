#include "finite_hgf/chars.hpp"

#include <charconv>
#include <numeric>

#include "finite_hgf/error.hpp"

namespace finite_hgf {

namespace {

std::uint32_t reduce_index(std::int64_t index, std::uint32_t order) {
  const std::int64_t r = index % std::int64_t(order);
  return std::uint32_t(r < 0 ? r + order : r);
}

void require_same_field(const FiniteField& a, const FiniteField& b) {
  if (&a != &b && !(a == b)) throw Error(ErrorCode::FieldMismatch, "characters belong to different fields");
}

}  // namespace

MultChar::MultChar(const FiniteField& field, std::int64_t index)
    : field_(&field), index_(reduce_index(index, field.units_order())) {}

std::uint32_t MultChar::order() const noexcept {
  const std::uint32_t n = field_->units_order();
  return n / std::gcd(index_, n);
}

MultChar MultChar::operator*(const MultChar& other) const {
  require_same_field(*field_, *other.field_);
  return MultChar(*field_, std::int64_t(index_) + other.index_);
}

MultChar MultChar::pow(std::int64_t n) const {
  const std::uint32_t order = field_->units_order();
  return MultChar(*field_, std::int64_t((std::uint64_t(index_) * reduce_index(n, order)) % order));
}

MultChar MultChar::conj() const { return MultChar(*field_, -std::int64_t(index_)); }

AddChar::AddChar(const FiniteField& field, FieldElem shift) : field_(&field), shift_(shift) {
  if (shift.code == 0) throw Error(ErrorCode::InvalidArgument, "additive character shift must be nonzero");
  if (shift.code >= field.q()) throw Error(ErrorCode::InvalidArgument, "additive character shift out of range");
}

std::optional<std::uint32_t> mult_exponent(const MultChar& chi, FieldElem x) {
  if (x.code == 0) return std::nullopt;
  const std::uint64_t order = chi.field().units_order();
  return std::uint32_t((std::uint64_t(chi.index()) * chi.field().discrete_log(x)) % order);
}

CycloNum eval_mult(const MultChar& chi, FieldElem x) {
  const std::uint32_t order = chi.field().units_order();
  const auto e = mult_exponent(chi, x);
  if (!e) return CycloNum::zero(order);
  return CycloNum::root_of_unity(order, *e);
}

CycloNum eval_add(const AddChar& psi, FieldElem x) {
  const FiniteField& k = psi.field();
  return CycloNum::root_of_unity(k.p(), k.trace(k.mul(psi.shift(), x)));
}

int delta_char(const MultChar& chi) noexcept { return chi.is_trivial() ? 1 : 0; }

MultChar quadratic_char(const FiniteField& field) {
  if (field.p() == 2) throw Error(ErrorCode::NoSuchCharacter, "no quadratic character when p = 2 (2 does not divide q-1)");
  return MultChar(field, field.units_order() / 2);
}

std::vector<MultChar> cubic_chars(const FiniteField& field) {
  const std::uint32_t n = field.units_order();
  if (n % 3 != 0) {
    throw Error(ErrorCode::NoSuchCharacter, "no cubic character: 3 does not divide q-1 = " + std::to_string(n));
  }
  return {MultChar(field, n / 3), MultChar(field, 2 * (n / 3))};
}

std::vector<MultChar> nth_root_chars(const FiniteField& field, std::int64_t n) {
  const std::uint32_t order = field.units_order();
  std::vector<MultChar> out;
  for (std::uint32_t j = 0; j < order; ++j) {
    if ((std::uint64_t(j) * reduce_index(n, order)) % order == 0) out.emplace_back(field, j);
  }
  return out;
}

// ---------------------------------------------------------------------------

ParamSet::ParamSet(const FiniteField& field, const std::vector<MultChar>& members) : field_(&field) {
  for (const auto& chi : members) insert(chi);
}

ParamSet::ParamSet(const FiniteField& field, const std::vector<std::uint32_t>& indices) : field_(&field) {
  for (auto j : indices) insert(MultChar(field, j));
}

std::vector<std::uint32_t> ParamSet::indices() const {
  std::vector<std::uint32_t> out;
  for (const auto& [j, mult] : counts_) out.insert(out.end(), mult, j);
  return out;
}

void ParamSet::insert(const MultChar& chi, std::uint32_t multiplicity) {
  require_same_field(*field_, chi.field());
  if (multiplicity > 0) counts_[chi.index()] += multiplicity;
}

std::uint32_t ParamSet::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& [j, mult] : counts_) d += mult;
  return d;
}

std::uint32_t ParamSet::multiplicity(const MultChar& chi) const {
  require_same_field(*field_, chi.field());
  const auto it = counts_.find(chi.index());
  return it == counts_.end() ? 0 : it->second;
}

ParamSet ParamSet::shift(const MultChar& chi) const {
  require_same_field(*field_, chi.field());
  ParamSet out(*field_);
  for (const auto& [j, mult] : counts_) out.insert(MultChar(*field_, j) * chi, mult);
  return out;
}

ParamSet ParamSet::conj() const {
  ParamSet out(*field_);
  for (const auto& [j, mult] : counts_) out.insert(MultChar(*field_, j).conj(), mult);
  return out;
}

ParamSet ParamSet::pow(std::int64_t n) const {
  ParamSet out(*field_);
  for (const auto& [j, mult] : counts_) out.insert(MultChar(*field_, j).pow(n), mult);
  return out;
}

ParamSet operator+(const ParamSet& a, const ParamSet& b) {
  require_same_field(*a.field_, *b.field_);
  ParamSet out = a;
  for (const auto& [j, mult] : b.counts_) out.counts_[j] += mult;
  return out;
}

bool operator==(const ParamSet& a, const ParamSet& b) {
  return a.counts_ == b.counts_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
}

std::string ParamSet::to_string() const {
  std::string out;
  for (const auto& [j, mult] : counts_) {
    for (std::uint32_t i = 0; i < mult; ++i) {
      if (!out.empty()) out += ",";
      out += "chi:" + std::to_string(j);
    }
  }
  return out;
}

std::uint32_t pairing(const ParamSet& a, const ParamSet& b) {
  require_same_field(a.field(), b.field());
  std::uint32_t total = 0;
  for (const auto& [j, mult] : a.counts()) {
    const auto it = b.counts().find(j);
    if (it != b.counts().end()) total += mult * it->second;
  }
  return total;
}

std::uint32_t pairing(const ParamSet& a, const MultChar& chi) { return a.multiplicity(chi); }

// ---------------------------------------------------------------------------

namespace {

MultChar parse_char_at(const FiniteField& field, std::string_view token, std::size_t position) {
  auto fail = [&](const std::string& why) -> MultChar {
    throw Error(ErrorCode::ParseError,
                "at position " + std::to_string(position) + ": " + why + " in '" + std::string(token) + "'");
  };
  if (token == "eps") return MultChar::trivial(field);
  if (token == "phi") {
    if (field.p() == 2) fail("phi needs odd characteristic");
    return quadratic_char(field);
  }
  if (token == "rho") {
    if (field.units_order() % 3 != 0) fail("rho needs 3 | q-1");
    return cubic_chars(field).front();
  }
  std::string_view digits = token;
  if (digits.starts_with("chi:")) digits.remove_prefix(4);
  std::int64_t value = 0;
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  if (digits.empty()) fail("missing character index");
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail("expected chi:<int>, eps, phi or rho");
  return MultChar(field, value);
}

}  // namespace

MultChar parse_char(const FiniteField& field, std::string_view token) { return parse_char_at(field, token, 0); }

ParamSet parse_paramset(const FiniteField& field, std::string_view text) {
  ParamSet out(field);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.insert(parse_char_at(field, text.substr(start, end - start), start));
    start = end + 1;
  }
  return out;
}

std::string to_string(const MultChar& chi) { return "chi:" + std::to_string(chi.index()); }

}  // namespace finite_hgf
