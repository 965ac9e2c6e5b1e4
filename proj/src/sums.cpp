#include "finite_hgf/sums.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "finite_hgf/error.hpp"

namespace finite_hgf {

GaussTable::GaussTable(const FiniteField& field, FieldElem shift, bool parallel)
    : p_(field.p()), q_(field.q()), n_(field.units_order()), m_(field.p() * field.units_order()), shift_(shift) {
  if (shift.code == 0 || shift.code >= q_) throw Error(ErrorCode::InvalidArgument, "additive character shift out of range");
  CyclotomicTables::get(m_);  // build outside the parallel region

  // Additive exponents Tr(a g^t) do not depend on the character.
  std::vector<std::uint64_t> add_part(n_);
  for (std::uint32_t t = 0; t < n_; ++t) add_part[t] = add_root(field.trace(field.mul(shift, field.exp(t))));

  g_.assign(n_, CycloNum());
  const std::int64_t count = n_;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t j = 0; j < count; ++j) {
    CycloAccumulator acc(m_);
    for (std::uint32_t t = 0; t < n_; ++t) acc.add_root((add_part[t] + char_root(std::uint64_t(j) * t)) % m_, -1);
    g_[j] = acc.finish();
  }

  g0_ = g_;
  g0_[0] *= Rational(q_);
  g_inv_.reserve(n_);
  g0_inv_.reserve(n_);
  for (std::uint32_t j = 0; j < n_; ++j) {
    const std::uint32_t bar = (n_ - j) % n_;
    const Rational scale(sign(j), q_);
    g_inv_.push_back(g0_[bar] * scale);
    g0_inv_.push_back(g_[bar] * scale);
  }
}

std::shared_ptr<const GaussTable> GaussTable::get(const FiniteField& field, FieldElem shift) {
  using Key = std::vector<std::uint32_t>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const GaussTable>> registry;

  Key key{field.p(), field.f(), shift.code};
  key.insert(key.end(), field.modulus().begin(), field.modulus().end());
  {
    std::shared_lock lock(mutex);
    if (auto it = registry.find(key); it != registry.end()) return it->second;
  }
  std::unique_lock lock(mutex);
  auto& slot = registry[key];
  if (!slot) slot = std::make_shared<const GaussTable>(field, shift, true);
  return slot;
}

CycloNum GaussTable::poch(std::span<const std::uint32_t> a, std::uint32_t nu) const {
  CycloNum out(Rational(1), m_);
  for (auto alpha : a) out *= g(alpha + nu) * g_inv(alpha);
  return out;
}

CycloNum GaussTable::poch0(std::span<const std::uint32_t> a, std::uint32_t nu) const {
  CycloNum out(Rational(1), m_);
  for (auto alpha : a) out *= g0(alpha + nu) * g0_inv(alpha);
  return out;
}

CycloNum GaussTable::poch0_inv(std::span<const std::uint32_t> a, std::uint32_t nu) const {
  CycloNum out(Rational(1), m_);
  for (auto alpha : a) out *= g0(alpha) * g0_inv(alpha + nu);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_field(const FiniteField& a, const FiniteField& b) {
  if (&a != &b && !(a == b)) throw Error(ErrorCode::FieldMismatch, "character and additive character differ in field");
}

std::shared_ptr<const GaussTable> table_for(const MultChar& chi, const AddChar& psi) {
  require_same_field(chi.field(), psi.field());
  return GaussTable::get(psi);
}

}  // namespace

CycloNum gauss(const MultChar& chi, const AddChar& psi) { return table_for(chi, psi)->g(chi.index()); }
CycloNum gauss0(const MultChar& chi, const AddChar& psi) { return table_for(chi, psi)->g0(chi.index()); }
CycloNum gauss_inverse(const MultChar& chi, const AddChar& psi) { return table_for(chi, psi)->g_inv(chi.index()); }
CycloNum gauss0_inverse(const MultChar& chi, const AddChar& psi) {
  return table_for(chi, psi)->g0_inv(chi.index());
}

CycloNum pochhammer(const ParamSet& a, const MultChar& nu, const AddChar& psi) {
  require_same_field(a.field(), nu.field());
  return table_for(nu, psi)->poch(a.indices(), nu.index());
}

CycloNum pochhammer0(const ParamSet& a, const MultChar& nu, const AddChar& psi) {
  require_same_field(a.field(), nu.field());
  return table_for(nu, psi)->poch0(a.indices(), nu.index());
}

CycloNum jacobi(const MultChar& chi, const MultChar& chi2) {
  require_same_field(chi.field(), chi2.field());
  const FiniteField& k = chi.field();
  const std::uint64_t n = k.units_order();
  CycloAccumulator acc(n);
  for (std::uint32_t t = 0; t < n; ++t) {
    const FieldElem x = k.exp(t);
    const FieldElem y = k.sub(k.one(), x);
    if (y.code == 0) continue;
    acc.add_root((std::uint64_t(chi.index()) * t + std::uint64_t(chi2.index()) * k.discrete_log(y)) % n, -1);
  }
  return acc.finish();
}

std::pair<CycloNum, CycloNum> davenport_hasse_sides(const MultChar& chi, std::int64_t n, const AddChar& psi) {
  const FiniteField& k = chi.field();
  if (n < 1 || k.units_order() % n != 0) {
    throw Error(ErrorCode::NotDivisor, std::to_string(n) + " does not divide q-1 = " + std::to_string(k.units_order()));
  }
  const auto table = table_for(chi, psi);
  const MultChar chi_n = chi.pow(n);
  CycloNum rhs = CycloNum::root_of_unity(table->conductor(), table->char_root(*mult_exponent(chi_n, k.from_int(n))));
  for (const auto& phi : nth_root_chars(k, n)) rhs *= table->g((chi * phi).index()) * table->g_inv(phi.index());
  return {table->g(chi_n.index()), rhs};
}

bool check_davenport_hasse(const MultChar& chi, std::int64_t n, const AddChar& psi) {
  const auto [lhs, rhs] = davenport_hasse_sides(chi, n, psi);
  return lhs == rhs;
}

bool check_davenport_hasse_pochhammer(const MultChar& alpha, const MultChar& nu, std::int64_t n,
                                      const AddChar& psi) {
  const FiniteField& k = alpha.field();
  if (n < 1 || k.units_order() % n != 0) {
    throw Error(ErrorCode::NotDivisor, std::to_string(n) + " does not divide q-1 = " + std::to_string(k.units_order()));
  }
  require_same_field(k, nu.field());
  const auto table = table_for(alpha, psi);
  const MultChar nu_n = nu.pow(n);
  const std::vector<std::uint32_t> alpha_n{alpha.pow(n).index()};
  const CycloNum twist =
      CycloNum::root_of_unity(table->conductor(), table->char_root(*mult_exponent(nu_n, k.from_int(n))));
  CycloNum rhs = twist;
  CycloNum rhs0 = twist;
  for (const auto& phi : nth_root_chars(k, n)) {
    const std::vector<std::uint32_t> member{(alpha * phi).index()};
    rhs *= table->poch(member, nu.index());
    rhs0 *= table->poch0(member, nu.index());
  }
  return table->poch(alpha_n, nu_n.index()) == rhs && table->poch0(alpha_n, nu_n.index()) == rhs0;
}

std::pair<CycloNum, CycloNum> jacobi_pochhammer_bridge(const MultChar& alpha, const MultChar& beta,
                                                       const MultChar& nu, const AddChar& psi) {
  require_same_field(alpha.field(), beta.field());
  require_same_field(alpha.field(), nu.field());
  const auto table = table_for(alpha, psi);
  const std::uint32_t q = table->q();
  const std::uint32_t a = alpha.index();
  const std::uint32_t b = beta.index();
  const std::uint32_t abar = alpha.conj().index();
  const std::uint32_t v = nu.index();

  const CycloNum lhs = jacobi(alpha * nu, (beta * nu).conj());

  // (beta)_{abar} (alpha)_nu / ((eps)°_{abar} (beta)_nu) nu(-1)
  CycloNum rhs = table->g(b + abar) * table->g_inv(b);
  rhs *= table->g(a + v) * table->g_inv(a);
  rhs *= table->g0(0) * table->g0_inv(abar);
  rhs *= table->g(b) * table->g_inv(b + v);
  rhs *= Rational(table->sign(v));
  if ((beta * nu).is_trivial()) rhs += CycloNum(Rational(1 - std::int64_t(q)));
  return {lhs, rhs};
}

}  // namespace finite_hgf
