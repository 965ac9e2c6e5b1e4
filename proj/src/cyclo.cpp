#include "finite_hgf/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "finite_hgf/error.hpp"

namespace finite_hgf {

namespace {

using WidePoly = std::vector<__int128>;

std::vector<std::uint32_t> divisors(std::uint32_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= m; ++d) {
    if (m % d == 0) out.push_back(d);
  }
  return out;
}

// Exact quotient of a by the monic polynomial b.
WidePoly exact_divide(const WidePoly& a, const WidePoly& b) {
  WidePoly rem = a;
  const std::size_t db = b.size() - 1;
  WidePoly quot(a.size() - db, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const __int128 lead = rem[i + db];
    quot[i] = lead;
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= lead * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (rem[i] != 0) throw Error(ErrorCode::InvalidArgument, "inexact cyclotomic division");
  }
  return quot;
}

// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, memoised within one build.
const WidePoly& cyclotomic_poly(std::uint32_t m, std::map<std::uint32_t, WidePoly>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  WidePoly poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  for (auto d : divisors(m)) {
    if (d == m) continue;
    poly = exact_divide(poly, cyclotomic_poly(d, memo));
  }
  return memo.emplace(m, std::move(poly)).first->second;
}

long narrow(__int128 v) {
  if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min()) {
    throw Error(ErrorCode::ConductorTooLarge, "cyclotomic coefficient overflow");
  }
  return long(v);
}

std::uint32_t mod_exponent(std::int64_t k, std::uint32_t m) {
  const std::int64_t r = k % std::int64_t(m);
  return std::uint32_t(r < 0 ? r + m : r);
}

// acc += coeff * row, for a small signed integer coefficient row.
void add_row(std::vector<Integer>& acc, const Integer& coeff, std::span<const long> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    const long r = row[i];
    if (r == 0) continue;
    if (r > 0) {
      mpz_addmul_ui(acc[i].get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(r));
    } else {
      mpz_submul_ui(acc[i].get_mpz_t(), coeff.get_mpz_t(), static_cast<unsigned long>(-r));
    }
  }
}

}  // namespace

std::uint32_t euler_phi(std::uint32_t m) noexcept {
  std::uint32_t result = m;
  std::uint32_t n = m;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      result -= result / d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t l = std::lcm(std::uint64_t(a), std::uint64_t(b));
  if (l > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::ConductorTooLarge, "conductor lcm overflow");
  }
  return std::uint32_t(l);
}

CyclotomicTables::CyclotomicTables(std::uint32_t m) : m_(m), phi_(euler_phi(m)) {
  if (std::uint64_t(m) * phi_ > kMaxTableEntries) {
    throw Error(ErrorCode::ConductorTooLarge, "conductor " + std::to_string(m) + " too large for dense tables");
  }
  std::map<std::uint32_t, WidePoly> memo;
  const WidePoly& wide = cyclotomic_poly(m, memo);
  poly_.reserve(wide.size());
  for (auto c : wide) poly_.push_back(narrow(c));

  // Row e holds x^e mod Phi_m; row e+1 is x * row e with the overflow folded back.
  reduction_.assign(std::size_t(m) * phi_, 0);
  std::vector<__int128> cur(phi_, 0);
  for (std::uint32_t e = 0; e < m; ++e) {
    if (e < phi_) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[e] = 1;
    } else {
      const __int128 lead = cur[phi_ - 1];
      for (std::uint32_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1] - lead * poly_[i];
      cur[0] = -lead * poly_[0];
    }
    for (std::uint32_t i = 0; i < phi_; ++i) reduction_[std::size_t(e) * phi_ + i] = narrow(cur[i]);
  }

  if (m == 1) units_.push_back(1);
  for (std::uint32_t c = 1; c < m; ++c) {
    if (std::gcd(c, m) == 1) units_.push_back(c);
  }
}

const CyclotomicTables& CyclotomicTables::get(std::uint32_t m) {
  static std::shared_mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<CyclotomicTables>> cache;
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "conductor must be positive");
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return *it->second;
  }
  std::unique_lock lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot.reset(new CyclotomicTables(m));
  return *slot;
}

// ---------------------------------------------------------------------------

CycloNum::CycloNum(ZeroTag, std::uint32_t m) : m_(m), num_(CyclotomicTables::get(m).phi()), den_(1) {}

CycloNum::CycloNum(const Rational& value, std::uint32_t m) : CycloNum(ZeroTag{}, m) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycloNum CycloNum::root_of_unity(std::uint32_t m, std::int64_t k) {
  const auto& tables = CyclotomicTables::get(m);
  CycloNum out = zero(m);
  const auto row = tables.reduction_row(mod_exponent(k, m));
  for (std::size_t i = 0; i < row.size(); ++i) out.num_[i] = row[i];
  return out;
}

CycloNum CycloNum::from_coefficients(std::uint32_t m, std::span<const Rational> coeffs) {
  const auto& tables = CyclotomicTables::get(m);
  if (coeffs.size() != tables.phi()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(tables.phi()) + " coefficients for m = " +
                                                std::to_string(m));
  }
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> num(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return from_parts(m, std::move(num), std::move(den));
}

CycloNum CycloNum::from_parts(std::uint32_t m, std::vector<Integer> numerators, Integer denominator) {
  CycloNum out = zero(m);
  if (numerators.size() != out.num_.size()) throw Error(ErrorCode::InvalidArgument, "numerator length mismatch");
  if (denominator == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  out.num_ = std::move(numerators);
  out.den_ = std::move(denominator);
  out.normalize();
  return out;
}

void CycloNum::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g == den_ && is_zero()) {
    den_ = 1;
    return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rational CycloNum::coefficient(std::size_t i) const {
  Rational r(num_.at(i), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> CycloNum::coefficients() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coefficient(i));
  return out;
}

bool CycloNum::is_zero() const noexcept {
  for (const auto& c : num_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycloNum::is_rational() const noexcept {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (sgn(num_[i]) != 0) return false;
  }
  return true;
}

Rational CycloNum::to_rational() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "value is not rational");
  return coefficient(0);
}

CycloNum CycloNum::lift(std::uint32_t M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) {
    throw Error(ErrorCode::NotDivisor, std::to_string(m_) + " does not divide " + std::to_string(M));
  }
  const auto& tables = CyclotomicTables::get(M);
  const std::uint32_t step = M / m_;
  std::vector<Integer> num(tables.phi());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    add_row(num, num_[i], tables.reduction_row(std::uint32_t((i * step) % M)));
  }
  CycloNum out = zero(M);
  out.num_ = std::move(num);
  out.den_ = den_;
  return out;
}

std::optional<CycloNum> CycloNum::lower(std::uint32_t d) const {
  if (d == 0 || m_ % d != 0) {
    throw Error(ErrorCode::NotDivisor, std::to_string(d) + " does not divide " + std::to_string(m_));
  }
  if (d == m_) return *this;
  const auto& big = CyclotomicTables::get(m_);
  const auto& small = CyclotomicTables::get(d);
  const std::size_t rows = big.phi(), cols = small.phi();
  const std::uint32_t step = m_ / d;
  // Augmented system [L | a] where column i of L is the lift of zeta_d^i.
  std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < cols; ++i) {
    const auto row = big.reduction_row(std::uint32_t((i * step) % m_));
    for (std::size_t r = 0; r < rows; ++r) mat[r][i] = row[r];
  }
  for (std::size_t r = 0; r < rows; ++r) mat[r][cols] = coefficient(r);

  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_col_of_row;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && mat[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(mat[sel], mat[pivot_row]);
    const Rational inv = 1 / mat[pivot_row][c];
    for (std::size_t k = c; k <= cols; ++k) mat[pivot_row][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || mat[r][c] == 0) continue;
      const Rational factor = mat[r][c];
      for (std::size_t k = c; k <= cols; ++k) mat[r][k] -= factor * mat[pivot_row][k];
    }
    pivot_col_of_row.push_back(c);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r) {
    if (mat[r][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> coeffs(cols);
  for (std::size_t r = 0; r < pivot_row; ++r) coeffs[pivot_col_of_row[r]] = mat[r][cols];
  return from_coefficients(d, coeffs);
}

CycloNum CycloNum::minimal() const {
  for (auto d : divisors(m_)) {
    if (d == m_) break;
    // The value lies in Q(zeta_d) iff it is fixed by Gal(Q(zeta_m)/Q(zeta_d)).
    if (!lies_in_subfield(d)) continue;
    if (auto low = lower(d)) return *low;
  }
  return *this;
}

CycloNum CycloNum::galois_apply(std::int64_t c) const {
  const std::uint32_t cm = mod_exponent(c, m_);
  if (m_ > 1 && std::gcd(cm, m_) != 1) {
    throw Error(ErrorCode::NotCoprime, std::to_string(c) + " is not coprime to " + std::to_string(m_));
  }
  const auto& tables = CyclotomicTables::get(m_);
  std::vector<Integer> num(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    add_row(num, num_[i], tables.reduction_row(std::uint32_t((std::uint64_t(i) * cm) % m_)));
  }
  CycloNum out = zero(m_);
  out.num_ = std::move(num);
  out.den_ = den_;
  return out;
}

bool CycloNum::lies_in_subfield(std::uint32_t d) const {
  if (d == 0 || m_ % d != 0) {
    throw Error(ErrorCode::NotDivisor, std::to_string(d) + " does not divide " + std::to_string(m_));
  }
  for (auto c : CyclotomicTables::get(m_).units()) {
    if (c % d != 1 % d) continue;
    if (c == 1) continue;
    if (!(galois_apply(c) == *this)) return false;
  }
  return true;
}

Rational CycloNum::norm() const {
  CycloNum prod(Rational(1), m_);
  for (auto c : CyclotomicTables::get(m_).units()) prod *= galois_apply(c);
  return prod.to_rational();
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Rational r = coefficient(0);
    return CycloNum(Rational(1) / r, m_);
  }
  CycloNum others(Rational(1), m_);
  for (auto c : CyclotomicTables::get(m_).units()) {
    if (c == 1) continue;
    others *= galois_apply(c);
  }
  const Rational n = (*this * others).to_rational();
  return others * Rational(1 / n);
}

CycloNum CycloNum::operator-() const {
  CycloNum out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

CycloNum& CycloNum::operator+=(const CycloNum& other) {
  if (other.m_ != m_) {
    const std::uint32_t M = lcm_conductor(m_, other.m_);
    *this = lift(M);
    return *this += other.lift(M);
  }
  if (den_ == other.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), other.den_.get_mpz_t());
    const Integer fa = l / den_, fb = l / other.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] *= fa;
      mpz_addmul(num_[i].get_mpz_t(), other.num_[i].get_mpz_t(), fb.get_mpz_t());
    }
    den_ = l;
  }
  normalize();
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& other) { return *this += -other; }

CycloNum& CycloNum::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    for (auto& c : num_) c = 0;
    den_ = 1;
    return *this;
  }
  for (auto& c : num_) c *= r.get_num();
  den_ *= r.get_den();
  normalize();
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& other) {
  *this = *this * other;
  return *this;
}

CycloNum CycloNum::multiply_same(const CycloNum& a, const CycloNum& b) {
  const auto& tables = CyclotomicTables::get(a.m_);
  const std::size_t phi = tables.phi();
  const std::uint32_t m = a.m_;
  std::vector<Integer> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    const mpz_srcptr ai = a.num_[i].get_mpz_t();
    for (std::size_t j = 0; j < phi; ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), ai, b.num_[j].get_mpz_t());
    }
  }
  CycloNum out = zero(m);
  for (std::size_t i = 0; i < phi; ++i) out.num_[i].swap(prod[i]);
  for (std::size_t e = phi; e < prod.size(); ++e) {
    if (sgn(prod[e]) == 0) continue;
    add_row(out.num_, prod[e], tables.reduction_row(std::uint32_t(e % m)));
  }
  out.den_ = a.den_ * b.den_;
  out.normalize();
  return out;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.m_ == b.m_) return CycloNum::multiply_same(a, b);
  const std::uint32_t M = lcm_conductor(a.m_, b.m_);
  return CycloNum::multiply_same(a.lift(M), b.lift(M));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.m_ == b.m_) return a.den_ == b.den_ && a.num_ == b.num_;
  const std::uint32_t M = lcm_conductor(a.m_, b.m_);
  return a.lift(M) == b.lift(M);
}

CycloNum CycloNum::rotate(std::int64_t k) const {
  const auto& tables = CyclotomicTables::get(m_);
  const std::uint32_t shift = mod_exponent(k, m_);
  CycloNum out = zero(m_);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    add_row(out.num_, num_[i], tables.reduction_row(std::uint32_t((i + shift) % m_)));
  }
  out.den_ = den_;
  return out;
}

std::complex<double> CycloNum::approx() const {
  std::complex<double> sum = 0.0;
  const double den = den_.get_d();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    const double angle = 2.0 * std::numbers::pi * double(i) / double(m_);
    sum += (num_[i].get_d() / den) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

nlohmann::json CycloNum::to_json() const {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const Rational c = coefficient(i);
    coeffs.push_back(c.get_num().get_str() + "/" + c.get_den().get_str());
  }
  return nlohmann::json{{"m", m_}, {"coeffs", std::move(coeffs)}};
}

CycloNum CycloNum::from_json(const nlohmann::json& j) {
  try {
    const auto m = j.at("m").get<std::uint32_t>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) {
      Rational r;
      if (c.is_number_integer()) {
        r = Rational(Integer(c.get<long>()));
      } else {
        if (r.set_str(c.get<std::string>(), 10) != 0) {
          throw Error(ErrorCode::ParseError, "bad rational '" + c.get<std::string>() + "'");
        }
        if (sgn(r.get_den()) == 0) throw Error(ErrorCode::ParseError, "zero denominator");
        r.canonicalize();
      }
      coeffs.push_back(std::move(r));
    }
    return from_coefficients(m, coeffs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string CycloNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    const Rational c = coefficient(i);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    const Rational mag = abs(c);
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << m_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------

CycloAccumulator::CycloAccumulator(std::uint32_t m) : m_(m), slots_(m), den_(1) {
  (void)CyclotomicTables::get(m);
}

void CycloAccumulator::rescale_to(const Integer& den) {
  const Integer factor = den / den_;
  for (auto& s : slots_) {
    if (sgn(s) != 0) s *= factor;
  }
  den_ = den;
}

void CycloAccumulator::add_rotated(const CycloNum& value, std::uint64_t k) {
  if (value.m() != m_) {
    add_rotated(value.lift(m_), k);
    return;
  }
  const auto& vnum = value.numerators();
  const Integer& vden = value.denominator();
  Integer factor = 1;
  if (vden != den_) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), vden.get_mpz_t());
    if (l != den_) rescale_to(l);
    factor = den_ / vden;
  }
  const std::uint64_t shift = k % m_;
  const bool unit = factor == 1;
  for (std::size_t i = 0; i < vnum.size(); ++i) {
    if (sgn(vnum[i]) == 0) continue;
    std::size_t slot = std::size_t(i + shift);
    if (slot >= m_) slot -= m_;
    if (unit) {
      slots_[slot] += vnum[i];
    } else {
      mpz_addmul(slots_[slot].get_mpz_t(), vnum[i].get_mpz_t(), factor.get_mpz_t());
    }
  }
}

void CycloAccumulator::add_root(std::uint64_t k, long coeff) {
  Integer& s = slots_[k % m_];
  if (coeff >= 0) {
    mpz_addmul_ui(s.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(coeff));
  } else {
    mpz_submul_ui(s.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(-coeff));
  }
}

CycloNum CycloAccumulator::finish() const {
  const auto& tables = CyclotomicTables::get(m_);
  const std::uint32_t phi = tables.phi();
  std::vector<Integer> num(slots_.begin(), slots_.begin() + phi);
  for (std::uint32_t e = phi; e < m_; ++e) {
    if (sgn(slots_[e]) == 0) continue;
    add_row(num, slots_[e], tables.reduction_row(e));
  }
  return CycloNum::from_parts(m_, std::move(num), den_);
}

void CycloAccumulator::clear() {
  for (auto& s : slots_) s = 0;
  den_ = 1;
}

}  // namespace finite_hgf
