#include "finite_hgf/gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "finite_hgf/error.hpp"

namespace finite_hgf {

namespace {

using Poly = std::vector<std::uint32_t>;  // lowest degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = std::uint64_t(lead) * m[i] % p;
      a[shift + i] = std::uint32_t((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomial-basis arithmetic used before the log tables exist.
class PolyArith {
 public:
  PolyArith(std::uint32_t p, unsigned f, Poly modulus)
      : p_(p), f_(f), modulus_(std::move(modulus)) {
    pow_p_.assign(f + 1, 1);
    for (unsigned i = 1; i <= f; ++i) pow_p_[i] = pow_p_[i - 1] * p;
  }

  Poly decode(std::uint32_t code) const {
    Poly c(f_);
    for (unsigned i = 0; i < f_; ++i) {
      c[i] = code % p_;
      code /= p_;
    }
    return c;
  }

  std::uint32_t encode(const Poly& c) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < c.size() && i < f_; ++i) code += c[i] * pow_p_[i];
    return code;
  }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    const Poly a = decode(x), b = decode(y);
    Poly prod(2 * f_ - 1, 0);
    for (unsigned i = 0; i < f_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < f_; ++j) {
        prod[i + j] = std::uint32_t((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p_);
      }
    }
    return encode(poly_mod(std::move(prod), modulus_, p_));
  }

  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
    std::uint32_t result = 1;
    while (e > 0) {
      if (e & 1) result = mul(result, x);
      x = mul(x, x);
      e >>= 1;
    }
    return result;
  }

 private:
  std::uint32_t p_;
  unsigned f_;
  Poly modulus_;
  std::vector<std::uint32_t> pow_p_;
};

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const Poly m(monic.begin(), monic.end());
  const std::size_t deg = m.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly divisor(d + 1);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = std::uint32_t(rest % p);
        rest /= p;
      }
      divisor[d] = 1;
      if (poly_mod(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned f) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < f; ++i) count *= p;
  Poly candidate(f + 1);
  candidate[f] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit of idx.
    std::uint64_t rest = idx;
    for (unsigned i = f; i-- > 0;) {
      candidate[i] = std::uint32_t(rest % p);
      rest /= p;
    }
    if (is_irreducible(p, candidate)) return candidate;
  }
  throw Error(ErrorCode::ReducibleModulus,
              "no irreducible polynomial of degree " + std::to_string(f));
}

std::shared_ptr<const FiniteField> FiniteField::construct(
    std::uint32_t p, unsigned f, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorCode::InvalidField, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw Error(ErrorCode::FieldTooLarge,
                  "q = " + std::to_string(p) + "^" + std::to_string(f) + " exceeds 2^16");
    }
  }

  Poly mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != f + 1 || mod.back() != 1) {
      throw Error(ErrorCode::ReducibleModulus, "modulus must be monic of degree " + std::to_string(f));
    }
    for (auto c : mod) {
      if (c >= p) throw Error(ErrorCode::ReducibleModulus, "modulus coefficient out of range");
    }
    if (!is_irreducible(p, mod)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible");
  } else {
    mod = smallest_irreducible(p, f);
  }

  auto field = std::shared_ptr<FiniteField>(new FiniteField());
  field->p_ = p;
  field->f_ = f;
  field->q_ = std::uint32_t(q);
  field->modulus_ = mod;
  field->pow_p_.assign(f + 1, 1);
  for (unsigned i = 1; i <= f; ++i) field->pow_p_[i] = field->pow_p_[i - 1] * p;

  const PolyArith arith(p, f, mod);
  const std::uint32_t order = field->q_ - 1;
  const auto factors = prime_factors(order);
  std::optional<std::uint32_t> gen;
  for (std::uint32_t code = 1; code < field->q_ && !gen; ++code) {
    bool primitive = true;
    for (auto r : factors) {
      if (arith.pow(code, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen = code;
  }
  if (!gen) throw Error(ErrorCode::NoGenerator, "no element of order q-1 found");
  field->generator_ = FieldElem{*gen};

  field->exp_.resize(order);
  field->log_.assign(field->q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t t = 0; t < order; ++t) {
    field->exp_[t] = x;
    field->log_[x] = t;
    x = arith.mul(x, *gen);
  }
  if (x != 1) throw Error(ErrorCode::NoGenerator, "generator power cycle did not close");

  field->trace_.assign(field->q_, 0);
  for (std::uint32_t code = 0; code < field->q_; ++code) {
    FieldElem acc{0};
    FieldElem y{code};
    for (unsigned i = 0; i < f; ++i) {
      acc = field->add(acc, y);
      y = field->pow(y, p);
    }
    if (acc.code >= p) throw Error(ErrorCode::NoGenerator, "trace left the prime field");
    field->trace_[code] = acc.code;
  }
  return field;
}

std::shared_ptr<const FiniteField> FiniteField::from_order(std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidField, "q = " + std::to_string(q) + " is not a prime power");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned f = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++f;
  }
  if (rest != 1) throw Error(ErrorCode::InvalidField, "q = " + std::to_string(q) + " is not a prime power");
  return construct(p, f);
}

FieldElem FiniteField::from_int(std::int64_t n) const noexcept {
  const std::int64_t r = ((n % std::int64_t(p_)) + p_) % p_;
  return FieldElem{std::uint32_t(r)};
}

FieldElem FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > f_) throw Error(ErrorCode::InvalidArgument, "too many coefficients");
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) code += (coeffs[i] % p_) * pow_p_[i];
  return FieldElem{code};
}

std::vector<std::uint32_t> FiniteField::coefficients(FieldElem x) const {
  std::vector<std::uint32_t> c(f_);
  std::uint32_t code = x.code;
  for (unsigned i = 0; i < f_; ++i) {
    c[i] = code % p_;
    code /= p_;
  }
  return c;
}

FieldElem FiniteField::element(std::uint32_t code) const {
  if (code >= q_) {
    throw Error(ErrorCode::InvalidArgument,
                "element code " + std::to_string(code) + " out of range for q = " + std::to_string(q_));
  }
  return FieldElem{code};
}

FieldElem FiniteField::add(FieldElem x, FieldElem y) const noexcept {
  if (p_ == 2) return FieldElem{x.code ^ y.code};
  if (f_ == 1) return FieldElem{(x.code + y.code) % p_};
  std::uint32_t a = x.code, b = y.code, out = 0;
  for (unsigned i = 0; i < f_; ++i) {
    out += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return FieldElem{out};
}

FieldElem FiniteField::neg(FieldElem x) const noexcept {
  if (p_ == 2) return x;
  if (f_ == 1) return FieldElem{(p_ - x.code) % p_};
  std::uint32_t a = x.code, out = 0;
  for (unsigned i = 0; i < f_; ++i) {
    out += ((p_ - a % p_) % p_) * pow_p_[i];
    a /= p_;
  }
  return FieldElem{out};
}

FieldElem FiniteField::sub(FieldElem x, FieldElem y) const noexcept { return add(x, neg(y)); }

FieldElem FiniteField::mul(FieldElem x, FieldElem y) const noexcept {
  if (x.code == 0 || y.code == 0) return zero();
  const std::uint32_t order = q_ - 1;
  std::uint32_t t = log_[x.code] + log_[y.code];
  if (t >= order) t -= order;
  return FieldElem{exp_[t]};
}

FieldElem FiniteField::inv(FieldElem x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in GF(" + std::to_string(q_) + ")");
  const std::uint32_t order = q_ - 1;
  return FieldElem{exp_[(order - log_[x.code]) % order]};
}

FieldElem FiniteField::div(FieldElem x, FieldElem y) const { return mul(x, inv(y)); }

FieldElem FiniteField::pow(FieldElem x, std::uint64_t e) const noexcept {
  if (e == 0) return one();
  if (x.code == 0) return zero();
  const std::uint64_t order = q_ - 1;
  return FieldElem{exp_[(std::uint64_t(log_[x.code]) * (e % order)) % order]};
}

std::uint32_t FiniteField::discrete_log(FieldElem x) const {
  if (x.code == 0) throw Error(ErrorCode::LogOfZero, "discrete log of 0");
  if (x.code >= q_) throw Error(ErrorCode::InvalidArgument, "element code out of range");
  return log_[x.code];
}

std::vector<FieldElem> FiniteField::elements() const {
  std::vector<FieldElem> out;
  out.reserve(q_);
  out.push_back(zero());
  for (auto code : exp_) out.push_back(FieldElem{code});
  return out;
}

std::vector<FieldElem> FiniteField::units() const {
  std::vector<FieldElem> out;
  out.reserve(q_ - 1);
  for (auto code : exp_) out.push_back(FieldElem{code});
  return out;
}

nlohmann::json FiniteField::descriptor() const {
  return nlohmann::json{{"p", p_}, {"f", f_}, {"q", q_}, {"modulus", modulus_}, {"generator", generator_.code}};
}

}  // namespace finite_hgf
