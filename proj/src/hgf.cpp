#include "finite_hgf/hgf.hpp"

#include <algorithm>
#include <numeric>

#include "finite_hgf/error.hpp"

namespace finite_hgf {

namespace {

void require_same_field(const FiniteField& a, const FiniteField& b) {
  if (&a != &b && !(a == b)) throw Error(ErrorCode::FieldMismatch, "arguments belong to different fields");
}

bool same_pair(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return (a == c && b == d) || (a == d && b == c);
}

}  // namespace

HgfSpec::HgfSpec(ParamSet num, ParamSet den, AddChar add)
    : numerator(std::move(num)), denominator(std::move(den)), psi(add) {
  require_same_field(numerator.field(), denominator.field());
  require_same_field(numerator.field(), psi.field());
}

nlohmann::json HgfSpec::to_json() const {
  return {{"num", numerator.to_string()}, {"den", denominator.to_string()}, {"psi_shift", psi.shift().code}};
}

// ---------------------------------------------------------------------------

HgfKernel::HgfKernel(const FiniteField& field, FieldElem shift)
    : field_(&field), table_(GaussTable::get(field, shift)), scale_(1, 1 - std::int64_t(field.q())) {}

std::vector<CycloNum> HgfKernel::coefficients(std::span<const std::uint32_t> num,
                                              std::span<const std::uint32_t> den) const {
  const GaussTable& t = *table_;
  const std::uint32_t n = t.units_order();
  // (A)_nu / (B)°_nu = K prod g(alpha nu) prod 1/g°(beta nu), K independent of nu.
  CycloNum k(Rational(1), t.conductor());
  for (auto a : num) k *= t.g_inv(a);
  for (auto b : den) k *= t.g0(b);
  std::vector<CycloNum> out;
  out.reserve(n);
  for (std::uint32_t nu = 0; nu < n; ++nu) {
    CycloNum c = k;
    for (auto a : num) c *= t.g(a + nu);
    for (auto b : den) c *= t.g0_inv(b + nu);
    out.push_back(std::move(c));
  }
  return out;
}

CycloNum HgfKernel::value(std::span<const CycloNum> coeffs, FieldElem lambda) const {
  if (lambda.code == 0) return CycloNum::zero(table_->conductor());
  const std::uint64_t t = field_->discrete_log(lambda);
  CycloAccumulator acc(table_->conductor());
  for (std::uint32_t nu = 0; nu < coeffs.size(); ++nu) acc.add_rotated(coeffs[nu], table_->char_root(nu * t));
  return acc.finish() * scale_;
}

CycloNum HgfKernel::eval(std::span<const std::uint32_t> num, std::span<const std::uint32_t> den,
                         FieldElem lambda) const {
  if (lambda.code == 0) return CycloNum::zero(table_->conductor());
  return value(coefficients(num, den), lambda);
}

std::vector<CycloNum> HgfKernel::table(std::span<const std::uint32_t> num, std::span<const std::uint32_t> den,
                                       bool parallel) const {
  const std::vector<CycloNum> coeffs = coefficients(num, den);
  const std::uint32_t n = table_->units_order();
  std::vector<CycloNum> out(field_->q(), CycloNum::zero(table_->conductor()));
  const auto exp = field_->exp_table();
  const std::int64_t count = n;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t t = 0; t < count; ++t) {
    CycloAccumulator acc(table_->conductor());
    for (std::uint32_t nu = 0; nu < n; ++nu) acc.add_rotated(coeffs[nu], table_->char_root(nu * std::uint64_t(t)));
    out[exp[t]] = acc.finish() * scale_;
  }
  return out;
}

std::vector<CycloNum> HgfKernel::f4_coefficients(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                                 std::uint32_t c2) const {
  const GaussTable& t = *table_;
  const std::uint32_t n = t.units_order();
  const std::vector<std::uint32_t> num{a, b}, den{0, c}, den2{0, c2};
  std::vector<CycloNum> poch(n), inv(n), inv2(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    poch[s] = t.poch(num, s);
    inv[s] = t.poch0_inv(den, s);
    inv2[s] = t.poch0_inv(den2, s);
  }
  std::vector<CycloNum> out(std::size_t(n) * n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t w = 0; w < n; ++w) out[std::size_t(v) * n + w] = poch[(v + w) % n] * inv[v] * inv2[w];
  }
  return out;
}

CycloNum HgfKernel::f4(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2, FieldElem lambda,
                       FieldElem lambda2) const {
  if (lambda.code == 0 || lambda2.code == 0) return CycloNum::zero(table_->conductor());
  const std::uint32_t n = table_->units_order();
  const auto coeffs = f4_coefficients(a, b, c, c2);
  const std::uint64_t t = field_->discrete_log(lambda), t2 = field_->discrete_log(lambda2);
  CycloAccumulator acc(table_->conductor());
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t w = 0; w < n; ++w) acc.add_rotated(coeffs[std::size_t(v) * n + w], table_->char_root(v * t + w * t2));
  }
  return acc.finish() * (scale_ * scale_);
}

std::vector<CycloNum> HgfKernel::f4_grid(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2,
                                         bool parallel) const {
  const std::uint32_t n = table_->units_order();
  const std::uint32_t q = field_->q();
  const std::uint32_t m = table_->conductor();
  const auto coeffs = f4_coefficients(a, b, c, c2);
  const auto exp = field_->exp_table();
  const std::int64_t count = n;

  // Transform the second variable first: inner[v][t2] = sum_w c[v][w] zeta^{w t2}.
  std::vector<CycloNum> inner(std::size_t(n) * n);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t v = 0; v < count; ++v) {
    CycloAccumulator acc(m);
    for (std::uint32_t t2 = 0; t2 < n; ++t2) {
      acc.clear();
      for (std::uint32_t w = 0; w < n; ++w) acc.add_rotated(coeffs[std::size_t(v) * n + w], table_->char_root(std::uint64_t(w) * t2));
      inner[std::size_t(v) * n + t2] = acc.finish();
    }
  }

  std::vector<CycloNum> out(std::size_t(q) * q, CycloNum::zero(m));
  const Rational scale = scale_ * scale_;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t t = 0; t < count; ++t) {
    CycloAccumulator acc(m);
    for (std::uint32_t t2 = 0; t2 < n; ++t2) {
      acc.clear();
      for (std::uint32_t v = 0; v < n; ++v) acc.add_rotated(inner[std::size_t(v) * n + t2], table_->char_root(std::uint64_t(v) * t));
      out[std::size_t(exp[t]) * q + exp[t2]] = acc.finish() * scale;
    }
  }
  return out;
}

std::vector<CycloNum> HgfKernel::f4_diagonal(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                             std::uint32_t c2) const {
  const GaussTable& t = *table_;
  const std::uint32_t n = t.units_order();
  const std::uint32_t m = t.conductor();
  const std::vector<std::uint32_t> num{a, b}, den{0, c}, den2{0, c2};
  std::vector<CycloNum> inv(n), inv2(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    inv[s] = t.poch0_inv(den, s);
    inv2[s] = t.poch0_inv(den2, s);
  }
  // Coefficient of nu^s: (A)_s sum_{v + w = s} 1/((eps + c)°_v (eps + c2)°_w).
  std::vector<CycloNum> collapsed(n, CycloNum::zero(m));
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t v = 0; v < n; ++v) collapsed[s] += inv[v] * inv2[(s + n - v) % n];
    collapsed[s] *= t.poch(num, s);
  }
  const auto exp = field_->exp_table();
  const Rational scale = scale_ * scale_;
  std::vector<CycloNum> out(field_->q(), CycloNum::zero(m));
  CycloAccumulator acc(m);
  for (std::uint32_t e = 0; e < n; ++e) {
    acc.clear();
    for (std::uint32_t s = 0; s < n; ++s) acc.add_rotated(collapsed[s], t.char_root(std::uint64_t(s) * e));
    out[exp[e]] = acc.finish() * scale;
  }
  return out;
}

CycloNum HgfKernel::euler_gauss(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  const GaussTable& t = *table_;
  const std::uint32_t n = t.units_order();
  a %= n, b %= n, c %= n;
  if (same_pair(a, b, 0, c)) {
    const std::int64_t q = t.q();
    return CycloNum(Rational(1 + (c == 0 ? q : 1) * (1 - q)));
  }
  const std::uint32_t abar = n - a, bbar = n - b;
  return t.g0(c) * t.g(abar + bbar + c) * t.g0_inv(abar + c) * t.g0_inv(bbar + c);
}

CycloNum HgfKernel::kummer(std::uint32_t a, std::uint32_t b) const {
  const GaussTable& t = *table_;
  if (t.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "Kummer evaluation needs p != 2");
  const std::uint32_t n = t.units_order();
  const std::uint32_t a2 = (2 * a) % n, bbar = n - b % n;
  CycloNum out = CycloNum::zero(t.conductor());
  for (std::uint32_t ap : {a % n, (a + n / 2) % n}) out += t.g0(a2 + bbar) * t.g(ap) * t.g_inv(a2) * t.g0_inv(ap + bbar);
  return out;
}

CycloNum HgfKernel::dixon(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  const GaussTable& t = *table_;
  if (t.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "Dixon evaluation needs p != 2");
  const std::uint32_t n = t.units_order();
  a %= n, b %= n, c %= n;
  const std::uint32_t a2 = (2 * a) % n;
  if (a2 == (b + c) % n) throw Error(ErrorCode::HypothesisViolated, "alpha^2 = beta gamma");
  const std::uint32_t roots[2] = {a, (a + n / 2) % n};
  for (auto ap : roots) {
    if (same_pair(b, c, 0, ap)) throw Error(ErrorCode::HypothesisViolated, "beta + gamma = eps + alpha' with alpha'^2 = alpha^2");
  }
  const std::uint32_t bbar = n - b, cbar = n - c;
  const CycloNum common = t.g0(a2 + bbar) * t.g0(a2 + cbar) * t.g_inv(a2) * t.g_inv(a2 + bbar + cbar);
  CycloNum out = CycloNum::zero(t.conductor());
  for (auto ap : roots) out += t.g(ap) * t.g(ap + bbar + cbar) * t.g0_inv(ap + bbar) * t.g0_inv(ap + cbar);
  return common * out;
}

// ---------------------------------------------------------------------------

CycloNum hgf_eval(const HgfSpec& spec, FieldElem lambda) {
  return HgfKernel(spec.psi).eval(spec.numerator.indices(), spec.denominator.indices(), lambda);
}

std::vector<CycloNum> hgf_table(const HgfSpec& spec) {
  return HgfKernel(spec.psi).table(spec.numerator.indices(), spec.denominator.indices());
}

CycloNum rfs_eval(const std::vector<MultChar>& num, const std::vector<MultChar>& den, const AddChar& psi,
                  FieldElem lambda) {
  const FiniteField& k = psi.field();
  ParamSet bottom(k, den);
  bottom.insert(MultChar::trivial(k));
  return hgf_eval(HgfSpec(ParamSet(k, num), bottom, psi), lambda);
}

CycloNum appell_f4(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const MultChar& gamma2,
                   const AddChar& psi, FieldElem lambda, FieldElem lambda2) {
  for (const auto* chi : {&alpha, &beta, &gamma, &gamma2}) require_same_field(chi->field(), psi.field());
  return HgfKernel(psi).f4(alpha.index(), beta.index(), gamma.index(), gamma2.index(), lambda, lambda2);
}

CycloNum euler_gauss_2f1_at_1(const MultChar& alpha, const MultChar& beta, const MultChar& gamma,
                              const AddChar& psi) {
  for (const auto* chi : {&alpha, &beta, &gamma}) require_same_field(chi->field(), psi.field());
  return HgfKernel(psi).euler_gauss(alpha.index(), beta.index(), gamma.index());
}

CycloNum kummer_2f1_at_minus1(const MultChar& alpha, const MultChar& beta, const AddChar& psi) {
  for (const auto* chi : {&alpha, &beta}) require_same_field(chi->field(), psi.field());
  return HgfKernel(psi).kummer(alpha.index(), beta.index());
}

CycloNum dixon_3f2_at_1(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const AddChar& psi) {
  for (const auto* chi : {&alpha, &beta, &gamma}) require_same_field(chi->field(), psi.field());
  return HgfKernel(psi).dixon(alpha.index(), beta.index(), gamma.index());
}

bool pfaff_transform_check(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, FieldElem x,
                           const AddChar& psi) {
  for (const auto* chi : {&alpha, &beta, &gamma}) require_same_field(chi->field(), psi.field());
  const FiniteField& k = psi.field();
  if (x == k.one()) throw Error(ErrorCode::XEqualsOne, "the Pfaff transformation needs x != 1");
  const HgfKernel kernel(psi);
  const std::uint32_t n = k.units_order();
  const std::uint32_t a = alpha.index(), b = beta.index(), c = gamma.index();
  const std::vector<std::uint32_t> lhs_num{a, (n - b + c) % n}, num{a, b}, den{0, c};
  const CycloNum lhs = kernel.eval(lhs_num, den, x);
  const FieldElem one_minus = k.sub(k.one(), x);
  const FieldElem arg = k.div(x, k.neg(one_minus));
  const CycloNum rhs = eval_mult(alpha.conj(), one_minus) * kernel.eval(num, den, arg);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

namespace {

std::uint32_t common_conductor(std::span<const CycloNum> values, std::uint32_t n) {
  std::uint32_t m = n;
  for (const auto& v : values) m = lcm_conductor(m, v.m());
  return m;
}

// Shared body of the forward (sign = -1) and inverse (sign = +1) transforms.
std::vector<CycloNum> transform(const FiniteField& field, std::span<const CycloNum> f, int sign) {
  const std::uint32_t n = field.units_order();
  const std::size_t size = f.size();
  const bool two_dim = size == std::size_t(n) * n && n > 1;
  if (size != n && !two_dim) {
    throw Error(ErrorCode::InvalidArgument, "Fourier input must have q-1 or (q-1)^2 entries, got " + std::to_string(size));
  }
  const std::uint32_t m = common_conductor(f, n);
  const std::uint64_t step = m / n;
  auto root = [&](std::uint64_t e) { return sign < 0 ? (m - (e % n) * step) % m : ((e % n) * step) % m; };
  std::vector<CycloNum> out;
  out.reserve(size);
  CycloAccumulator acc(m);
  if (!two_dim) {
    for (std::uint32_t j = 0; j < n; ++j) {
      acc.clear();
      for (std::uint32_t t = 0; t < n; ++t) acc.add_rotated(f[t], root(std::uint64_t(j) * t));
      out.push_back(acc.finish());
    }
  } else {
    for (std::uint32_t j = 0; j < n; ++j) {
      for (std::uint32_t j2 = 0; j2 < n; ++j2) {
        acc.clear();
        for (std::uint32_t t = 0; t < n; ++t) {
          for (std::uint32_t t2 = 0; t2 < n; ++t2) acc.add_rotated(f[std::size_t(t) * n + t2], root(std::uint64_t(j) * t + std::uint64_t(j2) * t2));
        }
        out.push_back(acc.finish());
      }
    }
  }
  if (sign > 0) {
    const Rational scale(1, two_dim ? std::uint64_t(n) * n : n);
    for (auto& v : out) v *= scale;
  }
  return out;
}

}  // namespace

std::vector<CycloNum> fourier(const FiniteField& field, std::span<const CycloNum> f) { return transform(field, f, -1); }

std::vector<CycloNum> fourier_inverse(const FiniteField& field, std::span<const CycloNum> fhat) {
  return transform(field, fhat, +1);
}

// ---------------------------------------------------------------------------

namespace reference {

namespace {

// Gauss sums by the defining sum, each computed on demand.
class DirectGauss {
 public:
  explicit DirectGauss(const AddChar& psi) : psi_(psi), values_(psi.field().units_order()) {}

  const CycloNum& g(std::int64_t j) {
    const FiniteField& k = psi_.field();
    const MultChar chi(k, j);
    auto& slot = values_[chi.index()];
    if (!slot) {
      CycloNum s = CycloNum::zero(1);
      for (auto x : k.elements()) s -= eval_add(psi_, x) * eval_mult(chi, x);
      slot = std::move(s);
    }
    return *slot;
  }

  CycloNum g0(std::int64_t j) {
    const MultChar chi(psi_.field(), j);
    return chi.is_trivial() ? g(j) * Rational(psi_.field().q()) : g(j);
  }

 private:
  AddChar psi_;
  std::vector<std::optional<CycloNum>> values_;
};

CycloNum poch(DirectGauss& gs, const ParamSet& a, std::uint32_t nu) {
  CycloNum out(1);
  for (auto alpha : a.indices()) out *= gs.g(std::int64_t(alpha) + nu) / gs.g(alpha);
  return out;
}

CycloNum poch0(DirectGauss& gs, const ParamSet& a, std::uint32_t nu) {
  CycloNum out(1);
  for (auto alpha : a.indices()) out *= gs.g0(std::int64_t(alpha) + nu) / gs.g0(alpha);
  return out;
}

CycloNum eval_with(DirectGauss& gs, const HgfSpec& spec, FieldElem lambda) {
  const FiniteField& k = spec.field();
  CycloNum sum(0);
  for (std::uint32_t nu = 0; nu < k.units_order(); ++nu) {
    const CycloNum weight = eval_mult(MultChar(k, nu), lambda);
    if (weight.is_zero()) continue;
    sum += poch(gs, spec.numerator, nu) / poch0(gs, spec.denominator, nu) * weight;
  }
  return sum * Rational(1, 1 - std::int64_t(k.q()));
}

}  // namespace

CycloNum hgf_eval(const HgfSpec& spec, FieldElem lambda) {
  DirectGauss gs(spec.psi);
  return eval_with(gs, spec, lambda);
}

std::vector<CycloNum> hgf_table(const HgfSpec& spec) {
  DirectGauss gs(spec.psi);
  std::vector<CycloNum> out;
  for (std::uint32_t code = 0; code < spec.field().q(); ++code) out.push_back(eval_with(gs, spec, FieldElem{code}));
  return out;
}

CycloNum appell_f4(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const MultChar& gamma2,
                   const AddChar& psi, FieldElem lambda, FieldElem lambda2) {
  const FiniteField& k = psi.field();
  DirectGauss gs(psi);
  const ParamSet num(k, std::vector<MultChar>{alpha, beta});
  const ParamSet den(k, std::vector<MultChar>{MultChar::trivial(k), gamma});
  const ParamSet den2(k, std::vector<MultChar>{MultChar::trivial(k), gamma2});
  CycloNum sum(0);
  for (std::uint32_t v = 0; v < k.units_order(); ++v) {
    for (std::uint32_t w = 0; w < k.units_order(); ++w) {
      const CycloNum weight = eval_mult(MultChar(k, v), lambda) * eval_mult(MultChar(k, w), lambda2);
      if (weight.is_zero()) continue;
      sum += poch(gs, num, v + w) / (poch0(gs, den, v) * poch0(gs, den2, w)) * weight;
    }
  }
  const Rational scale(1, 1 - std::int64_t(k.q()));
  return sum * (scale * scale);
}

}  // namespace reference

}  // namespace finite_hgf
