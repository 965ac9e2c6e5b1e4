#include "finite_hgf/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <random>

#include "finite_hgf/chars.hpp"
#include "finite_hgf/error.hpp"
#include "finite_hgf/hgf.hpp"
#include "finite_hgf/sums.hpp"

namespace finite_hgf {

namespace {

using Q = Quantifier;

const std::vector<IdentityInfo> kCatalog{
    {IdentityId::StructG1, "STRUCT-G1", {"alpha", "beta", "nu"}, Q::Named, "none",
     "(alpha)_{beta nu} = (alpha)_beta (alpha beta)_nu, and the same for the ° symbols"},
    {IdentityId::StructG2, "STRUCT-G2", {"chi"}, Q::Named, "none", "g(chi) g°(conj chi) = q chi(-1)"},
    {IdentityId::StructG3, "STRUCT-G3", {"alpha", "nu"}, Q::Named, "none",
     "(alpha)_nu (conj alpha)°_{conj nu} = nu(-1)"},
    {IdentityId::StructG5, "STRUCT-G5", {"alpha", "nu", "d"}, Q::Named, "d | q-1",
     "(alpha^d)_{nu^d} = nu^d(d) prod_{phi^d = eps} (alpha phi)_nu, and the same for the ° symbols"},
    {IdentityId::StructJ1, "STRUCT-J1", {"chi", "chi2"}, Q::Named, "none",
     "j(chi, chi2) = g(chi) g(chi2) / g°(chi chi2) - delta(chi) delta(chi2) (1-q)^2 / q"},
    {IdentityId::StructJ2, "STRUCT-J2", {"alpha", "beta", "nu"}, Q::Named, "none",
     "j(alpha nu, conj(beta nu)) = (beta)_{conj alpha} (alpha)_nu / ((eps)°_{conj alpha} (beta)_nu) nu(-1) + "
     "delta(beta nu)(1-q)"},
    {IdentityId::StructG8, "STRUCT-G8", {"alpha1", "alpha2", "beta", "phi"}, Q::LambdaUnits, "none",
     "F(A, B; l) = (A)_phi / (B)°_phi phi(l) F(A phi, B phi; l) with A = alpha1 + alpha2, B = eps + beta"},
    {IdentityId::StructG9, "STRUCT-G9", {"alpha1", "alpha2", "beta"}, Q::LambdaUnits, "none",
     "F(B, A; l) = F(conj A, conj B; (-1)^deg(A+B) / l) with A = alpha1 + alpha2, B = beta"},
    {IdentityId::StructG10, "STRUCT-G10", {"alpha", "beta", "gamma"}, Q::Lambda, "none",
     "F(A + C, B + C; l) = q^(C,eps) (F(A, B; l) + correction) with A = alpha, B = eps + beta, C = gamma"},
    {IdentityId::ClosedG11, "CLOSED-G11", {"alpha", "beta", "gamma"}, Q::Named, "none",
     "2F1(alpha, beta; gamma; 1) equals its Euler-Gauss closed form"},
    {IdentityId::ClosedG12, "CLOSED-G12", {"alpha", "beta"}, Q::Named, "p != 2",
     "2F1(alpha^2, beta; alpha^2 conj beta; -1) equals its Kummer closed form"},
    {IdentityId::ClosedG13, "CLOSED-G13", {"alpha", "beta", "gamma"}, Q::Named,
     "p != 2, alpha^2 != beta gamma, beta + gamma != eps + alpha' for alpha'^2 = alpha^2",
     "3F2(alpha^2, beta, gamma; alpha^2 conj beta, alpha^2 conj gamma; 1) equals its Dixon closed form"},
    {IdentityId::P1KummerExp, "P1-KUMMER-EXP", {"alpha", "beta"}, Q::Lambda, "(alpha, beta + eps) = 0",
     "psi(l) 1F1(alpha; beta; l) = 1F1(conj(alpha) beta; beta; -l)"},
    {IdentityId::P2Square, "P2-SQUARE", {"alpha"}, Q::Lambda, "p != 2, alpha != eps",
     "psi(l/2) 1F1(alpha; alpha^2; l) = 0F1(; alpha phi; l^2/16)"},
    {IdentityId::P6Euler, "P6-EULER", {"alpha", "beta", "gamma"}, Q::LambdaNotOne, "(alpha + beta, eps + gamma) = 0",
     "alpha beta conj(gamma)(1-l) 2F1(alpha, beta; gamma; l) = 2F1(conj(alpha) gamma, conj(beta) gamma; gamma; l)"},
    {IdentityId::P9Ramanujan, "P9-RAMANUJAN", {"alpha", "beta"}, Q::Lambda,
     "p != 2, (alpha, eps + beta + beta phi + beta^2) = 0",
     "1F1(alpha; beta^2; l) 1F1(alpha; beta^2; -l) = 2F3(alpha, conj(alpha) beta^2; beta^2, beta, beta phi; l^2/4)"},
    {IdentityId::ThmB3a, "THM-B3a", {"alpha", "beta"}, Q::Lambda, "p != 2, (alpha^2, beta^2) = (alpha^2 beta^2, eps) = 0",
     "0F1(; alpha^2; l) 0F1(; beta^2; l) = 2F3(alpha beta, alpha beta phi; alpha^2, beta^2, alpha^2 beta^2; 4l)"},
    {IdentityId::ThmB3b, "THM-B3b", {"alpha", "beta"}, Q::Lambda, "p != 2, (alpha^2, beta^2) = (alpha^2 beta^2, eps) = 0",
     "0F1(; alpha^2 phi; l) 0F1(; beta^2 phi; l) = 2F3(alpha beta, alpha beta phi; alpha^2 phi, beta^2 phi, "
     "alpha^2 beta^2; 4l)"},
    {IdentityId::ThmB4, "THM-B4", {"alpha"}, Q::Lambda, "p != 2",
     "0F1(; alpha^2; l) 0F1(; alpha^2; -l) = 0F3(; alpha^2, alpha, alpha phi; -l^2/4)"},
    {IdentityId::CorB5, "COR-B5", {"alpha"}, Q::Lambda, "p != 2",
     "0F1(; alpha^2; l) 0F1(; conj(alpha^2); -l) = q^delta(alpha) 0F3(; phi, alpha phi, conj(alpha) phi; -l^2/4)"},
    {IdentityId::CorB7, "COR-B7", {"alpha", "beta"}, Q::Lambda, "p != 2, (alpha^2 + beta^2 + alpha^2 beta^2, eps) = 0",
     "2F0(alpha^2, beta^2; l) 2F0(alpha^2, beta^2; -l) = 4F1(alpha^2, beta^2, alpha beta, alpha beta phi; "
     "alpha^2 beta^2; 4l^2)"},
    {IdentityId::CorB8, "COR-B8", {"alpha", "beta"}, Q::Lambda,
     "p != 2, (alpha^2 + beta^2 + alpha^2 beta^2, eps) = (alpha^2, beta^2) = 0",
     "2F0(alpha^2, conj(alpha^2); l) 2F0(beta^2, conj(beta^2); -l) = 4F1(alpha conj(beta) phi, conj(alpha) beta "
     "phi, alpha beta, conj(alpha beta); phi; 4l^2)"},
    {IdentityId::CorB10, "COR-B10", {"alpha", "beta"}, Q::Lambda, "p != 2, (alpha, eps + beta^2) = (alpha^2, beta^2) = 0",
     "1F1(alpha; beta^2; l) 1F1(alpha conj(beta^2); conj(beta^2); -l) = 2F3(alpha conj(beta) phi, conj(alpha) "
     "beta phi; phi, beta phi, conj(beta) phi; l^2/4)"},
    {IdentityId::CorB11a, "COR-B11a", {"alpha", "beta"}, Q::Lambda,
     "p != 2, (alpha^2 + beta^2 + alpha^2 beta^2, eps) = (alpha^2, beta^2) = 0",
     "1F1(alpha^2; alpha^4; l) 1F1(beta^2; beta^4; -l) = 2F3(alpha beta, alpha beta phi; alpha^2 phi, beta^2 "
     "phi, alpha^2 beta^2; l^2/4)"},
    {IdentityId::CorB11b, "COR-B11b", {"alpha", "beta"}, Q::Lambda,
     "p != 2, (alpha^2 phi + beta^2 phi + alpha^2 beta^2, eps) = (alpha^2, beta^2) = 0",
     "1F1(alpha^2 phi; alpha^4; l) 1F1(beta^2 phi; beta^4; -l) = 2F3(alpha beta, alpha beta phi; alpha^2, "
     "beta^2, alpha^2 beta^2; l^2/4)"},
    {IdentityId::ThmB12, "THM-B12", {"alpha", "beta"}, Q::Lambda,
     "6 | q-1, (alpha^6, beta^12) = (alpha^12, beta^6) = (alpha^6 beta^6, eps) = 0",
     "0F2(; alpha^6, beta^6; l) 0F2(; alpha^6, beta^6; -l) = 3F8(alpha^2 beta^2 (eps + rho + conj rho); "
     "alpha^6, beta^6, alpha^3, alpha^3 phi, beta^3, beta^3 phi, alpha^3 beta^3, alpha^3 beta^3 phi; -27 l^2/64)"},
    {IdentityId::ThmF4Product, "THM-F4-PRODUCT", {"alpha", "beta", "gamma"}, Q::XYNotOne,
     "alpha beta = gamma gamma', (alpha + beta, eps + gamma) = 0",
     "2F1(alpha, beta; gamma; x/(x-1)) 2F1(alpha, beta; gamma'; y/(y-1)) - delta(1-xy) C conj(beta) gamma(y) "
     "alpha(1-x) beta(1-y) = F4(alpha, beta; gamma, gamma'; -x/((1-x)(1-y)), -y/((1-x)(1-y)))"},
    {IdentityId::CorB14, "COR-B14", {"alpha", "beta", "gamma"}, Q::Lambda,
     "p != 2, alpha^2 beta^2 = gamma gamma', (alpha^2 + beta^2, eps + gamma) = (alpha^2 beta^2, eps + gamma^2) = 0",
     "2F1(alpha^2, beta^2; gamma; l) 2F1(alpha^2, beta^2; gamma'; l) - delta(1-2l) g°(gamma) g°(gamma') / "
     "(g(alpha^2) g(beta^2)) alpha beta(4) = 4F3(alpha^2, beta^2, alpha beta, alpha beta phi; alpha^2 beta^2, "
     "gamma, gamma'; 4l(1-l)) + delta(1-l)"},
    {IdentityId::LemF4Diag, "LEM-F4-DIAG", {"alpha", "beta", "gamma"}, Q::Lambda,
     "p != 2, alpha^2 beta^2 = gamma gamma', (gamma gamma', eps) = (gamma, gamma') = 0",
     "F4(alpha^2, beta^2; gamma, gamma'; x, x) = 4F3(alpha^2, beta^2, alpha beta, alpha beta phi; alpha^2 beta^2, "
     "gamma, gamma'; 4x)"},
    {IdentityId::Pfaff, "PFAFF", {"alpha", "beta", "gamma"}, Q::LambdaNotOne, "(alpha + beta, eps + gamma) = 0",
     "2F1(alpha, conj(beta) gamma; gamma; x) = conj(alpha)(1-x) 2F1(alpha, beta; gamma; x/(x-1))"},
};

std::uint32_t mod(std::int64_t v, std::uint32_t n) {
  const std::int64_t r = v % std::int64_t(n);
  return std::uint32_t(r < 0 ? r + n : r);
}

std::optional<std::string> precondition(IdentityId id, const FiniteField& k) {
  switch (id) {
    case IdentityId::ClosedG12:
    case IdentityId::ClosedG13:
    case IdentityId::P2Square:
    case IdentityId::P9Ramanujan:
    case IdentityId::ThmB3a:
    case IdentityId::ThmB3b:
    case IdentityId::ThmB4:
    case IdentityId::CorB5:
    case IdentityId::CorB7:
    case IdentityId::CorB8:
    case IdentityId::CorB10:
    case IdentityId::CorB11a:
    case IdentityId::CorB11b:
    case IdentityId::CorB14:
    case IdentityId::LemF4Diag:
      if (k.p() == 2) return "p=2";
      return std::nullopt;
    case IdentityId::ThmB12:
      if (k.p() == 2) return "p=2";
      if (k.units_order() % 6 != 0) return "6 ∤ q−1";
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

/// Per-field state shared by every tuple of every identity: the kernel,
/// its Gauss table and, on first use, Gauss sum inverses computed by
/// generic division (so the structural checks do not lean on (g2)).
class Evaluator {
 public:
  explicit Evaluator(const FiniteField& k)
      : k_(k), kernel_(k, k.one()), t_(kernel_.gauss()), n_(k.units_order()), q_(k.q()), m_(t_.conductor()) {}

  const FiniteField& field() const noexcept { return k_; }

  std::vector<Sides> run(IdentityId id, const Tuple& l, const Tuple& r) const;

 private:
  using Table = std::vector<CycloNum>;
  using Pair = std::pair<CycloNum, CycloNum>;

  std::uint32_t red(std::int64_t v) const { return mod(v, n_); }
  std::uint32_t half() const { return n_ / 2; }

  Table F(std::initializer_list<std::int64_t> num, std::initializer_list<std::int64_t> den) const {
    std::vector<std::uint32_t> a, b;
    for (auto v : num) a.push_back(red(v));
    for (auto v : den) b.push_back(red(v));
    return kernel_.table(a, b, false);
  }
  CycloNum chi(std::int64_t j, FieldElem x) const {
    if (x.code == 0) return CycloNum::zero(m_);
    return CycloNum::root_of_unity(m_, std::int64_t(t_.char_root(std::uint64_t(red(j)) * k_.discrete_log(x))));
  }
  CycloNum psi(FieldElem x) const { return CycloNum::root_of_unity(m_, std::int64_t(t_.add_root(k_.trace(x)))); }
  FieldElem el(std::int64_t v) const { return k_.from_int(v); }
  FieldElem mul(FieldElem a, FieldElem b) const { return k_.mul(a, b); }
  FieldElem neg(FieldElem a) const { return k_.neg(a); }
  FieldElem sq(FieldElem a) const { return k_.mul(a, a); }
  const CycloNum& at(const Table& t, FieldElem x) const { return t[x.code]; }

  const CycloNum& g_inv_direct(std::uint32_t j) const {
    std::call_once(direct_once_, [this] {
      for (std::uint32_t i = 0; i < n_; ++i) {
        g_inv_direct_.push_back(t_.g(i).inverse());
        g0_inv_direct_.push_back(t_.g0(i).inverse());
      }
    });
    return g_inv_direct_[j % n_];
  }
  const CycloNum& g0_inv_direct(std::uint32_t j) const {
    g_inv_direct(0);
    return g0_inv_direct_[j % n_];
  }
  CycloNum poch(std::int64_t a, std::int64_t v) const { return t_.g(red(a + v)) * g_inv_direct(red(a)); }
  CycloNum poch0(std::int64_t a, std::int64_t v) const { return t_.g0(red(a + v)) * g0_inv_direct(red(a)); }

  std::vector<Sides> over(Quantifier quant, const std::function<Pair(FieldElem)>& sides) const {
    std::vector<Sides> out;
    for (std::uint32_t c = 0; c < q_; ++c) {
      if (quant == Q::LambdaUnits && c == 0) continue;
      if (quant == Q::LambdaNotOne && c == 1) continue;
      auto [lhs, rhs] = sides(FieldElem{c});
      out.push_back({c, std::move(lhs), std::move(rhs)});
    }
    return out;
  }

  std::vector<Sides> structural(IdentityId id, const Tuple& l, const Tuple& r) const;
  std::vector<Sides> f4_product(const Tuple& l, const Tuple& r) const;

  const FiniteField& k_;
  HgfKernel kernel_;
  const GaussTable& t_;
  std::uint32_t n_, q_, m_;
  mutable std::once_flag direct_once_;
  mutable std::vector<CycloNum> g_inv_direct_, g0_inv_direct_;
};

std::vector<Sides> Evaluator::structural(IdentityId id, const Tuple& l, const Tuple& r) const {
  const std::int64_t q = q_;
  const FieldElem minus_one = neg(k_.one());
  switch (id) {
    case IdentityId::StructG1: {
      const std::int64_t a = l[0], b = l[1], v = l[2], ra = r[0], rb = r[1], rv = r[2];
      return {{"poch", poch(a, b + v), poch(ra, rb) * poch(ra + rb, rv)},
              {"poch0", poch0(a, b + v), poch0(ra, rb) * poch0(ra + rb, rv)}};
    }
    case IdentityId::StructG2:
      return {{"g", t_.g(l[0]) * t_.g0(red(-std::int64_t(l[0]))), CycloNum(q) * chi(r[0], minus_one)}};
    case IdentityId::StructG3:
      return {{"poch", poch(l[0], l[1]) * poch0(-std::int64_t(l[0]), -std::int64_t(l[1])), chi(r[1], minus_one)}};
    case IdentityId::StructG5: {
      const std::int64_t d = l[2];
      const CycloNum lhs = poch(d * l[0], d * l[1]), lhs0 = poch0(d * l[0], d * l[1]);
      const std::int64_t rd = r[2];
      const CycloNum factor = chi(rd * r[1], el(rd));
      CycloNum rhs = factor, rhs0 = factor;
      for (std::int64_t i = 0; i < rd; ++i) {
        rhs *= poch(r[0] + i * (n_ / rd), r[1]);
        rhs0 *= poch0(r[0] + i * (n_ / rd), r[1]);
      }
      return {{"poch", lhs, rhs}, {"poch0", lhs0, rhs0}};
    }
    case IdentityId::StructJ1: {
      const CycloNum lhs = jacobi(MultChar(k_, l[0]), MultChar(k_, l[1]));
      CycloNum rhs = t_.g(r[0]) * t_.g(r[1]) * g0_inv_direct(red(std::int64_t(r[0]) + r[1]));
      if (r[0] == 0 && r[1] == 0) rhs -= CycloNum(Rational((1 - q) * (1 - q), q));
      return {{"j", lhs, rhs}};
    }
    case IdentityId::StructJ2: {
      const AddChar psi(k_, k_.one());
      auto lhs = jacobi_pochhammer_bridge(MultChar(k_, l[0]), MultChar(k_, l[1]), MultChar(k_, l[2]), psi).first;
      auto rhs = jacobi_pochhammer_bridge(MultChar(k_, r[0]), MultChar(k_, r[1]), MultChar(k_, r[2]), psi).second;
      return {{"j", std::move(lhs), std::move(rhs)}};
    }
    case IdentityId::ClosedG11: {
      const Table lhs = F({l[0], l[1]}, {0, l[2]});
      return {{"lambda=1", at(lhs, k_.one()), kernel_.euler_gauss(r[0], r[1], r[2])}};
    }
    case IdentityId::ClosedG12: {
      const std::int64_t a = l[0], b = l[1];
      const Table lhs = F({2 * a, b}, {0, 2 * a - b});
      return {{"lambda=-1", at(lhs, minus_one), kernel_.kummer(r[0], r[1])}};
    }
    case IdentityId::ClosedG13: {
      const std::int64_t a = l[0], b = l[1], c = l[2];
      const Table lhs = F({2 * a, b, c}, {0, 2 * a - b, 2 * a - c});
      // The closed form written out without the domain guard, so a mutated
      // tuple outside the domain still yields a comparable value.
      const std::int64_t ra = r[0], rb = r[1], rc = r[2], a2 = 2 * ra;
      const CycloNum common = t_.g0(red(a2 - rb)) * t_.g0(red(a2 - rc)) * t_.g_inv(red(a2)) *
                              t_.g_inv(red(a2 - rb - rc));
      CycloNum sum = CycloNum::zero(m_);
      for (std::int64_t ap : {ra, ra + std::int64_t(half())}) {
        sum += t_.g(red(ap)) * t_.g(red(ap - rb - rc)) * t_.g0_inv(red(ap - rb)) * t_.g0_inv(red(ap - rc));
      }
      const CycloNum rhs = common * sum;
      return {{"lambda=1", at(lhs, k_.one()), rhs}};
    }
    default:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "not a structural identity");
}

std::vector<Sides> Evaluator::f4_product(const Tuple& l, const Tuple& r) const {
  const std::int64_t a = l[0], b = l[1], c = l[2], c2 = a + b - c;
  const std::int64_t ra = r[0], rb = r[1], rc = r[2], rc2 = ra + rb - rc;
  const Table first = F({a, b}, {0, c}), second = F({a, b}, {0, c2});
  const Table grid = kernel_.f4_grid(red(ra), red(rb), red(rc), red(rc2), false);
  const CycloNum constant =
      t_.g0(red(c)) * t_.g0(red(c2)) * t_.g_inv(red(a)) * t_.g_inv(red(b)) * CycloNum(long(t_.sign(red(b - c))));
  const FieldElem one = k_.one();
  std::vector<Sides> out;
  for (std::uint32_t xc = 0; xc < q_; ++xc) {
    if (xc == 1) continue;
    const FieldElem x{xc};
    const FieldElem omx = k_.sub(one, x);
    const FieldElem u = k_.div(x, neg(omx));
    for (std::uint32_t yc = 0; yc < q_; ++yc) {
      if (yc == 1) continue;
      const FieldElem y{yc};
      const FieldElem omy = k_.sub(one, y);
      const FieldElem v = k_.div(y, neg(omy));
      CycloNum lhs = at(first, u) * at(second, v);
      if (mul(x, y) == one) lhs -= constant * chi(c - b, y) * chi(a, omx) * chi(b, omy);
      const FieldElem prod = mul(omx, omy);
      const FieldElem s = k_.div(neg(x), prod), s2 = k_.div(neg(y), prod);
      out.push_back({nlohmann::json::array({xc, yc}), std::move(lhs), grid[std::size_t(s.code) * q_ + s2.code]});
    }
  }
  return out;
}

std::vector<Sides> Evaluator::run(IdentityId id, const Tuple& l, const Tuple& r) const {
  const std::int64_t h = half();
  const FieldElem one = k_.one();
  switch (id) {
    case IdentityId::P1KummerExp: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table lhs = F({a}, {0, b}), rhs = F({rb - ra}, {0, rb});
      return over(Q::Lambda, [&](FieldElem x) -> Pair { return {psi(x) * at(lhs, x), at(rhs, neg(x))}; });
    }
    case IdentityId::P2Square: {
      const std::int64_t a = l[0], ra = r[0];
      const Table lhs = F({a}, {0, 2 * a}), rhs = F({}, {0, ra + h});
      const FieldElem half_el = k_.inv(el(2)), sixteenth = k_.inv(el(16));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {psi(mul(x, half_el)) * at(lhs, x), at(rhs, mul(sq(x), sixteenth))};
      });
    }
    case IdentityId::P6Euler: {
      const std::int64_t a = l[0], b = l[1], c = l[2], ra = r[0], rb = r[1], rc = r[2];
      const Table lhs = F({a, b}, {0, c}), rhs = F({rc - ra, rc - rb}, {0, rc});
      return over(Q::LambdaNotOne, [&](FieldElem x) -> Pair {
        return {chi(a + b - c, k_.sub(one, x)) * at(lhs, x), at(rhs, x)};
      });
    }
    case IdentityId::P9Ramanujan: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table lhs = F({a}, {0, 2 * b}), rhs = F({ra, 2 * rb - ra}, {0, 2 * rb, rb, rb + h});
      const FieldElem quarter = k_.inv(el(4));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(lhs, x) * at(lhs, neg(x)), at(rhs, mul(sq(x), quarter))};
      });
    }
    case IdentityId::ThmB3a:
    case IdentityId::ThmB3b: {
      const std::int64_t s = id == IdentityId::ThmB3b ? h : 0;
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table f1 = F({}, {0, 2 * a + s}), f2 = F({}, {0, 2 * b + s});
      const Table rhs = F({ra + rb, ra + rb + h}, {0, 2 * ra + s, 2 * rb + s, 2 * ra + 2 * rb});
      const FieldElem four = el(4);
      return over(Q::Lambda, [&](FieldElem x) -> Pair { return {at(f1, x) * at(f2, x), at(rhs, mul(four, x))}; });
    }
    case IdentityId::ThmB4: {
      const std::int64_t a = l[0], ra = r[0];
      const Table lhs = F({}, {0, 2 * a}), rhs = F({}, {0, 2 * ra, ra, ra + h});
      const FieldElem c = neg(k_.inv(el(4)));
      return over(Q::Lambda,
                  [&](FieldElem x) -> Pair { return {at(lhs, x) * at(lhs, neg(x)), at(rhs, mul(c, sq(x)))}; });
    }
    case IdentityId::CorB5: {
      const std::int64_t a = l[0], ra = r[0];
      const Table f1 = F({}, {0, 2 * a}), f2 = F({}, {0, -2 * a});
      const Table rhs = F({}, {0, h, ra + h, -ra + h});
      const CycloNum factor(long(ra == 0 ? q_ : 1));
      const FieldElem c = neg(k_.inv(el(4)));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(f1, x) * at(f2, neg(x)), factor * at(rhs, mul(c, sq(x)))};
      });
    }
    case IdentityId::CorB7: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table lhs = F({2 * a, 2 * b}, {0});
      const Table rhs = F({2 * ra, 2 * rb, ra + rb, ra + rb + h}, {0, 2 * ra + 2 * rb});
      const FieldElem four = el(4);
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(lhs, x) * at(lhs, neg(x)), at(rhs, mul(four, sq(x)))};
      });
    }
    case IdentityId::CorB8: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table f1 = F({2 * a, -2 * a}, {0}), f2 = F({2 * b, -2 * b}, {0});
      const Table rhs = F({ra - rb + h, rb - ra + h, ra + rb, -ra - rb}, {0, h});
      const FieldElem four = el(4);
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(f1, x) * at(f2, neg(x)), at(rhs, mul(four, sq(x)))};
      });
    }
    case IdentityId::CorB10: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table f1 = F({a}, {0, 2 * b}), f2 = F({a - 2 * b}, {0, -2 * b});
      const Table rhs = F({ra - rb + h, rb - ra + h}, {0, h, rb + h, -rb + h});
      const FieldElem quarter = k_.inv(el(4));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(f1, x) * at(f2, neg(x)), at(rhs, mul(quarter, sq(x)))};
      });
    }
    case IdentityId::CorB11a:
    case IdentityId::CorB11b: {
      // (a) puts phi in the rhs denominators, (b) in the lhs numerators.
      const std::int64_t sl = id == IdentityId::CorB11b ? h : 0, sr = h - sl;
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const Table f1 = F({2 * a + sl}, {0, 4 * a}), f2 = F({2 * b + sl}, {0, 4 * b});
      const Table rhs = F({ra + rb, ra + rb + h}, {0, 2 * ra + sr, 2 * rb + sr, 2 * ra + 2 * rb});
      const FieldElem quarter = k_.inv(el(4));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(f1, x) * at(f2, neg(x)), at(rhs, mul(quarter, sq(x)))};
      });
    }
    case IdentityId::ThmB12: {
      const std::int64_t a = l[0], b = l[1], ra = r[0], rb = r[1];
      const std::int64_t rho = n_ / 3, s = 2 * ra + 2 * rb;
      const Table lhs = F({}, {0, 6 * a, 6 * b});
      const Table rhs = F({s, s + rho, s - rho}, {0, 6 * ra, 6 * rb, 3 * ra, 3 * ra + h, 3 * rb, 3 * rb + h,
                                                 3 * ra + 3 * rb, 3 * ra + 3 * rb + h});
      const FieldElem c = k_.div(neg(el(27)), el(64));
      return over(Q::Lambda,
                  [&](FieldElem x) -> Pair { return {at(lhs, x) * at(lhs, neg(x)), at(rhs, mul(c, sq(x)))}; });
    }
    case IdentityId::ThmF4Product:
      return f4_product(l, r);
    case IdentityId::CorB14: {
      const std::int64_t a = l[0], b = l[1], c = l[2], c2 = 2 * a + 2 * b - c;
      const std::int64_t ra = r[0], rb = r[1], rc = r[2], rc2 = 2 * ra + 2 * rb - rc;
      const Table f1 = F({2 * a, 2 * b}, {0, c}), f2 = F({2 * a, 2 * b}, {0, c2});
      const Table rhs = F({2 * ra, 2 * rb, ra + rb, ra + rb + h}, {0, 2 * ra + 2 * rb, rc, rc2});
      const CycloNum correction = t_.g0(red(c)) * t_.g0(red(c2)) * t_.g_inv(red(2 * a)) * t_.g_inv(red(2 * b)) *
                                  chi(a + b, el(4));
      const FieldElem four = el(4), half_el = k_.inv(el(2));
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        CycloNum lhs = at(f1, x) * at(f2, x);
        if (x == half_el) lhs -= correction;
        CycloNum value = at(rhs, mul(four, mul(x, k_.sub(one, x))));
        if (x == one) value += CycloNum(1);
        return {std::move(lhs), std::move(value)};
      });
    }
    case IdentityId::LemF4Diag: {
      const std::int64_t a = l[0], b = l[1], c = l[2], c2 = 2 * a + 2 * b - c;
      const std::int64_t ra = r[0], rb = r[1], rc = r[2], rc2 = 2 * ra + 2 * rb - rc;
      const Table diag = kernel_.f4_diagonal(red(2 * a), red(2 * b), red(c), red(c2));
      const Table rhs = F({2 * ra, 2 * rb, ra + rb, ra + rb + h}, {0, 2 * ra + 2 * rb, rc, rc2});
      const FieldElem four = el(4);
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(diag, x), at(rhs, mul(four, x))};
      });
    }
    case IdentityId::Pfaff: {
      const std::int64_t a = l[0], b = l[1], c = l[2], ra = r[0], rb = r[1], rc = r[2];
      const Table lhs = F({a, c - b}, {0, c}), rhs = F({ra, rb}, {0, rc});
      return over(Q::LambdaNotOne, [&](FieldElem x) -> Pair {
        const FieldElem omx = k_.sub(one, x);
        return {at(lhs, x), chi(-ra, omx) * at(rhs, k_.div(x, neg(omx)))};
      });
    }
    case IdentityId::StructG8: {
      const std::int64_t a1 = l[0], a2 = l[1], b = l[2];
      const std::int64_t r1 = r[0], r2 = r[1], rb = r[2], v = r[3];
      const Table lhs = F({a1, a2}, {0, b}), shifted = F({r1 + v, r2 + v}, {v, rb + v});
      const std::vector<std::uint32_t> num{red(r1), red(r2)}, den{0, red(rb)};
      const CycloNum factor = t_.poch(num, red(v)) * t_.poch0_inv(den, red(v));
      return over(Q::LambdaUnits,
                  [&](FieldElem x) -> Pair { return {at(lhs, x), factor * chi(v, x) * at(shifted, x)}; });
    }
    case IdentityId::StructG9: {
      const std::int64_t a1 = l[0], a2 = l[1], b = l[2];
      const Table lhs = F({b}, {a1, a2}), rhs = F({-std::int64_t(r[0]), -std::int64_t(r[1])}, {-std::int64_t(r[2])});
      return over(Q::LambdaUnits, [&](FieldElem x) -> Pair { return {at(lhs, x), at(rhs, neg(k_.inv(x)))}; });
    }
    case IdentityId::StructG10: {
      const std::int64_t a = l[0], b = l[1], c = l[2], ra = r[0], rb = r[1], rc = r[2];
      const Table lhs = F({a, c}, {0, b, c}), base = F({ra}, {0, rb});
      // The correction sum runs over nu with (gamma, nu) > 0, i.e. nu = gamma alone,
      // where (1 - q^-1)/(1 - q^-1) = 1.
      const std::vector<std::uint32_t> num{red(ra)}, den{0, red(rb)};
      const CycloNum term = t_.poch(num, red(-rc)) * t_.poch0_inv(den, red(-rc)) * Rational(1, q_);
      const Rational scale(red(rc) == 0 ? q_ : 1);
      return over(Q::Lambda, [&](FieldElem x) -> Pair {
        return {at(lhs, x), (at(base, x) + term * chi(-rc, x)) * scale};
      });
    }
    default:
      return structural(id, l, r);
  }
}

struct Plan {
  VerificationReport report;
  std::vector<Tuple> tuples;
};

Plan plan(IdentityId id, const FiniteField& k, const VerifyOptions& options) {
  Plan out;
  VerificationReport& rep = out.report;
  rep.identity = id;
  rep.p = k.p();
  rep.f = k.f();
  rep.q = k.q();
  rep.lambdas_per_tuple = points_per_tuple(id, k);
  Enumeration e = enumerate_admissible(id, k);
  rep.reason = e.reason;
  rep.tuples_enumerated = e.tuples.size();

  bool sample = options.mode.kind == Mode::Kind::Sample;
  if (options.mode.kind == Mode::Kind::Auto) sample = e.tuples.size() * rep.lambdas_per_tuple > kExhaustiveBudget;
  if (!sample || e.tuples.size() <= options.mode.n) {
    out.tuples = std::move(e.tuples);
  } else {
    // Partial Fisher-Yates with a fully specified engine and reduction, so the
    // chosen tuples do not depend on the standard library in use.
    std::mt19937_64 rng(options.mode.seed);
    std::vector<std::size_t> order(e.tuples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t take = options.mode.n;
    for (std::size_t i = order.size() - 1, done = 0; done < take; --i, ++done) {
      std::swap(order[i], order[rng() % (i + 1)]);
    }
    std::vector<std::size_t> chosen(order.end() - std::ptrdiff_t(take), order.end());
    std::sort(chosen.begin(), chosen.end());
    for (auto i : chosen) out.tuples.push_back(std::move(e.tuples[i]));
  }
  if (sample) rep.seed = options.mode.seed;
  rep.tuples_checked = out.tuples.size();
  return out;
}

// The coordinate a mutation perturbs: the first one the right-hand side reads.
std::size_t mutation_slot(IdentityId id) { return id == IdentityId::StructG3 ? 1 : 0; }

std::vector<Failure> check(const Evaluator& ev, IdentityId id, const Tuple& tuple, bool mutate) {
  Tuple rhs = tuple;
  if (mutate) {
    const std::size_t i = mutation_slot(id);
    rhs[i] = mod(std::int64_t(rhs[i]) + 1, ev.field().units_order());
  }
  std::vector<Failure> out;
  for (auto& s : ev.run(id, tuple, rhs)) {
    if (s.lhs == s.rhs) continue;
    out.push_back({tuple, std::move(s.point), s.lhs.minimal(), s.rhs.minimal()});
  }
  return out;
}

std::vector<VerificationReport> run_suite(std::span<const FieldHandle> fields, std::span<const IdentityId> ids,
                                          const VerifyOptions& options, bool parallel) {
  std::vector<std::unique_ptr<Evaluator>> evaluators;
  std::vector<Plan> plans;
  std::vector<std::size_t> plan_field;
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    evaluators.push_back(std::make_unique<Evaluator>(*fields[fi]));
    for (auto id : ids) {
      plans.push_back(plan(id, *fields[fi], options));
      plan_field.push_back(fi);
    }
  }

  struct Item {
    std::size_t plan;
    std::size_t tuple;
  };
  std::vector<Item> items;
  for (std::size_t pi = 0; pi < plans.size(); ++pi) {
    for (std::size_t ti = 0; ti < plans[pi].tuples.size(); ++ti) items.push_back({pi, ti});
  }

  std::vector<std::vector<Failure>> results(items.size());
  std::vector<double> seconds(items.size(), 0.0);
  std::vector<std::exception_ptr> errors(items.size());
  const std::int64_t count = std::int64_t(items.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const Item& item = items[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      const Plan& p = plans[item.plan];
      results[i] = check(*evaluators[plan_field[item.plan]], p.report.identity, p.tuples[item.tuple], options.mutate);
    } catch (...) {
      errors[i] = std::current_exception();
    }
    seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> elapsed(plans.size(), 0.0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& failures = plans[items[i].plan].report.failures;
    for (auto& f : results[i]) failures.push_back(std::move(f));
    elapsed[items[i].plan] += seconds[i];
  }
  std::vector<VerificationReport> out;
  for (std::size_t pi = 0; pi < plans.size(); ++pi) {
    if (options.timings) plans[pi].report.elapsed_ms = elapsed[pi] * 1000.0;
    out.push_back(std::move(plans[pi].report));
  }
  return out;
}

}  // namespace

const std::vector<IdentityInfo>& catalog() { return kCatalog; }

const IdentityInfo& info(IdentityId id) {
  for (const auto& entry : kCatalog) {
    if (entry.id == id) return entry;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown identity");
}

std::string_view name(IdentityId id) { return info(id).name; }

IdentityId parse_identity(std::string_view text) {
  for (const auto& entry : kCatalog) {
    if (entry.name == text) return entry.id;
  }
  throw Error(ErrorCode::ParseError, "unknown identity '" + std::string(text) + "'");
}

std::vector<IdentityId> parse_identities(std::string_view list) {
  std::vector<IdentityId> out;
  if (list == "all") {
    for (const auto& entry : kCatalog) out.push_back(entry.id);
    return out;
  }
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view token = list.substr(start, end - start);
    if (!token.empty()) out.push_back(parse_identity(token));
    start = end + 1;
  }
  return out;
}

bool admissible(IdentityId id, const FiniteField& k, const Tuple& tuple) {
  const auto& meta = info(id);
  if (tuple.size() != meta.params.size()) return false;
  if (precondition(id, k)) return false;
  const std::uint32_t n = k.units_order();
  const std::int64_t h = n / 2;
  auto r = [n](std::int64_t v) { return mod(v, n); };
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (id == IdentityId::StructG5 && i == 2) continue;
    if (tuple[i] >= n) return false;
  }
  const std::int64_t a = tuple[0];
  const std::int64_t b = tuple.size() > 1 ? tuple[1] : 0;
  const std::int64_t c = tuple.size() > 2 ? tuple[2] : 0;
  switch (id) {
    case IdentityId::StructG5:
      return c >= 1 && c <= n && n % c == 0;
    case IdentityId::ClosedG13: {
      if (r(2 * a) == r(b + c)) return false;
      for (std::int64_t ap : {a, a + h}) {
        const auto x = r(ap);
        if ((b == 0 && c == x) || (c == 0 && b == x)) return false;
      }
      return true;
    }
    case IdentityId::P1KummerExp:
      return a != 0 && a != b;
    case IdentityId::P2Square:
      return a != 0;
    case IdentityId::P6Euler:
    case IdentityId::ThmF4Product:
    case IdentityId::Pfaff:
      return a != 0 && a != c && b != 0 && b != c;
    case IdentityId::P9Ramanujan:
      return a != 0 && a != b && a != r(b + h) && a != r(2 * b);
    case IdentityId::ThmB3a:
    case IdentityId::ThmB3b:
      return r(2 * a) != r(2 * b) && r(2 * a + 2 * b) != 0;
    case IdentityId::CorB7:
      return r(2 * a) != 0 && r(2 * b) != 0 && r(2 * a + 2 * b) != 0;
    case IdentityId::CorB8:
    case IdentityId::CorB11a:
      return r(2 * a) != 0 && r(2 * b) != 0 && r(2 * a + 2 * b) != 0 && r(2 * a) != r(2 * b);
    case IdentityId::CorB10:
      return a != 0 && a != r(2 * b) && r(2 * a) != r(2 * b);
    case IdentityId::CorB11b:
      return r(2 * a + h) != 0 && r(2 * b + h) != 0 && r(2 * a + 2 * b) != 0 && r(2 * a) != r(2 * b);
    case IdentityId::ThmB12:
      return r(6 * a) != r(12 * b) && r(12 * a) != r(6 * b) && r(6 * a + 6 * b) != 0;
    case IdentityId::CorB14: {
      const auto a2 = r(2 * a), b2 = r(2 * b), ab = r(2 * a + 2 * b);
      return a2 != 0 && a2 != c && b2 != 0 && b2 != c && ab != 0 && ab != r(2 * c);
    }
    case IdentityId::LemF4Diag:
      return r(2 * a + 2 * b) != 0 && r(2 * c) != r(2 * a + 2 * b);
    default:
      return true;
  }
}

Enumeration enumerate_admissible(IdentityId id, const FiniteField& k) {
  Enumeration out;
  out.reason = precondition(id, k);
  if (out.reason) return out;
  const std::uint32_t n = k.units_order();
  const std::size_t arity = info(id).params.size();
  std::vector<std::uint32_t> lo(arity, 0), hi(arity, n);
  if (id == IdentityId::StructG5) lo[2] = 1, hi[2] = n + 1;
  Tuple t = lo;
  while (true) {
    if (admissible(id, k, t)) out.tuples.push_back(t);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++t[i] < hi[i]) break;
      t[i] = lo[i];
      if (i == 0) return out;
    }
    if (arity == 0) return out;
  }
}

std::uint64_t points_per_tuple(IdentityId id, const FiniteField& k) {
  const std::uint64_t q = k.q();
  switch (info(id).quantifier) {
    case Q::Lambda:
      return q;
    case Q::LambdaUnits:
    case Q::LambdaNotOne:
      return q - 1;
    case Q::XYNotOne:
      return (q - 1) * (q - 1);
    case Q::Named:
      return (id == IdentityId::StructG1 || id == IdentityId::StructG5) ? 2 : 1;
  }
  return 0;
}

std::vector<Sides> evaluate(IdentityId id, const FiniteField& field, const Tuple& tuple, const Tuple& rhs_tuple) {
  return Evaluator(field).run(id, tuple, rhs_tuple);
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json failures_json = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    nlohmann::ordered_json entry;
    entry["tuple"] = f.tuple;
    entry["lambda"] = f.point;
    entry["lhs"] = f.lhs.to_json();
    entry["rhs"] = f.rhs.to_json();
    failures_json.push_back(std::move(entry));
  }
  nlohmann::ordered_json out;
  out["identity"] = std::string(name(identity));
  out["field"] = {{"p", p}, {"f", f}, {"q", q}};
  out["tuples_enumerated"] = tuples_enumerated;
  out["tuples_checked"] = tuples_checked;
  out["lambdas_per_tuple"] = lambdas_per_tuple;
  out["failures"] = std::move(failures_json);
  out["elapsed_ms"] = elapsed_ms ? nlohmann::ordered_json(*elapsed_ms) : nlohmann::ordered_json();
  out["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json();
  return out;
}

VerificationReport verify(IdentityId id, const FiniteField& field, const VerifyOptions& options) {
  const auto handle = FiniteField::construct(field.p(), field.f(), field.modulus());
  const std::vector<FieldHandle> fields{handle};
  const std::vector<IdentityId> ids{id};
  return std::move(verify_suite(fields, ids, options).front());
}

std::vector<VerificationReport> verify_suite(std::span<const FieldHandle> fields, std::span<const IdentityId> ids,
                                             const VerifyOptions& options) {
  return run_suite(fields, ids, options, true);
}

namespace reference {

std::vector<VerificationReport> verify_suite(std::span<const FieldHandle> fields, std::span<const IdentityId> ids,
                                             const VerifyOptions& options) {
  return run_suite(fields, ids, options, false);
}

}  // namespace reference

}  // namespace finite_hgf
