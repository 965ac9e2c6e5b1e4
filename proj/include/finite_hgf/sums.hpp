#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "finite_hgf/chars.hpp"
#include "finite_hgf/cyclo.hpp"
#include "finite_hgf/gf.hpp"

namespace finite_hgf {

/// Every Gauss sum of one field for one additive character, with the g°
/// variant and both reciprocals. All values live at the common conductor
/// M = p(q-1), where zeta_p = zeta_M^{q-1} and zeta_{q-1} = zeta_M^p, so
/// products never need lifting.
///
/// Tables are built once per (field, shift) and shared process-wide; get()
/// is safe to call from concurrent workers.
class GaussTable {
 public:
  static std::shared_ptr<const GaussTable> get(const FiniteField& field, FieldElem shift);
  static std::shared_ptr<const GaussTable> get(const AddChar& psi) { return get(psi.field(), psi.shift()); }

  /// Builds without touching the shared registry. `parallel` spreads the
  /// per-character sums over OpenMP threads.
  GaussTable(const FiniteField& field, FieldElem shift, bool parallel = true);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t units_order() const noexcept { return n_; }
  std::uint32_t conductor() const noexcept { return m_; }
  FieldElem shift() const noexcept { return shift_; }

  const CycloNum& g(std::uint32_t j) const noexcept { return g_[j % n_]; }
  const CycloNum& g0(std::uint32_t j) const noexcept { return g0_[j % n_]; }
  /// 1/g(chi_j) = g°(chi_{-j}) chi_j(-1) / q.
  const CycloNum& g_inv(std::uint32_t j) const noexcept { return g_inv_[j % n_]; }
  /// 1/g°(chi_j) = g(chi_{-j}) chi_j(-1) / q.
  const CycloNum& g0_inv(std::uint32_t j) const noexcept { return g0_inv_[j % n_]; }
  /// chi_j(-1), which is +1 or -1.
  int sign(std::uint32_t j) const noexcept { return (p_ == 2 || j % 2 == 0) ? 1 : -1; }

  /// Exponent k with zeta_{q-1}^e = zeta_M^k.
  std::uint64_t char_root(std::uint64_t e) const noexcept { return (std::uint64_t(p_) * (e % n_)) % m_; }
  /// Exponent k with zeta_p^e = zeta_M^k.
  std::uint64_t add_root(std::uint64_t e) const noexcept { return (std::uint64_t(n_) * (e % p_)) % m_; }

  /// (A)_nu, (A)°_nu and 1/(A)°_nu for a member list A with repetition.
  CycloNum poch(std::span<const std::uint32_t> a, std::uint32_t nu) const;
  CycloNum poch0(std::span<const std::uint32_t> a, std::uint32_t nu) const;
  CycloNum poch0_inv(std::span<const std::uint32_t> a, std::uint32_t nu) const;

 private:
  std::uint32_t p_, q_, n_, m_;
  FieldElem shift_;
  std::vector<CycloNum> g_, g0_, g_inv_, g0_inv_;
};

/// g(chi) = -sum_x psi(x) chi(x).
CycloNum gauss(const MultChar& chi, const AddChar& psi);
/// g°(chi) = q^{delta(chi)} g(chi).
CycloNum gauss0(const MultChar& chi, const AddChar& psi);
/// 1/g(chi) through the reflection formula.
CycloNum gauss_inverse(const MultChar& chi, const AddChar& psi);
/// 1/g°(chi) through the reflection formula.
CycloNum gauss0_inverse(const MultChar& chi, const AddChar& psi);

/// (A)_nu = prod over members alpha of g(alpha nu)/g(alpha).
CycloNum pochhammer(const ParamSet& a, const MultChar& nu, const AddChar& psi);
/// (A)°_nu, the same with g° in place of g.
CycloNum pochhammer0(const ParamSet& a, const MultChar& nu, const AddChar& psi);

/// j(chi, chi') = -sum_{x+y=1} chi(x) chi'(y), summed directly.
CycloNum jacobi(const MultChar& chi, const MultChar& chi2);

/// Both sides of g(chi^n) = chi^n(n) prod_{phi^n = eps} g(chi phi)/g(phi).
/// Throws NotDivisor unless n >= 1 divides q-1.
std::pair<CycloNum, CycloNum> davenport_hasse_sides(const MultChar& chi, std::int64_t n, const AddChar& psi);
bool check_davenport_hasse(const MultChar& chi, std::int64_t n, const AddChar& psi);

/// Checks (alpha^n)_{nu^n} = nu^n(n) prod_{phi^n = eps} (alpha phi)_nu and the
/// same relation for the ° symbols.
bool check_davenport_hasse_pochhammer(const MultChar& alpha, const MultChar& nu, std::int64_t n,
                                      const AddChar& psi);

/// Both sides of the Jacobi-Pochhammer relation
///   j(alpha nu, conj(beta nu))
///     = (beta)_{conj alpha} (alpha)_nu / ((eps)°_{conj alpha} (beta)_nu) nu(-1)
///       + delta(beta nu)(1 - q).
std::pair<CycloNum, CycloNum> jacobi_pochhammer_bridge(const MultChar& alpha, const MultChar& beta,
                                                       const MultChar& nu, const AddChar& psi);

}  // namespace finite_hgf
