#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "finite_hgf/chars.hpp"
#include "finite_hgf/cyclo.hpp"
#include "finite_hgf/gf.hpp"
#include "finite_hgf/sums.hpp"

namespace finite_hgf {

/// F(A, B; lambda) = 1/(1-q) sum_nu (A)_nu / (B)°_nu nu(lambda).
struct HgfSpec {
  ParamSet numerator;
  ParamSet denominator;
  AddChar psi;

  HgfSpec(ParamSet num, ParamSet den, AddChar add);
  const FiniteField& field() const noexcept { return numerator.field(); }
  nlohmann::json to_json() const;
};

/// Index-level evaluation engine over one field and one additive character.
/// Character arguments are indices mod q-1; results live at conductor p(q-1).
///
/// `table` and `f4_grid` are the OpenMP kernels: with parallel = true the
/// work is spread over the current thread team, otherwise it runs inline
/// (callers that already parallelise across work items pass false).
class HgfKernel {
 public:
  explicit HgfKernel(const FiniteField& field, FieldElem shift);
  explicit HgfKernel(const AddChar& psi) : HgfKernel(psi.field(), psi.shift()) {}

  const FiniteField& field() const noexcept { return *field_; }
  const GaussTable& gauss() const noexcept { return *table_; }

  /// c_nu = (A)_nu / (B)°_nu for nu = 0 .. q-2.
  std::vector<CycloNum> coefficients(std::span<const std::uint32_t> num, std::span<const std::uint32_t> den) const;
  /// 1/(1-q) sum_nu c_nu nu(lambda).
  CycloNum value(std::span<const CycloNum> coeffs, FieldElem lambda) const;
  CycloNum eval(std::span<const std::uint32_t> num, std::span<const std::uint32_t> den, FieldElem lambda) const;
  /// F at every lambda, indexed by element code.
  std::vector<CycloNum> table(std::span<const std::uint32_t> num, std::span<const std::uint32_t> den,
                              bool parallel = true) const;

  /// Appell F4(a, b; c, c2; lambda, lambda2) as the defining double sum.
  CycloNum f4(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2, FieldElem lambda,
              FieldElem lambda2) const;
  /// F4 at every (lambda, lambda2), indexed lambda.code * q + lambda2.code.
  std::vector<CycloNum> f4_grid(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2,
                                bool parallel = true) const;
  /// F4 on the diagonal lambda = lambda2, indexed by element code. The double
  /// sum collapses along nu nu' = const, so this costs one table, not a grid.
  std::vector<CycloNum> f4_diagonal(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2) const;

  /// Closed forms by index; see the MultChar overloads below.
  CycloNum euler_gauss(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
  CycloNum kummer(std::uint32_t a, std::uint32_t b) const;
  CycloNum dixon(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;

 private:
  std::vector<CycloNum> f4_coefficients(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t c2) const;

  const FiniteField* field_;
  std::shared_ptr<const GaussTable> table_;
  Rational scale_;  // 1/(1-q)
};

CycloNum hgf_eval(const HgfSpec& spec, FieldElem lambda);
/// hgf_eval at every lambda, indexed by element code (parallel kernel).
std::vector<CycloNum> hgf_table(const HgfSpec& spec);
/// rFs with eps adjoined to the denominator list.
CycloNum rfs_eval(const std::vector<MultChar>& num, const std::vector<MultChar>& den, const AddChar& psi,
                  FieldElem lambda);

CycloNum appell_f4(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const MultChar& gamma2,
                   const AddChar& psi, FieldElem lambda, FieldElem lambda2);

/// 2F1(alpha, beta; gamma; 1) in closed form.
CycloNum euler_gauss_2f1_at_1(const MultChar& alpha, const MultChar& beta, const MultChar& gamma,
                              const AddChar& psi);
/// 2F1(alpha^2, beta; alpha^2 conj(beta); -1); throws EvenCharacteristic when p = 2.
CycloNum kummer_2f1_at_minus1(const MultChar& alpha, const MultChar& beta, const AddChar& psi);
/// 3F2(alpha^2, beta, gamma; alpha^2 conj(beta), alpha^2 conj(gamma); 1); throws
/// EvenCharacteristic or HypothesisViolated naming the failed clause.
CycloNum dixon_3f2_at_1(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const AddChar& psi);
/// Pfaff transformation: 2F1(alpha, conj(beta) gamma; gamma; x) equals
/// conj(alpha)(1-x) 2F1(alpha, beta; gamma; x/(x-1)). Holds when
/// (alpha + beta, eps + gamma) = 0; otherwise correction terms appear.
/// Throws XEqualsOne.
bool pfaff_transform_check(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, FieldElem x,
                           const AddChar& psi);

/// Fourier transform on k* (q-1 values indexed by discrete log) or on
/// (k*)^2 ((q-1)^2 values indexed log(x) * (q-1) + log(y)):
/// fhat(nu) = sum_x f(x) conj(nu)(x), with characters indexed the same way.
std::vector<CycloNum> fourier(const FiniteField& field, std::span<const CycloNum> f);
std::vector<CycloNum> fourier_inverse(const FiniteField& field, std::span<const CycloNum> fhat);

/// Definitional evaluation: Gauss sums by direct summation and plain field
/// division, one term at a time, serially. Slow; kept as the test oracle
/// and benchmark baseline for the kernels above.
namespace reference {

CycloNum hgf_eval(const HgfSpec& spec, FieldElem lambda);
std::vector<CycloNum> hgf_table(const HgfSpec& spec);
CycloNum appell_f4(const MultChar& alpha, const MultChar& beta, const MultChar& gamma, const MultChar& gamma2,
                   const AddChar& psi, FieldElem lambda, FieldElem lambda2);

}  // namespace reference

}  // namespace finite_hgf
