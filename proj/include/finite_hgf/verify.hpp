#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "finite_hgf/cyclo.hpp"
#include "finite_hgf/gf.hpp"

namespace finite_hgf {

enum class IdentityId {
  StructG1,
  StructG2,
  StructG3,
  StructG5,
  StructJ1,
  StructJ2,
  StructG8,
  StructG9,
  StructG10,
  ClosedG11,
  ClosedG12,
  ClosedG13,
  P1KummerExp,
  P2Square,
  P6Euler,
  P9Ramanujan,
  ThmB3a,
  ThmB3b,
  ThmB4,
  CorB5,
  CorB7,
  CorB8,
  CorB10,
  CorB11a,
  CorB11b,
  ThmB12,
  ThmF4Product,
  CorB14,
  LemF4Diag,
  Pfaff,
};

/// Where an identity is asserted for each parameter tuple.
enum class Quantifier {
  Lambda,        // every lambda in k
  LambdaUnits,   // lambda in k*
  LambdaNotOne,  // lambda != 1
  XYNotOne,      // (x, y) in k^2 with x != 1 and y != 1
  Named,         // a fixed list of named sub-identities, no field variable
};

struct IdentityInfo {
  IdentityId id;
  std::string_view name;
  /// Tuple coordinates, e.g. {"alpha", "beta"}; all are character indices
  /// except the divisor d of STRUCT-G5.
  std::vector<std::string_view> params;
  Quantifier quantifier;
  std::string_view hypothesis;
  std::string_view statement;
};

const std::vector<IdentityInfo>& catalog();
const IdentityInfo& info(IdentityId id);
std::string_view name(IdentityId id);
/// Looks up a catalog name; throws ParseError for unknown names.
IdentityId parse_identity(std::string_view name);
/// Comma list of names, or "all" for the whole catalog.
std::vector<IdentityId> parse_identities(std::string_view list);

using Tuple = std::vector<std::uint32_t>;

struct Enumeration {
  std::vector<Tuple> tuples;
  /// Set when a field-level precondition rules the identity out ("p=2").
  std::optional<std::string> reason;
};

/// The hypothesis predicate. False when the field fails the identity's
/// characteristic or divisibility preconditions.
bool admissible(IdentityId id, const FiniteField& field, const Tuple& tuple);
/// Every admissible tuple in lexicographic order.
Enumeration enumerate_admissible(IdentityId id, const FiniteField& field);
/// Number of quantifier points evaluated per tuple.
std::uint64_t points_per_tuple(IdentityId id, const FiniteField& field);

struct Mode {
  enum class Kind { Exhaustive, Sample, Auto };
  Kind kind = Kind::Auto;
  std::uint64_t n = 2000;
  std::uint64_t seed = 42;
};

/// Tuples x points above which Auto switches to sampling.
inline constexpr std::uint64_t kExhaustiveBudget = 10'000'000;

struct VerifyOptions {
  Mode mode;
  /// Adds one to a character index read by the right-hand side (the first
  /// coordinate, or nu for STRUCT-G3), leaving the left-hand side intact.
  bool mutate = false;
  /// Record elapsed_ms; off by default so reports are byte-reproducible.
  bool timings = false;
};

struct Failure {
  Tuple tuple;
  nlohmann::json point;
  CycloNum lhs;
  CycloNum rhs;
};

struct VerificationReport {
  IdentityId identity;
  std::uint32_t p = 0, f = 0, q = 0;
  std::uint64_t tuples_enumerated = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t lambdas_per_tuple = 0;
  std::vector<Failure> failures;
  std::optional<double> elapsed_ms;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> reason;

  bool passed() const noexcept { return failures.empty(); }
  /// Keys in schema order: identity, field, tuples_enumerated, tuples_checked,
  /// lambdas_per_tuple, failures, elapsed_ms, seed.
  nlohmann::ordered_json to_json() const;
};

/// Both sides at every quantifier point for one tuple; `rhs_tuple` lets the
/// caller perturb the right-hand side independently.
struct Sides {
  nlohmann::json point;
  CycloNum lhs;
  CycloNum rhs;
};
std::vector<Sides> evaluate(IdentityId id, const FiniteField& field, const Tuple& tuple, const Tuple& rhs_tuple);

VerificationReport verify(IdentityId id, const FiniteField& field, const VerifyOptions& options = {});

/// Cross product of fields and ids. Tuples from every report are spread over
/// the OpenMP thread team; reports come back in (field, id) order.
std::vector<VerificationReport> verify_suite(std::span<const FieldHandle> fields, std::span<const IdentityId> ids,
                                             const VerifyOptions& options = {});

namespace reference {

/// Same work as finite_hgf::verify_suite on one thread; reports must match.
std::vector<VerificationReport> verify_suite(std::span<const FieldHandle> fields, std::span<const IdentityId> ids,
                                             const VerifyOptions& options = {});

}  // namespace reference

}  // namespace finite_hgf
